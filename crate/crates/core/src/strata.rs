//! Sign-vector strata over a reduced word: the vertices lifting to each
//! group element, click moves between them, the resulting 1-skeleton with
//! its labelled edges, connected components, and the two-parameter
//! quadruple patterns that seed dimension-2 strata.
//!
//! A sign vector in `{+1,-1}^l` is a dimension-0 stratum; it lifts through
//! [`lift_word`] to a group element `z`, and the `2^l` vectors partition
//! into buckets by lift value.  Clicking a face whose endpoints carry
//! opposite signs toggles every boundary position and preserves the lift,
//! so each bucket carries a graph; its edges are the dimension-1 strata and
//! its connected components are the components of the associated cell.

use std::collections::BTreeMap;
use std::fmt;

use crate::clifford::CliffordElement;
use crate::error::{Error, Result};
use crate::spin::{coset, SpinWeylElement};
use crate::words::{Face, ReducedWord};

/// A stratum label: entries over `{-2,-1,+1,+2}` with equally many `-2`s
/// and `+2`s; that common count is the dimension.  All-`±1` vectors are
/// vertices (dimension 0); one `-2`/`+2` pair labels an edge.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AncestryVector {
    entries: Vec<i8>,
}

impl AncestryVector {
    pub fn new(entries: Vec<i8>) -> Result<Self> {
        let mut minus = 0usize;
        let mut plus = 0usize;
        for (k, &e) in entries.iter().enumerate() {
            match e {
                -2 => minus += 1,
                2 => plus += 1,
                -1 | 1 => {}
                value => return Err(Error::BadAncestryEntry { value, position: k + 1 }),
            }
        }
        if minus != plus {
            return Err(Error::UnbalancedAncestry);
        }
        Ok(AncestryVector { entries })
    }

    /// Parses a vertex: either a compact sign string like `+-+` or a
    /// comma-separated list like `+1,-1,+1`.
    pub fn parse_vertex(text: &str) -> Result<Self> {
        let text = text.trim();
        let entries: Vec<i8> = if text.contains(',') {
            text.split(',')
                .map(|tok| match tok.trim() {
                    "+1" | "1" | "+" => Ok(1),
                    "-1" | "-" => Ok(-1),
                    other => Err(Error::Parse(format!("bad sign entry {other:?}"))),
                })
                .collect::<Result<_>>()?
        } else {
            text.chars()
                .map(|c| match c {
                    '+' => Ok(1),
                    '-' => Ok(-1),
                    other => Err(Error::Parse(format!("bad sign character {other:?}"))),
                })
                .collect::<Result<_>>()?
        };
        if entries.is_empty() {
            return Err(Error::Parse("empty sign vector".into()));
        }
        AncestryVector::new(entries)
    }

    pub fn entries(&self) -> &[i8] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Number of `-2`/`+2` pairs.
    pub fn dim(&self) -> usize {
        self.entries.iter().filter(|&&e| e == -2).count()
    }

    pub fn is_vertex(&self) -> bool {
        self.entries.iter().all(|&e| e == 1 || e == -1)
    }

    /// Signs-only rendering, e.g. `+--+-`.
    pub fn compact(&self) -> String {
        self.entries
            .iter()
            .map(|&e| if e > 0 { '+' } else { '-' })
            .collect()
    }
}

impl fmt::Display for AncestryVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, e) in self.entries.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e:+}")?;
        }
        write!(f, ")")
    }
}

/// Packs a vertex into a bitmask: bit `l-k` is set when entry `k` is `+1`,
/// so ascending masks agree with lexicographic order (`-1` before `+1`).
fn mask_to_vector(mask: u32, l: usize) -> AncestryVector {
    let entries = (1..=l)
        .map(|k| if mask >> (l - k) & 1 == 1 { 1 } else { -1 })
        .collect();
    AncestryVector { entries }
}

fn boundary_mask(face: &Face, l: usize) -> u32 {
    face.boundary.iter().map(|&k| 1u32 << (l - k)).sum()
}

/// Toggles every boundary position of the face.  Requires an all-`±1`
/// vector with opposite signs at the face endpoints.
pub fn click(epsilon: &AncestryVector, face: &Face) -> Result<AncestryVector> {
    if !epsilon.is_vertex()
        || face.k2 > epsilon.len()
        || epsilon.entries[face.k1 - 1] == epsilon.entries[face.k2 - 1]
    {
        return Err(Error::NotClickable);
    }
    let mut entries = epsilon.entries.clone();
    for &k in &face.boundary {
        entries[k - 1] = -entries[k - 1];
    }
    Ok(AncestryVector { entries })
}

/// The dimension-1 label of the edge clicked at `face`, read off the
/// endpoint carrying `-1` at the left end of the face: that position
/// becomes `-2`, the right end becomes `+2`, everything else is copied.
pub fn edge_label(epsilon: &AncestryVector, face: &Face) -> Result<AncestryVector> {
    if !epsilon.is_vertex() || face.k2 > epsilon.len() {
        return Err(Error::NotLabelable);
    }
    if epsilon.entries[face.k1 - 1] != -1 || epsilon.entries[face.k2 - 1] != 1 {
        return Err(Error::NotLabelable);
    }
    let mut entries = epsilon.entries.clone();
    entries[face.k1 - 1] = -2;
    entries[face.k2 - 1] = 2;
    Ok(AncestryVector { entries })
}

/// Buckets all `2^l` sign vectors by their exact lift value; each bucket
/// is ascending (lexicographic, `-1` first).
pub fn enumerate_dim0(word: &ReducedWord) -> BTreeMap<SpinWeylElement, Vec<AncestryVector>> {
    enumerate_dim0_threaded(word, 1)
}

/// Same as [`enumerate_dim0`], sharded over worker threads by sign-vector
/// prefix; the merged result is identical for every thread count.
pub fn enumerate_dim0_threaded(
    word: &ReducedWord,
    threads: usize,
) -> BTreeMap<SpinWeylElement, Vec<AncestryVector>> {
    let l = word.len();
    enumerate_masks(word, threads)
        .into_iter()
        .map(|(z, masks)| (z, masks.into_iter().map(|m| mask_to_vector(m, l)).collect()))
        .collect()
}

/// Mask-level bucketing; depth-first over prefixes so every lift costs a
/// single group multiplication.
fn enumerate_masks(word: &ReducedWord, threads: usize) -> BTreeMap<SpinWeylElement, Vec<u32>> {
    let l = word.len();
    assert!(l < 32, "word length {l} exceeds the 31-letter enumeration limit");
    let n = word.rank();
    let factors: Vec<[CliffordElement; 2]> = word
        .letters()
        .iter()
        .map(|&i| {
            [
                CliffordElement::acute(n, i, -1).expect("letter in range"),
                CliffordElement::acute(n, i, 1).expect("letter in range"),
            ]
        })
        .collect();
    let shard_bits = if threads <= 1 || l < 12 {
        0
    } else {
        (threads.next_power_of_two().trailing_zeros() as usize).min(6).min(l)
    };
    if shard_bits == 0 {
        let mut buckets = BTreeMap::new();
        dfs_lifts(&factors, 0, &CliffordElement::one(n), 0, &mut buckets);
        return buckets;
    }
    let shards = 1usize << shard_bits;
    let shard_maps: Vec<BTreeMap<SpinWeylElement, Vec<u32>>> = std::thread::scope(|scope| {
        let handles: Vec<_> = (0..shards)
            .map(|shard| {
                let factors = &factors;
                scope.spawn(move || {
                    let mut acc = CliffordElement::one(n);
                    for depth in 0..shard_bits {
                        let bit = shard >> (shard_bits - 1 - depth) & 1;
                        acc = acc.try_mul(&factors[depth][bit]).expect("equal ranks");
                    }
                    let mut buckets = BTreeMap::new();
                    dfs_lifts(factors, shard_bits, &acc, shard as u32, &mut buckets);
                    buckets
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("enumeration worker"))
            .collect()
    });
    // Shards arrive in ascending prefix order, so appending keeps every
    // bucket sorted.
    let mut merged: BTreeMap<SpinWeylElement, Vec<u32>> = BTreeMap::new();
    for map in shard_maps {
        for (z, mut masks) in map {
            merged.entry(z).or_default().append(&mut masks);
        }
    }
    merged
}

fn dfs_lifts(
    factors: &[[CliffordElement; 2]],
    depth: usize,
    acc: &CliffordElement,
    mask: u32,
    buckets: &mut BTreeMap<SpinWeylElement, Vec<u32>>,
) {
    if depth == factors.len() {
        buckets
            .entry(SpinWeylElement::from_element_unchecked(acc.clone()))
            .or_default()
            .push(mask);
        return;
    }
    for bit in 0..2usize {
        let next = acc.try_mul(&factors[depth][bit]).expect("equal ranks");
        dfs_lifts(factors, depth + 1, &next, mask << 1 | bit as u32, buckets);
    }
}

/// An edge of the 1-skeleton: the face it clicks, the two vertex indices
/// (smaller first), and its dimension-1 label.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StrataEdge {
    pub face: Face,
    pub endpoints: (usize, usize),
    pub label: AncestryVector,
}

/// The 1-skeleton over one group element: every vertex lifts to `z`, and
/// edges join click partners.  Vertices are sorted; edges are listed
/// face-by-face with the smaller endpoint first.
#[derive(Debug, Clone)]
pub struct StrataGraph {
    pub word: ReducedWord,
    pub z: SpinWeylElement,
    pub vertices: Vec<AncestryVector>,
    pub edges: Vec<StrataEdge>,
}

impl StrataGraph {
    /// Builds the skeleton of `z`; errors when `z` is not a lift of the
    /// word's permutation.  An in-coset `z` reached by no sign vector
    /// yields the empty graph.
    pub fn build(word: &ReducedWord, z: &SpinWeylElement) -> Result<StrataGraph> {
        if !coset(word).contains(z) {
            return Err(Error::OutsideCoset);
        }
        let buckets = enumerate_masks(word, 1);
        let bucket = buckets.get(z).cloned().unwrap_or_default();
        let l = word.len();
        let faces = word.faces();
        let mut edges = Vec::new();
        for face in &faces {
            let fmask = boundary_mask(face, l);
            for (a, &v) in bucket.iter().enumerate() {
                if v >> (l - face.k1) & 1 == v >> (l - face.k2) & 1 {
                    continue;
                }
                let partner = v ^ fmask;
                if partner < v {
                    continue;
                }
                let b = bucket
                    .binary_search(&partner)
                    .expect("click partner lifts to the same element");
                let low = mask_to_vector(v.min(partner), l);
                let high = mask_to_vector(v.max(partner), l);
                let label = edge_label(&low, face)
                    .or_else(|_| edge_label(&high, face))
                    .expect("one endpoint carries -1 at the left face end");
                edges.push(StrataEdge { face: face.clone(), endpoints: (a, b), label });
            }
        }
        Ok(StrataGraph {
            word: word.clone(),
            z: z.clone(),
            vertices: bucket.into_iter().map(|m| mask_to_vector(m, l)).collect(),
            edges,
        })
    }

    pub fn components(&self) -> usize {
        let mut uf = UnionFind::new(self.vertices.len());
        for e in &self.edges {
            uf.union(e.endpoints.0, e.endpoints.1);
        }
        uf.component_count()
    }

    /// Vertices incident to no edge.
    pub fn isolated_count(&self) -> usize {
        let mut degree = vec![0usize; self.vertices.len()];
        for e in &self.edges {
            degree[e.endpoints.0] += 1;
            degree[e.endpoints.1] += 1;
        }
        degree.iter().filter(|&&d| d == 0).count()
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(size: usize) -> Self {
        UnionFind { parent: (0..size).collect() }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let ra = self.find(a);
        let rb = self.find(b);
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }

    fn component_count(&mut self) -> usize {
        (0..self.parent.len()).filter(|&x| self.find(x) == x).count()
    }
}

/// Vertex/edge/component/isolated counts of one skeleton.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct SkeletonStats {
    pub vertices: usize,
    pub edges: usize,
    pub components: usize,
    pub isolated: usize,
}

/// Counts for every reached lift value, without materialising the graphs.
pub fn skeleton_stats(
    word: &ReducedWord,
    threads: usize,
) -> BTreeMap<SpinWeylElement, SkeletonStats> {
    let l = word.len();
    let faces = word.faces();
    let fmasks: Vec<u32> = faces.iter().map(|f| boundary_mask(f, l)).collect();
    enumerate_masks(word, threads)
        .into_iter()
        .map(|(z, bucket)| {
            let mut uf = UnionFind::new(bucket.len());
            let mut degree = vec![0usize; bucket.len()];
            let mut edges = 0usize;
            for (face, &fmask) in faces.iter().zip(&fmasks) {
                for (a, &v) in bucket.iter().enumerate() {
                    if v >> (l - face.k1) & 1 == v >> (l - face.k2) & 1 {
                        continue;
                    }
                    let partner = v ^ fmask;
                    if partner < v {
                        continue;
                    }
                    let b = bucket
                        .binary_search(&partner)
                        .expect("click partner lifts to the same element");
                    edges += 1;
                    degree[a] += 1;
                    degree[b] += 1;
                    uf.union(a, b);
                }
            }
            let stats = SkeletonStats {
                vertices: bucket.len(),
                edges,
                components: uf.component_count(),
                isolated: degree.iter().filter(|&&d| d == 0).count(),
            };
            (z, stats)
        })
        .collect()
}

/// Component count of the skeleton over `z`.
pub fn components(word: &ReducedWord, z: &SpinWeylElement) -> Result<usize> {
    Ok(StrataGraph::build(word, z)?.components())
}

/// Isolated-vertex count of the skeleton over `z`.
pub fn isolated_count(word: &ReducedWord, z: &SpinWeylElement) -> Result<usize> {
    Ok(StrataGraph::build(word, z)?.isolated_count())
}

/// Total component count over all lifts of the word's permutation.
pub fn components_total(word: &ReducedWord) -> usize {
    components_total_threaded(word, 1)
}

pub fn components_total_threaded(word: &ReducedWord, threads: usize) -> usize {
    skeleton_stats(word, threads).values().map(|s| s.components).sum()
}

/// Classification of the quadruple patterns seeding dimension-2 strata.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum D2Type {
    I,
    II,
}

impl fmt::Display for D2Type {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            D2Type::I => write!(f, "I"),
            D2Type::II => write!(f, "II"),
        }
    }
}

/// A quadruple pattern: four positions carrying two `-2`s and two `+2`s,
/// starting with `-2` and ending with `+2`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Preancestry2 {
    pub positions: [usize; 4],
    pub signs: [i8; 4],
    pub d2_type: D2Type,
}

/// True when `a < b` are consecutive occurrences of the same letter.
fn consecutive_occurrences(word: &ReducedWord, a: usize, b: usize) -> bool {
    let letters = word.letters();
    letters[a - 1] == letters[b - 1]
        && (a + 1..b).all(|k| letters[k - 1] != letters[a - 1])
}

/// Classifies a quadruple pattern: `Some(I)`, `Some(II)`, or `None` when
/// the pattern seeds no stratum.  Structural problems (bad lengths,
/// non-increasing or out-of-range positions, entries other than `±2`)
/// error out.
pub fn classify_d2(
    positions: &[usize],
    signs: &[i8],
    word: &ReducedWord,
) -> Result<Option<D2Type>> {
    if positions.len() != 4 || signs.len() != 4 {
        return Err(Error::MalformedQuadruple);
    }
    if positions.windows(2).any(|w| w[0] >= w[1])
        || positions[0] < 1
        || positions[3] > word.len()
    {
        return Err(Error::MalformedQuadruple);
    }
    if signs.iter().any(|&s| s != 2 && s != -2) {
        return Err(Error::MalformedQuadruple);
    }
    if signs[0] != -2 || signs[3] != 2 || signs.iter().filter(|&&s| s == -2).count() != 2 {
        return Ok(None);
    }
    let letters = word.letters();
    let row = |k: usize| letters[k - 1];
    let (k1, k2, k3, k4) = (positions[0], positions[1], positions[2], positions[3]);
    if signs[1] == 2 {
        // Pattern (-2,+2,-2,+2): two faces in sequence.
        let ok = row(k1) == row(k2)
            && row(k3) == row(k4)
            && consecutive_occurrences(word, k1, k2)
            && consecutive_occurrences(word, k3, k4);
        return Ok(ok.then_some(D2Type::I));
    }
    // Pattern (-2,-2,+2,+2): either interleaved faces on distant rows,
    // paired (k1,k3)/(k2,k4), or a face flanked by its neighbouring row.
    if row(k1) == row(k3)
        && row(k2) == row(k4)
        && row(k1).abs_diff(row(k2)) > 1
        && consecutive_occurrences(word, k1, k3)
        && consecutive_occurrences(word, k2, k4)
    {
        return Ok(Some(D2Type::I));
    }
    if row(k1) == row(k4)
        && row(k2) == row(k3)
        && row(k1).abs_diff(row(k2)) == 1
        && consecutive_occurrences(word, k2, k3)
        && (k1 + 1..k2).all(|k| row(k) != row(k1))
        && (k3 + 1..k4).all(|k| row(k) != row(k1))
    {
        return Ok(Some(D2Type::II));
    }
    Ok(None)
}

/// All quadruple patterns of the word, sorted by position.
///
/// Type I comes in two shapes: two faces in sequence (signs
/// `-2,+2,-2,+2`), and two interleaved faces whose rows differ by more
/// than one (signs `-2,-2,+2,+2`, paired first-with-third).  Type II
/// flanks a face by the nearest occurrences of an adjacent row on either
/// side (signs `-2,-2,+2,+2`).
pub fn enumerate_d2_preancestries(word: &ReducedWord) -> Vec<Preancestry2> {
    let faces = word.faces();
    let letters = word.letters();
    let mut out = Vec::new();
    for f in &faces {
        for g in &faces {
            if f.k2 < g.k1 {
                out.push(Preancestry2 {
                    positions: [f.k1, f.k2, g.k1, g.k2],
                    signs: [-2, 2, -2, 2],
                    d2_type: D2Type::I,
                });
            }
            if f.k1 < g.k1 && g.k1 < f.k2 && f.k2 < g.k2 && f.row.abs_diff(g.row) > 1 {
                out.push(Preancestry2 {
                    positions: [f.k1, g.k1, f.k2, g.k2],
                    signs: [-2, -2, 2, 2],
                    d2_type: D2Type::I,
                });
            }
        }
    }
    for inner in &faces {
        let mut adjacent = vec![inner.row + 1];
        if inner.row > 1 {
            adjacent.push(inner.row - 1);
        }
        for row in adjacent {
            let k1 = (1..inner.k1).rev().find(|&k| letters[k - 1] == row);
            let k4 = (inner.k2 + 1..=word.len()).find(|&k| letters[k - 1] == row);
            if let (Some(k1), Some(k4)) = (k1, k4) {
                out.push(Preancestry2 {
                    positions: [k1, inner.k1, inner.k2, k4],
                    signs: [-2, -2, 2, 2],
                    d2_type: D2Type::II,
                });
            }
        }
    }
    out.sort();
    out
}

/// Alternating sum over externally supplied per-dimension stratum counts,
/// after checking dimensions 0 and 1 against the computed skeleton.
pub fn euler_summary(word: &ReducedWord, z: &SpinWeylElement, counts: &[u64]) -> Result<i64> {
    let graph = StrataGraph::build(word, z)?;
    let stated_v = counts.first().copied().unwrap_or(0);
    if stated_v != graph.vertices.len() as u64 {
        return Err(Error::CountMismatch(format!(
            "dimension 0: stated {stated_v}, computed {}",
            graph.vertices.len()
        )));
    }
    let stated_e = counts.get(1).copied().unwrap_or(0);
    if stated_e != graph.edges.len() as u64 {
        return Err(Error::CountMismatch(format!(
            "dimension 1: stated {stated_e}, computed {}",
            graph.edges.len()
        )));
    }
    Ok(counts
        .iter()
        .enumerate()
        .map(|(d, &c)| if d % 2 == 0 { c as i64 } else { -(c as i64) })
        .sum())
}
