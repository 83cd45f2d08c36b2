//! Acceptance gate for the library: eleven end-to-end criteria, each pinned
//! to frozen golden values or to structural laws checked exhaustively on
//! small ranks and by seeded sampling on larger ones.  Every test prints a
//! single `[acceptance] criterion N (...): PASS`/`FAIL` line.

use std::collections::{BTreeSet, HashMap};
use std::thread;

use bruhat_strata::clifford::{ahat_monomial, AhatNotation, CliffordElement};
use bruhat_strata::matrix::{
    bruhat_perm, factor, p_values, parse_rational, product_from, signs_of, transversal_z7,
    RationalMatrix, TransversalPolynomials,
};
use bruhat_strata::scalar::ScaledDyadic;
use bruhat_strata::spin::{
    coset, lift_all_plus, lift_word, n_of_z, n_of_z_in_coset, orbit_decomposition,
    SpinWeylElement,
};
use bruhat_strata::strata::{
    click, components_total, components_total_threaded, enumerate_d2_preancestries,
    enumerate_dim0, euler_summary, AncestryVector, D2Type, StrataGraph,
};
use bruhat_strata::words::{all_permutations, Permutation, ReducedWord};
use bruhat_strata::Error;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn report(number: u8, name: &str, outcome: Result<String, String>) {
    match outcome {
        Ok(detail) => println!("[acceptance] criterion {number} ({name}): PASS — {detail}"),
        Err(message) => {
            println!("[acceptance] criterion {number} ({name}): FAIL — {message}");
            panic!("acceptance criterion {number} ({name}) failed: {message}");
        }
    }
}

// ---------------------------------------------------------------- helpers --

fn word_45132() -> ReducedWord {
    ReducedWord::new(vec![2, 3, 1, 2, 4, 3, 2], 4).expect("reduced")
}

fn word_4312() -> ReducedWord {
    ReducedWord::new(vec![1, 2, 3, 1, 2], 3).expect("reduced")
}

/// Linear combination of products of adjacent-transposition rotations: each
/// entry is a subset mask over the generators and the sign of its
/// coefficient, all scaled by `2^(-halfexp/2)`.
fn ahat_sum(n: usize, halfexp: u32, terms: &[(u32, i64)]) -> CliffordElement {
    let mut acc = CliffordElement::zero(n);
    for &(subset, sign) in terms {
        let (blade, blade_sign) = ahat_monomial(n, subset);
        let coeff = ScaledDyadic::new(sign * i64::from(blade_sign), halfexp);
        acc = &acc + &CliffordElement::blade(n, blade, coeff).expect("blade in range");
    }
    acc
}

fn dyadic_identity(size: usize) -> Vec<Vec<ScaledDyadic>> {
    (0..size)
        .map(|i| {
            (0..size)
                .map(|j| if i == j { ScaledDyadic::one() } else { ScaledDyadic::zero() })
                .collect()
        })
        .collect()
}

fn dyadic_matrix_mul(a: &[Vec<ScaledDyadic>], b: &[Vec<ScaledDyadic>]) -> Vec<Vec<ScaledDyadic>> {
    let rows = a.len();
    let cols = b[0].len();
    let inner = b.len();
    let mut out = vec![vec![ScaledDyadic::zero(); cols]; rows];
    for i in 0..rows {
        for j in 0..cols {
            let mut acc = ScaledDyadic::zero();
            for k in 0..inner {
                acc = acc + a[i][k] * b[k][j];
            }
            out[i][j] = acc;
        }
    }
    out
}

/// One-line image of the signed permutation pattern of an orthogonal matrix:
/// row `i` must hold exactly one nonzero entry, in column `image(i)`.
fn signed_pattern(matrix: &[Vec<ScaledDyadic>]) -> Option<Vec<usize>> {
    let size = matrix.len();
    let mut image = vec![0usize; size];
    for (i, row) in matrix.iter().enumerate() {
        let mut hit = None;
        for (j, value) in row.iter().enumerate() {
            if !value.is_zero() {
                if hit.is_some() {
                    return None;
                }
                hit = Some(j + 1);
            }
        }
        image[i] = hit?;
    }
    let mut seen = vec![false; size];
    for &v in &image {
        if seen[v - 1] {
            return None;
        }
        seen[v - 1] = true;
    }
    Some(image)
}

fn rat(value: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(value))
}

fn ratio(numer: i64, denom: i64) -> BigRational {
    BigRational::new(BigInt::from(numer), BigInt::from(denom))
}

// ---------------------------------------------------- criterion 1: algebra --

fn algebra_products() -> Result<String, String> {
    let mut products = 0usize;
    for n in 1..=4usize {
        let minus_one = CliffordElement::scalar(n, -ScaledDyadic::one());
        for i in 1..=n {
            let ai = CliffordElement::ahat(n, i).expect("in range");
            ensure!(&ai * &ai == minus_one, "square of generator {i} at rank {n} is not -1");
            for j in i + 1..=n {
                let aj = CliffordElement::ahat(n, j).expect("in range");
                let left = &ai * &aj;
                let right = &aj * &ai;
                if j == i + 1 {
                    ensure!(
                        left == -&right,
                        "adjacent generators {i},{j} fail to anticommute at rank {n}"
                    );
                } else {
                    ensure!(
                        left == right,
                        "distant generators {i},{j} fail to commute at rank {n}"
                    );
                }
            }
        }

        let mut generators = Vec::new();
        for i in 1..=n {
            for sign in [1i8, -1] {
                let g = CliffordElement::acute(n, i, sign).expect("in range");
                let pi = g.pi_matrix().expect("even unit");
                generators.push((g, pi));
            }
        }
        let one = CliffordElement::one(n);
        let mut stack = vec![(one.clone(), dyadic_identity(n + 1), 0usize)];
        while let Some((z, pi_z, depth)) = stack.pop() {
            if depth == 4 {
                continue;
            }
            for (g, pi_g) in &generators {
                let zg = &z * g;
                ensure!(
                    &zg * &zg.reversal() == one,
                    "product of length {} at rank {n} times its reversal is not 1",
                    depth + 1
                );
                ensure!(
                    zg.norm_sq() == ScaledDyadic::one(),
                    "product of length {} at rank {n} is not a unit",
                    depth + 1
                );
                let pi_zg = zg.pi_matrix().expect("even unit");
                ensure!(
                    pi_zg == dyadic_matrix_mul(&pi_z, pi_g),
                    "orthogonal image is not multiplicative at rank {n}, length {}",
                    depth + 1
                );
                products += 1;
                stack.push((zg, pi_zg, depth + 1));
            }
        }
    }
    Ok(format!(
        "{products} signed rotation products across ranks 1..=4, all unit with multiplicative image"
    ))
}

#[test]
fn c01_algebra_products() {
    report(1, "rotation algebra", algebra_products());
}

// --------------------------------------- criterion 2: word independence --

fn lift_word_independence() -> Result<String, String> {
    let mut words_checked = 0usize;
    let mut perms_checked = 0usize;
    for size in 2..=4usize {
        let n = size - 1;
        for sigma in all_permutations(size) {
            let reference = lift_all_plus(&sigma.canonical_word());
            for letters in sigma.all_reduced_words() {
                let word = ReducedWord::new(letters.clone(), n)
                    .map_err(|e| format!("enumerated word {letters:?} rejected: {e}"))?;
                ensure!(
                    lift_all_plus(&word) == reference,
                    "all-plus lift differs between reduced words of {sigma}: {letters:?}"
                );
                words_checked += 1;
            }
            perms_checked += 1;
        }
    }
    Ok(format!(
        "{words_checked} reduced words across {perms_checked} permutations lift identically"
    ))
}

#[test]
fn c02_lift_word_independence() {
    report(2, "lift word-independence", lift_word_independence());
}

// ------------------------------------------ criterion 3: frozen expansions --

fn frozen_expansions() -> Result<String, String> {
    // Five-letter rank-3 word for [4312].
    let w = word_4312();
    ensure!(
        format!("{}", w.perm()) == "[4312]",
        "five-letter word has permutation {}",
        w.perm()
    );
    let acute_all = lift_all_plus(&w);
    let expected = ahat_sum(
        3,
        3,
        &[(0, -1), (1, 1), (2, 1), (3, 1), (4, 1), (5, 1), (6, 1), (7, -1)],
    );
    ensure!(
        acute_all.element() == &expected,
        "all-plus lift of the five-letter word has the wrong expansion"
    );
    ensure!(
        acute_all.to_ahat_string(AhatNotation::Unicode)
            == "(-1+â₁+â₂+â₁â₂+â₃+â₁â₃+â₂â₃-â₁â₂â₃)/(2√2)",
        "unicode rendering of the five-letter all-plus lift changed: {}",
        acute_all.to_ahat_string(AhatNotation::Unicode)
    );
    ensure!(
        acute_all.to_ahat_string(AhatNotation::Ascii)
            == "(-1+a^1+a^2+a^1 a^2+a^3+a^1 a^3+a^2 a^3-a^1 a^2 a^3)/(2*sqrt(2))",
        "ascii rendering of the five-letter all-plus lift changed: {}",
        acute_all.to_ahat_string(AhatNotation::Ascii)
    );

    let z1 = lift_word(&w, &[1, 1, -1, 1, -1]).map_err(|e| format!("lift failed: {e}"))?;
    let expected_z1 = ahat_sum(
        3,
        3,
        &[(0, 1), (1, 1), (2, 1), (3, -1), (4, 1), (5, -1), (6, -1), (7, -1)],
    );
    ensure!(
        z1.element() == &expected_z1,
        "mixed-sign lift of the five-letter word has the wrong expansion"
    );
    ensure!(
        z1.to_ahat_string(AhatNotation::Unicode) == "(1+â₁+â₂-â₁â₂+â₃-â₁â₃-â₂â₃-â₁â₂â₃)/(2√2)",
        "unicode rendering of the mixed-sign lift changed: {}",
        z1.to_ahat_string(AhatNotation::Unicode)
    );

    // Seven-letter rank-4 word for [45132].
    let w7 = word_45132();
    ensure!(
        w7.perm().oneline() == vec![4, 5, 1, 3, 2],
        "seven-letter word has permutation {}",
        w7.perm()
    );
    let acute7 = lift_all_plus(&w7);
    let expected7 = ahat_sum(
        4,
        3,
        &[(0, -1), (3, 1), (4, 1), (7, -1), (9, 1), (10, 1), (13, -1), (14, -1)],
    );
    ensure!(
        acute7.element() == &expected7,
        "all-plus lift of the seven-letter word has the wrong expansion"
    );
    ensure!(
        acute7.to_ahat_string(AhatNotation::Unicode)
            == "(-1+â₁â₂+â₃-â₁â₂â₃+â₁â₄+â₂â₄-â₁â₃â₄-â₂â₃â₄)/(2√2)",
        "unicode rendering of the seven-letter all-plus lift changed: {}",
        acute7.to_ahat_string(AhatNotation::Unicode)
    );

    // Eight-letter rank-4 word for [43521].
    let p8 = Permutation::parse("43521").map_err(|e| format!("parse failed: {e}"))?;
    let w8 = p8.canonical_word();
    ensure!(
        w8.letters() == [1, 3, 2, 1, 4, 3, 2, 1],
        "canonical eight-letter word is {:?}",
        w8.letters()
    );
    let acute8 = lift_all_plus(&w8);
    let signs8: [i64; 16] = [-1, -1, 1, -1, -1, 1, -1, -1, -1, 1, 1, 1, -1, -1, -1, 1];
    let terms8: Vec<(u32, i64)> =
        signs8.iter().enumerate().map(|(s, &sign)| (s as u32, sign)).collect();
    let expected8 = ahat_sum(4, 4, &terms8);
    ensure!(
        acute8.element() == &expected8,
        "all-plus lift of the eight-letter word has the wrong expansion"
    );
    ensure!(
        acute8.to_ahat_string(AhatNotation::Unicode)
            == "(-1-â₁+â₂-â₁â₂-â₃+â₁â₃-â₂â₃-â₁â₂â₃-â₄+â₁â₄+â₂â₄+â₁â₂â₄-â₃â₄-â₁â₃â₄-â₂â₃â₄+â₁â₂â₃â₄)/4",
        "unicode rendering of the eight-letter all-plus lift changed: {}",
        acute8.to_ahat_string(AhatNotation::Unicode)
    );

    // Full 32-element coset listing for the order-reversing permutation of S5:
    // four quadruples of monomial masks, each signed with an even number of
    // minus signs, all halved.
    let eta = Permutation::longest(5);
    let weta = eta.canonical_word();
    ensure!(
        weta.letters() == [1, 2, 1, 3, 2, 1, 4, 3, 2, 1],
        "canonical reversing word is {:?}",
        weta.letters()
    );
    let families: [[u32; 4]; 4] = [
        [0b0000, 0b0110, 0b1001, 0b1111],
        [0b0001, 0b0111, 0b1000, 0b1110],
        [0b0011, 0b0101, 0b1010, 0b1100],
        [0b0010, 0b0100, 0b1011, 0b1101],
    ];
    let mut expected_coset: Vec<CliffordElement> = Vec::new();
    for family in &families {
        for bits in 0u32..16 {
            if bits.count_ones() % 2 != 0 {
                continue;
            }
            let terms: Vec<(u32, i64)> = family
                .iter()
                .enumerate()
                .map(|(k, &mask)| (mask, if bits >> k & 1 == 1 { -1 } else { 1 }))
                .collect();
            expected_coset.push(ahat_sum(4, 2, &terms));
        }
    }
    expected_coset.sort();
    let mut actual_coset: Vec<CliffordElement> =
        coset(&weta).iter().map(|z| z.element().clone()).collect();
    actual_coset.sort();
    ensure!(
        actual_coset.len() == 32,
        "reversing coset has {} elements",
        actual_coset.len()
    );
    ensure!(
        actual_coset == expected_coset,
        "reversing coset listing disagrees with the four-family table"
    );

    // Independent reconstruction: close the all-plus rotations under
    // products and keep the elements whose orthogonal image realizes the
    // order-reversing pattern.
    let generators: Vec<CliffordElement> =
        (1..=4).map(|i| CliffordElement::acute(4, i, 1).expect("in range")).collect();
    let mut seen: BTreeSet<CliffordElement> = BTreeSet::new();
    let mut frontier = vec![CliffordElement::one(4)];
    seen.insert(frontier[0].clone());
    while let Some(x) = frontier.pop() {
        for g in &generators {
            let next = &x * g;
            if seen.insert(next.clone()) {
                frontier.push(next);
            }
        }
    }
    ensure!(seen.len() == 3840, "rotation closure has {} elements", seen.len());
    let target = eta.oneline().to_vec();
    let filtered: Vec<CliffordElement> = seen
        .into_iter()
        .filter(|z| signed_pattern(&z.pi_matrix().expect("even unit")) == Some(target.clone()))
        .collect();
    ensure!(
        filtered == expected_coset,
        "group-closure filter finds {} reversing elements, mismatching the table",
        filtered.len()
    );

    Ok("four frozen expansions and the 32-element reversing coset, cross-checked by group closure"
        .to_string())
}

#[test]
fn c03_frozen_expansions() {
    report(3, "frozen expansions", frozen_expansions());
}

// ------------------------------------------- criterion 4: stratum counts --

fn stratum_counts() -> Result<String, String> {
    let mut words_checked = 0usize;
    let mut elements_checked = 0usize;

    let check_word = |word: &ReducedWord| -> Result<(usize, u64), String> {
        let elements = coset(word);
        let buckets = enumerate_dim0(word);
        for key in buckets.keys() {
            ensure!(
                elements.contains(key),
                "bucket key outside the coset for word {:?}",
                word.letters()
            );
        }
        let mut total = 0u64;
        for z in &elements {
            let predicted = n_of_z_in_coset(word, &elements, z)
                .map_err(|e| format!("count formula failed on its own coset: {e}"))?;
            let actual = buckets.get(z).map_or(0, |b| b.len() as u64);
            ensure!(
                predicted == actual,
                "word {:?}: closed form {predicted} vs enumeration {actual}",
                word.letters()
            );
            total += predicted;
        }
        ensure!(
            total == 1u64 << word.len(),
            "word {:?}: counts sum to {total}, expected {}",
            word.letters(),
            1u64 << word.len()
        );
        Ok((elements.len(), total))
    };

    for size in 2..=4usize {
        for sigma in all_permutations(size) {
            let (count, _) = check_word(&sigma.canonical_word())?;
            words_checked += 1;
            elements_checked += count;
        }
    }
    for word in [
        word_45132(),
        Permutation::parse("43521").expect("valid").canonical_word(),
        Permutation::longest(5).canonical_word(),
    ] {
        let (count, _) = check_word(&word)?;
        words_checked += 1;
        elements_checked += count;
    }

    // Membership branch: a coset element outside the blocked subgroup has no
    // sign vectors at all, and an element outside the coset is rejected.
    let w = ReducedWord::new(vec![1], 2).expect("reduced");
    let blocked = SpinWeylElement::ahat(2, 2)
        .expect("in range")
        .mul(&SpinWeylElement::acute(2, 1, 1).expect("in range"))
        .expect("equal ranks");
    ensure!(
        n_of_z(&w, &blocked) == Ok(0),
        "blocked coset element should count zero sign vectors"
    );
    ensure!(
        enumerate_dim0(&w).get(&blocked).is_none(),
        "blocked coset element should own no enumerated vertices"
    );
    ensure!(
        n_of_z(&w, &SpinWeylElement::one(2)) == Err(Error::OutsideCoset),
        "the identity is not a lift of a one-letter word"
    );

    Ok(format!(
        "closed form matches enumeration for {words_checked} words and {elements_checked} coset elements"
    ))
}

#[test]
fn c04_stratum_counts() {
    report(4, "stratum counting", stratum_counts());
}

// --------------------------------------------- criterion 5: orbit tables --

fn orbit_rows(word: &ReducedWord) -> Vec<(u64, usize, u8, ScaledDyadic)> {
    let mut rows: Vec<(u64, usize, u8, ScaledDyadic)> = orbit_decomposition(word)
        .into_iter()
        .map(|o| (o.n_value.expect("filled"), o.members.len(), o.c_anti, o.re_value))
        .collect();
    rows.sort_by_key(|r| (r.0, r.1, r.2));
    rows
}

fn orbit_tables() -> Result<String, String> {
    let zero = ScaledDyadic::zero();
    let sqrt2_over_4 = ScaledDyadic::new(1, 3);
    let quarter = ScaledDyadic::new(1, 4);
    let half = ScaledDyadic::new(1, 2);

    let w7 = word_45132();
    let rows7 = orbit_rows(&w7);
    ensure!(
        rows7
            == vec![(2, 8, 0, -sqrt2_over_4), (4, 16, 1, zero), (6, 8, 0, sqrt2_over_4)],
        "orbit table of the seven-letter word is {rows7:?}"
    );

    let w8 = Permutation::parse("43521").expect("valid").canonical_word();
    let rows8 = orbit_rows(&w8);
    ensure!(
        rows8 == vec![(6, 16, 0, -quarter), (10, 16, 0, quarter)],
        "orbit table of the eight-letter word is {rows8:?}"
    );

    let weta = Permutation::longest(5).canonical_word();
    let rows10 = orbit_rows(&weta);
    ensure!(
        rows10
            == vec![
                (24, 4, 0, -half),
                (32, 8, 1, zero),
                (32, 8, 1, zero),
                (32, 8, 1, zero),
                (40, 4, 0, half)
            ],
        "orbit table of the reversing word is {rows10:?}"
    );

    // Structural laws on every canonical word up to rank 3 plus the three
    // rank-4 words: orbit sizes obey the split law, a split orbit has zero
    // scalar part, and antipodal counts pair up.
    let mut orbits_checked = 0usize;
    let mut all_words: Vec<ReducedWord> = Vec::new();
    for size in 2..=4usize {
        for sigma in all_permutations(size) {
            all_words.push(sigma.canonical_word());
        }
    }
    all_words.push(w7.clone());
    all_words.push(w8.clone());
    all_words.push(weta.clone());
    for word in &all_words {
        let sigma = word.perm();
        let n = word.rank();
        let c = sigma.cycle_count();
        let b = sigma.block_set().len();
        let elements = coset(word);
        for orbit in orbit_decomposition(word) {
            let expected_size = 1usize << (n + 1 + usize::from(orbit.c_anti) - c);
            ensure!(
                orbit.members.len() == expected_size,
                "orbit of size {} for {}, expected {expected_size}",
                orbit.members.len(),
                sigma
            );
            if orbit.c_anti == 1 {
                ensure!(
                    orbit.re_value.is_zero(),
                    "split orbit with nonzero scalar part for {sigma}"
                );
            }
            let here = orbit.n_value.expect("filled");
            let there = n_of_z_in_coset(word, &elements, &orbit.representative.neg())
                .map_err(|e| format!("negated representative left the coset: {e}"))?;
            // A pair with a blocked member contributes nothing; otherwise the
            // two counts always complete each other.
            ensure!(
                here + there == 0 || here + there == 1u64 << (word.len() + b - n),
                "antipodal counts {here}+{there} break the pairing for {sigma}"
            );
            orbits_checked += 1;
        }
    }

    Ok(format!(
        "three frozen orbit tables; size, scalar-part and pairing laws on {orbits_checked} orbits"
    ))
}

#[test]
fn c05_orbit_tables() {
    report(5, "orbit tables", orbit_tables());
}

// -------------------------------------------- criterion 6: golden skeleta --

fn expect_shape(
    word: &ReducedWord,
    z: &SpinWeylElement,
    vertices: usize,
    edges: Option<usize>,
    components: usize,
    isolated: Option<usize>,
) -> Result<StrataGraph, String> {
    let graph = StrataGraph::build(word, z).map_err(|e| format!("skeleton build failed: {e}"))?;
    ensure!(
        graph.vertices.len() == vertices,
        "word {:?}: {} vertices, expected {vertices}",
        word.letters(),
        graph.vertices.len()
    );
    if let Some(e) = edges {
        ensure!(
            graph.edges.len() == e,
            "word {:?}: {} edges, expected {e}",
            word.letters(),
            graph.edges.len()
        );
    }
    ensure!(
        graph.components() == components,
        "word {:?}: {} components, expected {components}",
        word.letters(),
        graph.components()
    );
    if let Some(iso) = isolated {
        ensure!(
            graph.isolated_count() == iso,
            "word {:?}: {} isolated vertices, expected {iso}",
            word.letters(),
            graph.isolated_count()
        );
    }
    Ok(graph)
}

fn golden_skeleta() -> Result<String, String> {
    // Rank 3, five letters: three vertices on a path, with pinned labels.
    let w = word_4312();
    let z = lift_word(&w, &[-1, -1, 1, -1, 1]).map_err(|e| format!("lift failed: {e}"))?;
    let graph = expect_shape(&w, &z, 3, Some(2), 1, Some(0))?;
    let vertex_set: BTreeSet<String> = graph.vertices.iter().map(|v| v.to_string()).collect();
    let expected_vertices: BTreeSet<String> =
        ["(-1,-1,+1,-1,+1)", "(-1,+1,-1,+1,-1)", "(+1,-1,-1,-1,-1)"]
            .iter()
            .map(|s| s.to_string())
            .collect();
    ensure!(
        vertex_set == expected_vertices,
        "five-letter skeleton vertices are {vertex_set:?}"
    );
    let label_set: BTreeSet<String> = graph.edges.iter().map(|e| e.label.to_string()).collect();
    let expected_labels: BTreeSet<String> = ["(-1,-2,+1,-1,+2)", "(-2,+1,-1,+2,-1)"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    ensure!(
        label_set == expected_labels,
        "five-letter skeleton edge labels are {label_set:?}"
    );

    // Rank 4, seven letters: three skeleta over the all-plus lift and its
    // companions.
    let w7 = word_45132();
    let base7 = lift_all_plus(&w7);
    let a1 = SpinWeylElement::ahat(4, 1).expect("in range");
    expect_shape(&w7, &a1.mul(&base7).expect("equal ranks"), 4, Some(3), 1, Some(0))?;
    expect_shape(&w7, &base7.neg(), 6, Some(6), 1, Some(0))?;
    expect_shape(&w7, &base7, 2, Some(0), 2, Some(2))?;

    // The unique two-dimensional sign pattern of the seven-letter word.
    let d2 = enumerate_d2_preancestries(&w7);
    ensure!(d2.len() == 1, "seven-letter word has {} two-dimensional patterns", d2.len());
    ensure!(
        d2[0].positions == [1, 2, 6, 7]
            && d2[0].signs == [-2, -2, 2, 2]
            && d2[0].d2_type == D2Type::II,
        "two-dimensional pattern is {:?}",
        d2[0]
    );

    // Rank 4, ten letters: the reversing word's three skeleta.
    let weta = Permutation::longest(5).canonical_word();
    let beta = lift_all_plus(&weta);
    expect_shape(&weta, &beta, 32, Some(48), 3, Some(2))?;
    let a1beta = a1.mul(&beta).expect("equal ranks");
    expect_shape(&weta, &a1beta, 40, Some(72), 1, Some(0))?;
    expect_shape(&weta, &a1beta.neg(), 24, None, 2, Some(0))?;

    Ok("seven pinned skeleta, the labeled five-letter path, and one type-II pattern".to_string())
}

#[test]
fn c06_golden_skeleta() {
    report(6, "golden skeleta", golden_skeleta());
}

// ---------------------------------------- criterion 7: component totals --

fn component_totals() -> Result<String, String> {
    let expected = [2usize, 6, 20, 52];
    for (n, &want) in (1..=4usize).zip(expected.iter()) {
        let word = Permutation::longest(n + 1).canonical_word();
        let got = components_total(&word);
        ensure!(got == want, "rank-{n} reversing word totals {got} components, expected {want}");
    }
    let w6 = Permutation::longest(6).canonical_word();
    let got6 = components_total_threaded(&w6, 4);
    ensure!(got6 == 96, "rank-5 reversing word totals {got6} components, expected 96");

    let got7 = components_total(&word_45132());
    ensure!(got7 == 40, "seven-letter word totals {got7} components, expected 40");
    let w8 = Permutation::parse("43521").expect("valid").canonical_word();
    let got8 = components_total(&w8);
    ensure!(got8 == 48, "eight-letter word totals {got8} components, expected 48");

    Ok("totals 2, 6, 20, 52, 96 for reversing words; 40 and 48 for the rank-4 examples".to_string())
}

#[test]
fn c07_component_totals() {
    report(7, "component totals", component_totals());
}

// ----------------------------------- criterion 8: Euler characteristics --

fn euler_characteristics() -> Result<String, String> {
    let weta = Permutation::longest(5).canonical_word();
    let beta = lift_all_plus(&weta);
    let a1 = SpinWeylElement::ahat(4, 1).expect("in range");
    let a1beta = a1.mul(&beta).expect("equal ranks");

    ensure!(
        euler_summary(&weta, &beta, &[32, 48, 22, 3]) == Ok(3),
        "alternating sum over the reversing all-plus lift is not 3"
    );
    ensure!(
        euler_summary(&weta, &a1beta, &[40, 72, 42, 10, 1]) == Ok(1),
        "alternating sum over the translated reversing lift is not 1"
    );

    let w = word_4312();
    let z = lift_word(&w, &[-1, -1, 1, -1, 1]).map_err(|e| format!("lift failed: {e}"))?;
    ensure!(
        euler_summary(&w, &z, &[3, 2]) == Ok(1),
        "alternating sum over the five-letter lift is not 1"
    );
    ensure!(
        matches!(euler_summary(&w, &z, &[4, 2]), Err(Error::CountMismatch(_))),
        "mismatched zero-dimensional count was not rejected"
    );

    Ok("alternating sums 3, 1 and 1; inconsistent inputs rejected".to_string())
}

#[test]
fn c08_euler_characteristics() {
    report(8, "Euler characteristics", euler_characteristics());
}

// --------------------------- criterion 9: factorization and membership --

fn random_parameter(rng: &mut StdRng, sign: i8) -> BigRational {
    let numer = rng.gen_range(1..=9i64) * i64::from(sign);
    let denom = rng.gen_range(1..=9i64);
    ratio(numer, denom)
}

fn factorization_and_cells() -> Result<String, String> {
    let w = word_45132();
    let stored: Vec<BigRational> = ["1", "2", "-3", "-1/2", "-2", "1", "-2"]
        .iter()
        .map(|s| parse_rational(s).expect("valid"))
        .collect();
    let l0 = product_from(&w, &stored).map_err(|e| format!("product failed: {e}"))?;
    let golden = RationalMatrix::from_csv(
        "1,0,0,0,0\n-3,1,0,0,0\n-3,-3/2,1,0,0\n0,-7,3,1,0\n0,4,-2,-2,1",
    )
    .map_err(|e| format!("golden parse failed: {e}"))?;
    ensure!(l0 == golden, "seven-parameter product disagrees with the stored matrix");
    let recovered = factor(&w, &l0).map_err(|e| format!("factorization failed: {e}"))?;
    ensure!(recovered == stored, "factorization recovered {recovered:?}");
    ensure!(
        signs_of(&stored) == Some(vec![1, 1, -1, -1, -1, 1, -1]),
        "stored parameters have the wrong sign vector"
    );
    let cell = bruhat_perm(&l0).map_err(|e| format!("cell detection failed: {e}"))?;
    ensure!(format!("{cell}") == "[45132]", "stored matrix lies in cell {cell}");

    // Membership characterization for the five-letter word: the product of
    // elementary factors lies in the cell of the word's permutation exactly
    // when every parameter is nonzero.  1000 seeded samples per sign case.
    let w5 = word_4312();
    let sigma = w5.perm();
    let sign_cases: Vec<Vec<i8>> = (0u32..32)
        .map(|bits| (0..5).map(|k| if bits >> k & 1 == 1 { -1i8 } else { 1 }).collect())
        .collect();
    let workers = thread::available_parallelism().map_or(4, |v| v.get()).min(8);
    let chunk = sign_cases.len().div_ceil(workers);
    let full_samples: usize = thread::scope(|scope| {
        let mut handles = Vec::new();
        for (widx, cases) in sign_cases.chunks(chunk).enumerate() {
            let w5 = &w5;
            let sigma = &sigma;
            handles.push(scope.spawn(move || -> Result<usize, String> {
                let mut done = 0usize;
                for (local, signs) in cases.iter().enumerate() {
                    let case_index = widx * chunk + local;
                    let mut rng = StdRng::seed_from_u64(0x0900 + case_index as u64);
                    for _ in 0..1000 {
                        let t: Vec<BigRational> =
                            signs.iter().map(|&s| random_parameter(&mut rng, s)).collect();
                        let m = product_from(w5, &t).expect("parameter count matches");
                        let found = bruhat_perm(&m).expect("invertible");
                        if found != *sigma {
                            return Err(format!(
                                "nonzero sample {t:?} landed in cell {found}"
                            ));
                        }
                        done += 1;
                    }
                }
                Ok(done)
            }));
        }
        let mut total = 0usize;
        for handle in handles {
            total += handle.join().expect("worker panicked")?;
        }
        Ok::<usize, String>(total)
    })?;
    ensure!(full_samples == 32_000, "ran {full_samples} nonzero samples");

    // Degenerate cases: zeroing any nonempty subset of parameters must leave
    // the cell.
    let mut degenerate_samples = 0usize;
    for pattern in 1u32..32 {
        let mut rng = StdRng::seed_from_u64(0x0A00 + u64::from(pattern));
        for _ in 0..30 {
            let t: Vec<BigRational> = (0..5)
                .map(|k| {
                    if pattern >> k & 1 == 1 {
                        BigRational::zero()
                    } else {
                        let sign = if rng.gen_bool(0.5) { 1 } else { -1 };
                        random_parameter(&mut rng, sign)
                    }
                })
                .collect();
            let m = product_from(&w5, &t).expect("parameter count matches");
            let found = bruhat_perm(&m).expect("invertible");
            ensure!(
                found != sigma,
                "degenerate sample {t:?} stayed in the cell"
            );
            degenerate_samples += 1;
        }
    }

    Ok(format!(
        "golden factorization; {full_samples} nonzero and {degenerate_samples} degenerate membership samples"
    ))
}

#[test]
fn c09_factorization_and_cells() {
    report(9, "factorization and cell membership", factorization_and_cells());
}

// ------------------------------------ criterion 10: transversal section --

fn transversal_section() -> Result<String, String> {
    let origin = [BigRational::zero(), BigRational::zero()];
    let at_origin = p_values(&origin[0], &origin[1]);
    ensure!(
        at_origin.iter().all(|v| v.is_zero()),
        "section polynomials do not vanish at the origin: {at_origin:?}"
    );

    let polys = TransversalPolynomials::standard();
    let grads = polys.gradients_at_origin();
    let expected_grads = [
        [rat(1), rat(0)],
        [rat(0), rat(1)],
        [rat(-20), rat(16)],
    ];
    ensure!(grads == expected_grads, "origin gradients are {grads:?}");
    ensure!(
        polys.gradients_pairwise_independent(),
        "origin gradients are not pairwise independent"
    );
    ensure!(
        p_values(&rat(1), &rat(1))[2] == rat(-5),
        "third polynomial at (1,1) is {}",
        p_values(&rat(1), &rat(1))[2]
    );

    let identity = RationalMatrix::identity(5);
    let grid = [rat(-2), rat(-1), rat(0), rat(1), rat(2)];
    let mut points = 0usize;
    for x1 in &grid {
        for x2 in &grid {
            let z7 = transversal_z7(x1, x2);
            let gram = z7.transpose().mul(&z7).map_err(|e| format!("product failed: {e}"))?;
            ensure!(gram == identity, "section matrix at ({x1},{x2}) is not orthogonal");
            let det = z7.determinant().map_err(|e| format!("determinant failed: {e}"))?;
            ensure!(det == BigRational::one(), "section matrix at ({x1},{x2}) has det {det}");
            let direct = p_values(x1, x2);
            let via_terms = polys.eval(x1, x2);
            ensure!(
                direct == via_terms,
                "term table and direct evaluation disagree at ({x1},{x2})"
            );
            points += 1;
        }
    }

    Ok(format!(
        "orthogonal unit-determinant section and matching polynomials at {points} grid points"
    ))
}

#[test]
fn c10_transversal_section() {
    report(10, "transversal section", transversal_section());
}

// ------------------------------------------- criterion 11: click moves --

fn vertex_from_mask(mask: u32, len: usize) -> AncestryVector {
    AncestryVector::new(
        (1..=len)
            .map(|k| if mask >> (len - k) & 1 == 1 { 1i8 } else { -1 })
            .collect(),
    )
    .expect("sign vector")
}

fn random_reduced_word(sigma: &Permutation, rng: &mut StdRng) -> ReducedWord {
    let mut images = sigma.oneline().to_vec();
    let mut letters = Vec::new();
    loop {
        let descents: Vec<usize> =
            (0..images.len() - 1).filter(|&i| images[i] > images[i + 1]).collect();
        let Some(&i) = descents.choose(rng) else { break };
        letters.push(i + 1);
        images.swap(i, i + 1);
    }
    ReducedWord::new(letters, sigma.size() - 1).expect("descent peeling is reduced")
}

/// Exhaustively verifies, for one word, that every click is an involution
/// that preserves the lift, and that non-clickable faces have equal endpoint
/// signs.  Returns the number of click moves verified.
fn check_word_clicks(word: &ReducedWord) -> Result<usize, String> {
    let faces = word.faces();
    let buckets = enumerate_dim0(word);
    let mut owner: HashMap<Vec<i8>, usize> = HashMap::new();
    for (bucket_id, bucket) in buckets.values().enumerate() {
        for vertex in bucket {
            owner.insert(vertex.entries().to_vec(), bucket_id);
        }
    }
    let mut moves = 0usize;
    for (bucket_id, bucket) in buckets.values().enumerate() {
        for vertex in bucket {
            for face in &faces {
                match click(vertex, face) {
                    Err(Error::NotClickable) => {
                        ensure!(
                            vertex.entries()[face.k1 - 1] == vertex.entries()[face.k2 - 1],
                            "refused click with unequal endpoints on {:?}",
                            word.letters()
                        );
                    }
                    Err(other) => {
                        return Err(format!("unexpected click error {other} on {:?}", word.letters()))
                    }
                    Ok(partner) => {
                        let back = click(&partner, face)
                            .map_err(|e| format!("click partner not clickable: {e}"))?;
                        ensure!(
                            back == *vertex,
                            "click is not an involution on {:?}",
                            word.letters()
                        );
                        ensure!(
                            owner.get(partner.entries()) == Some(&bucket_id),
                            "click changed the lift on {:?}",
                            word.letters()
                        );
                        moves += 1;
                    }
                }
            }
        }
    }
    Ok(moves)
}

fn click_moves() -> Result<String, String> {
    // Exhaustive sweep: every reduced word of length at most 8 over ranks
    // 1..=4, every vertex, every face.
    let mut jobs: Vec<(usize, Vec<usize>)> = Vec::new();
    for size in 2..=5usize {
        for sigma in all_permutations(size) {
            if sigma.inversions() > 8 {
                continue;
            }
            for letters in sigma.all_reduced_words() {
                jobs.push((size - 1, letters));
            }
        }
    }
    let total_words = jobs.len();
    let workers = thread::available_parallelism().map_or(4, |v| v.get()).min(8);
    let chunk = jobs.len().div_ceil(workers);
    let exhaustive_moves: usize = thread::scope(|scope| {
        let mut handles = Vec::new();
        for part in jobs.chunks(chunk) {
            handles.push(scope.spawn(move || -> Result<usize, String> {
                let mut moves = 0usize;
                for (n, letters) in part {
                    let word = ReducedWord::new(letters.clone(), *n)
                        .map_err(|e| format!("enumerated word rejected: {e}"))?;
                    moves += check_word_clicks(&word)?;
                }
                Ok(moves)
            }));
        }
        let mut total = 0usize;
        for handle in handles {
            total += handle.join().expect("worker panicked")?;
        }
        Ok::<usize, String>(total)
    })?;

    // Seeded sampling on longer words, up to length 15 at rank 5: a random
    // vertex and face per case, checking the same involution and
    // lift-preservation laws by direct lifting.
    let cases = 10_000usize;
    let per_worker = cases.div_ceil(workers);
    let (sampled_clicks, sampled_refusals) = thread::scope(|scope| {
        let mut handles = Vec::new();
        for widx in 0..workers {
            handles.push(scope.spawn(move || -> Result<(usize, usize), String> {
                let start = widx * per_worker;
                let end = (start + per_worker).min(cases);
                let mut clicks = 0usize;
                let mut refusals = 0usize;
                for case in start..end {
                    let mut rng = StdRng::seed_from_u64(0x0B00 + case as u64);
                    // Draw until the word has a face to click; short or
                    // repetition-free words have none.
                    let (word, faces) = loop {
                        let size = rng.gen_range(3..=6usize);
                        let mut oneline: Vec<usize> = (1..=size).collect();
                        oneline.shuffle(&mut rng);
                        let sigma = Permutation::from_oneline(oneline)
                            .map_err(|e| format!("shuffled one-line rejected: {e}"))?;
                        let word = random_reduced_word(&sigma, &mut rng);
                        let faces = word.faces();
                        if !faces.is_empty() {
                            break (word, faces);
                        }
                    };
                    let len = word.len();
                    let mask = rng.gen_range(0..1u32 << len);
                    let vertex = vertex_from_mask(mask, len);
                    let face = &faces[rng.gen_range(0..faces.len())];
                    match click(&vertex, face) {
                        Err(Error::NotClickable) => {
                            ensure!(
                                vertex.entries()[face.k1 - 1] == vertex.entries()[face.k2 - 1],
                                "refused click with unequal endpoints on {:?}",
                                word.letters()
                            );
                            refusals += 1;
                        }
                        Err(other) => {
                            return Err(format!(
                                "unexpected click error {other} on {:?}",
                                word.letters()
                            ))
                        }
                        Ok(partner) => {
                            let back = click(&partner, face)
                                .map_err(|e| format!("click partner not clickable: {e}"))?;
                            ensure!(
                                back == vertex,
                                "click is not an involution on {:?}",
                                word.letters()
                            );
                            let before = lift_word(&word, vertex.entries())
                                .map_err(|e| format!("lift failed: {e}"))?;
                            let after = lift_word(&word, partner.entries())
                                .map_err(|e| format!("lift failed: {e}"))?;
                            ensure!(
                                before == after,
                                "click changed the lift on {:?}",
                                word.letters()
                            );
                            clicks += 1;
                        }
                    }
                }
                Ok((clicks, refusals))
            }));
        }
        let mut clicks = 0usize;
        let mut refusals = 0usize;
        for handle in handles {
            let (c, r) = handle.join().expect("worker panicked")?;
            clicks += c;
            refusals += r;
        }
        Ok::<(usize, usize), String>((clicks, refusals))
    })?;

    Ok(format!(
        "{exhaustive_moves} moves over {total_words} short words; {sampled_clicks} sampled clicks and {sampled_refusals} refusals on long words"
    ))
}

#[test]
fn c11_click_moves() {
    report(11, "click moves", click_moves());
}
