//! The finite spin lift of the signed permutation group, and the counting
//! formula for strata over each lift.
//!
//! The elements `acute_i` generate a finite double cover of the group of
//! positive-determinant signed permutation matrices.  A reduced word with a
//! choice of signs lifts to a product of `acute`/`grave` factors; the lifts
//! of one word form a coset of the subgroup generated by `ahat_1..ahat_n`
//! and `-1`.  For each coset element `z` the number of sign vectors lifting
//! to `z` is given in closed form by `n_of_z`, with a membership test in the
//! subgroup attached to the block set of the word's permutation.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::{Mutex, OnceLock};

use crate::clifford::{AhatNotation, CliffordElement};
use crate::error::{Error, Result};
use crate::scalar::ScaledDyadic;
use crate::words::{Permutation, ReducedWord};

/// An element of the spin lift of the signed permutation group.
///
/// The wrapper marks elements produced by group operations (products of
/// generators and their negatives); it inherits the canonical coefficient
/// map of the underlying [`CliffordElement`], so `z` and `-z` are distinct
/// keys, and ordering is deterministic.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SpinWeylElement(CliffordElement);

impl SpinWeylElement {
    /// Wraps a product of generators without re-deriving it; callers must
    /// pass genuine group elements.
    pub(crate) fn from_element_unchecked(element: CliffordElement) -> Self {
        SpinWeylElement(element)
    }

    pub fn one(n: usize) -> Self {
        SpinWeylElement(CliffordElement::one(n))
    }

    pub fn minus_one(n: usize) -> Self {
        SpinWeylElement(-&CliffordElement::one(n))
    }

    /// `ahat_i` as a group element.
    pub fn ahat(n: usize, i: usize) -> Result<Self> {
        Ok(SpinWeylElement(CliffordElement::ahat(n, i)?))
    }

    /// `acute_i` (`sign = +1`) or its inverse (`sign = -1`).
    pub fn acute(n: usize, i: usize, sign: i8) -> Result<Self> {
        Ok(SpinWeylElement(CliffordElement::acute(n, i, sign)?))
    }

    pub fn element(&self) -> &CliffordElement {
        &self.0
    }

    pub fn rank(&self) -> usize {
        self.0.rank()
    }

    pub fn real_part(&self) -> ScaledDyadic {
        self.0.real_part()
    }

    pub fn mul(&self, rhs: &SpinWeylElement) -> Result<SpinWeylElement> {
        Ok(SpinWeylElement(self.0.try_mul(&rhs.0)?))
    }

    pub fn neg(&self) -> SpinWeylElement {
        SpinWeylElement(-&self.0)
    }

    pub fn inverse(&self) -> SpinWeylElement {
        SpinWeylElement(self.0.reversal())
    }

    /// Conjugation by a sign vector in `{+1,-1}^n`; stays in the group.
    pub fn sign_conjugate(&self, signs: &[i8]) -> Result<SpinWeylElement> {
        Ok(SpinWeylElement(self.0.sign_conjugate(signs)?))
    }

    /// The permutation under the projection to signed permutation matrices:
    /// row `i` of `pi_matrix` has its unique nonzero entry in column
    /// `i^sigma`.  Fails when the element does not project to a signed
    /// permutation matrix.
    pub fn perm(&self) -> Result<Permutation> {
        let matrix = self.0.pi_matrix().map_err(|_| Error::NotSignedPermutation)?;
        let dim = matrix.len();
        let mut images = Vec::with_capacity(dim);
        let one = ScaledDyadic::one();
        for row in &matrix {
            let mut image = None;
            for (j, &c) in row.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                if (c != one && c != -one) || image.is_some() {
                    return Err(Error::NotSignedPermutation);
                }
                image = Some(j + 1);
            }
            images.push(image.ok_or(Error::NotSignedPermutation)?);
        }
        Permutation::from_oneline(images).map_err(|_| Error::NotSignedPermutation)
    }

    /// Rendering over the `ahat` monomial basis.
    pub fn to_ahat_string(&self, notation: AhatNotation) -> String {
        self.0
            .to_ahat_string(notation)
            .expect("group elements are even")
    }
}

impl fmt::Display for SpinWeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Lifts a reduced word with a sign vector: the left-to-right product of
/// `acute_{i_k}` (sign `+1`) or its inverse (sign `-1`).
pub fn lift_word(word: &ReducedWord, signs: &[i8]) -> Result<SpinWeylElement> {
    if signs.len() != word.len() {
        return Err(Error::SignLengthMismatch { got: signs.len(), expected: word.len() });
    }
    let n = word.rank();
    let mut acc = CliffordElement::one(n);
    for (&letter, &sign) in word.letters().iter().zip(signs) {
        if sign != 1 && sign != -1 {
            return Err(Error::BadSignEntry);
        }
        acc = acc.try_mul(&CliffordElement::acute(n, letter, sign)?)?;
    }
    Ok(SpinWeylElement(acc))
}

/// The all-plus lift of a word.
pub fn lift_all_plus(word: &ReducedWord) -> SpinWeylElement {
    lift_word(word, &vec![1i8; word.len()]).expect("matched lengths")
}

/// The closure of `{ahat_1..ahat_n, -1}` under multiplication: the lifted
/// diagonal subgroup, of cardinality `2^(n+1)`.
pub fn quat_elements(n: usize) -> Vec<SpinWeylElement> {
    let mut generators = vec![SpinWeylElement::minus_one(n)];
    for i in 1..=n {
        generators.push(SpinWeylElement::ahat(n, i).expect("letter in range"));
    }
    let mut seen: BTreeSet<SpinWeylElement> = BTreeSet::new();
    let mut frontier = vec![SpinWeylElement::one(n)];
    seen.insert(frontier[0].clone());
    while let Some(z) = frontier.pop() {
        for g in &generators {
            let next = z.mul(g).expect("equal ranks");
            if seen.insert(next.clone()) {
                frontier.push(next);
            }
        }
    }
    let elements: Vec<_> = seen.into_iter().collect();
    assert_eq!(elements.len(), 1 << (n + 1), "lifted diagonal subgroup size");
    elements
}

/// All `2^(n+1)` lifts of the word's permutation: the coset of the all-plus
/// lift under the lifted diagonal subgroup, sorted canonically.
pub fn coset(word: &ReducedWord) -> Vec<SpinWeylElement> {
    let base = lift_all_plus(word);
    let mut elements: Vec<SpinWeylElement> = quat_elements(word.rank())
        .iter()
        .map(|q| base.mul(q).expect("equal ranks"))
        .collect();
    elements.sort();
    elements.dedup();
    assert_eq!(elements.len(), 1 << (word.rank() + 1), "coset size");
    elements
}

/// Membership in the subgroup generated by the `acute_i` with `i` outside
/// `blocks`.  Closures are memoized per `(n, blocks)`.
pub fn in_tilde_h(z: &SpinWeylElement, blocks: &[usize]) -> bool {
    let n = z.rank();
    if blocks.is_empty() {
        // With no blocked letters the subgroup is the whole group, and `z`
        // is a group element by construction.
        return true;
    }
    static CACHE: OnceLock<Mutex<BTreeMap<(usize, Vec<usize>), BTreeSet<SpinWeylElement>>>> =
        OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(BTreeMap::new()));
    let key = (n, blocks.to_vec());
    let mut guard = cache.lock().expect("cache lock");
    let closure = guard.entry(key).or_insert_with(|| {
        let generators: Vec<SpinWeylElement> = (1..=n)
            .filter(|i| !blocks.contains(i))
            .map(|i| SpinWeylElement::acute(n, i, 1).expect("letter in range"))
            .collect();
        let mut seen: BTreeSet<SpinWeylElement> = BTreeSet::new();
        let mut frontier = vec![SpinWeylElement::one(n)];
        seen.insert(frontier[0].clone());
        while let Some(x) = frontier.pop() {
            for g in &generators {
                let next = x.mul(g).expect("equal ranks");
                if seen.insert(next.clone()) {
                    frontier.push(next);
                }
            }
        }
        seen
    });
    closure.contains(z)
}

/// Number of sign vectors of the word lifting to `z`, in closed form.
///
/// With `l` the word length, `n` the rank, `b` the size of the block set of
/// the word's permutation: `z` outside the block subgroup contributes zero;
/// otherwise `N(z) = 2^(l-n+b-1) + 2^(l/2-1) Re(z)`, evaluated exactly and
/// asserted to be a nonnegative integer.  Errors when `z` is not a lift of
/// the word's permutation.
pub fn n_of_z(word: &ReducedWord, z: &SpinWeylElement) -> Result<u64> {
    let elements = coset(word);
    n_of_z_in_coset(word, &elements, z)
}

/// Same as [`n_of_z`] with the coset precomputed by the caller.
pub fn n_of_z_in_coset(
    word: &ReducedWord,
    coset_elements: &[SpinWeylElement],
    z: &SpinWeylElement,
) -> Result<u64> {
    if !coset_elements.contains(z) {
        return Err(Error::OutsideCoset);
    }
    let blocks = word.perm().block_set();
    if !in_tilde_h(z, &blocks) {
        return Ok(0);
    }
    let l = word.len() as i32;
    let n = word.rank() as i32;
    let b = blocks.len() as i32;
    let value = ScaledDyadic::pow2(l - n + b - 1) + ScaledDyadic::sqrt2_pow(l - 2) * z.real_part();
    let count = value
        .as_integer()
        .unwrap_or_else(|| panic!("stratum count must be an integer, got {value}"));
    assert!(count >= 0, "stratum count must be nonnegative, got {count}");
    Ok(count as u64)
}

/// An orbit of the sign-conjugation action on a coset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitReport {
    /// Canonically smallest member.
    pub representative: SpinWeylElement,
    /// All members, sorted canonically.
    pub members: Vec<SpinWeylElement>,
    /// Scalar part, constant on the orbit.
    pub re_value: ScaledDyadic,
    /// 1 when some sign conjugation sends a member to its negative (`z` and
    /// `-z` then share the orbit), else 0.
    pub c_anti: u8,
    /// `n_of_z` of the members (constant on the orbit); filled when the
    /// orbit is computed relative to a word.
    pub n_value: Option<u64>,
    /// Isolated vertices of the one-skeleton over the representative;
    /// filled by the report assembly.
    pub isolated_count: Option<usize>,
}

/// The orbit of `z` under conjugation by all `2^n` sign vectors.
pub fn orbit(z: &SpinWeylElement) -> OrbitReport {
    let n = z.rank();
    let mut members = BTreeSet::new();
    for bits in 0u32..1 << n {
        let signs: Vec<i8> = (0..n)
            .map(|k| if bits & (1 << k) != 0 { -1 } else { 1 })
            .collect();
        members.insert(z.sign_conjugate(&signs).expect("matched length"));
    }
    let c_anti = u8::from(members.contains(&z.neg()));
    let members: Vec<_> = members.into_iter().collect();
    OrbitReport {
        representative: members[0].clone(),
        re_value: z.real_part(),
        c_anti,
        members,
        n_value: None,
        isolated_count: None,
    }
}

/// Partition of the full coset of a word into sign-conjugation orbits,
/// ordered by canonical representative, with `n_of_z` filled in.
pub fn orbit_decomposition(word: &ReducedWord) -> Vec<OrbitReport> {
    let elements = coset(word);
    let mut assigned: BTreeSet<SpinWeylElement> = BTreeSet::new();
    let mut orbits = Vec::new();
    for z in &elements {
        if assigned.contains(z) {
            continue;
        }
        let mut report = orbit(z);
        report.n_value =
            Some(n_of_z_in_coset(word, &elements, z).expect("member of its own coset"));
        for member in &report.members {
            assigned.insert(member.clone());
        }
        orbits.push(report);
    }
    let total: usize = orbits.iter().map(|o| o.members.len()).sum();
    assert_eq!(total, elements.len(), "orbits partition the coset");
    orbits
}
