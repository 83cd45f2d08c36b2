//! The even Clifford algebra over `R^(n+1)` with `e_i^2 = -1`, in exact
//! arithmetic.
//!
//! Blades are subsets of `{1..n+1}` packed as bitmasks (bit `i-1` is `e_i`),
//! and products of basis vectors pick up a sign from the number of
//! transpositions needed to sort them plus one `-1` per repeated vector.
//! Coefficients are [`ScaledDyadic`] scalars, so every computation here is
//! exact; there is no floating point anywhere.
//!
//! The distinguished elements are `ahat_i = e_i e_{i+1}` (squaring to `-1`),
//! the rotation halves `acute_i = (1 + ahat_i)/sqrt(2)` and their inverses
//! `(1 - ahat_i)/sqrt(2)`, and the conjugation action of sign vectors.
//! `pi_matrix` is the vector representation `v -> z v rev(z)`, which sends
//! `acute_i` to the rotation by a quarter turn in the `(i, i+1)` plane and
//! realizes the double cover of the special orthogonal group.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::scalar::ScaledDyadic;

/// Multiplies basis blades: returns the product blade and its sign.
///
/// The sign counts transpositions moving each vector of `t` past the
/// higher-indexed vectors of `s`, then one factor `-1` per common vector
/// (from `e_i^2 = -1`).
pub fn blade_mul(s: u32, t: u32) -> (u32, i32) {
    let mut swaps = 0u32;
    let mut rest = t;
    while rest != 0 {
        let bit = rest.trailing_zeros();
        swaps += (s >> (bit + 1)).count_ones();
        rest &= rest - 1;
    }
    let contractions = (s & t).count_ones();
    let sign = if (swaps + contractions) % 2 == 0 { 1 } else { -1 };
    (s ^ t, sign)
}

/// Sign picked up by reversing a blade of the given size:
/// `(-1)^(k(k-1)/2)`.
pub fn reversal_sign(size: u32) -> i32 {
    if (size * (size.saturating_sub(1)) / 2) % 2 == 0 {
        1
    } else {
        -1
    }
}

/// An element of the Clifford algebra over `R^(n+1)`, stored as its sparse
/// canonical coefficient map.
///
/// Equality, ordering and hashing all use the full canonical map, so `z` and
/// `-z` are distinct keys everywhere.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CliffordElement {
    n: usize,
    coeffs: BTreeMap<u32, ScaledDyadic>,
}

impl CliffordElement {
    pub fn zero(n: usize) -> Self {
        CliffordElement { n, coeffs: BTreeMap::new() }
    }

    pub fn scalar(n: usize, value: ScaledDyadic) -> Self {
        let mut coeffs = BTreeMap::new();
        if !value.is_zero() {
            coeffs.insert(0, value);
        }
        CliffordElement { n, coeffs }
    }

    pub fn one(n: usize) -> Self {
        Self::scalar(n, ScaledDyadic::one())
    }

    /// A single basis blade with the given coefficient.
    pub fn blade(n: usize, mask: u32, coeff: ScaledDyadic) -> Result<Self> {
        if mask >= (1u32 << (n + 1)) {
            return Err(Error::RankMismatch(mask as usize, n));
        }
        let mut coeffs = BTreeMap::new();
        if !coeff.is_zero() {
            coeffs.insert(mask, coeff);
        }
        Ok(CliffordElement { n, coeffs })
    }

    /// `ahat_i = e_i e_{i+1}`, for `1 <= i <= n`.
    pub fn ahat(n: usize, i: usize) -> Result<Self> {
        if i < 1 || i > n {
            return Err(Error::LetterOutOfRange { letter: i, n });
        }
        let mask = (1u32 << (i - 1)) | (1u32 << i);
        Self::blade(n, mask, ScaledDyadic::one())
    }

    /// `(1 + sign * ahat_i)/sqrt(2)`: the spin lift of a quarter turn in the
    /// `(i, i+1)` plane, `sign = +1` forward and `-1` inverse.
    pub fn acute(n: usize, i: usize, sign: i8) -> Result<Self> {
        if sign != 1 && sign != -1 {
            return Err(Error::BadSignEntry);
        }
        if i < 1 || i > n {
            return Err(Error::LetterOutOfRange { letter: i, n });
        }
        let inv_sqrt2 = ScaledDyadic::new(1, 1);
        let mut coeffs = BTreeMap::new();
        coeffs.insert(0, inv_sqrt2);
        let mask = (1u32 << (i - 1)) | (1u32 << i);
        coeffs.insert(mask, if sign > 0 { inv_sqrt2 } else { -inv_sqrt2 });
        Ok(CliffordElement { n, coeffs })
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient of a blade (zero when absent).
    pub fn coeff(&self, mask: u32) -> ScaledDyadic {
        self.coeffs.get(&mask).copied().unwrap_or(ScaledDyadic::zero())
    }

    pub fn coeffs(&self) -> impl Iterator<Item = (u32, ScaledDyadic)> + '_ {
        self.coeffs.iter().map(|(&m, &c)| (m, c))
    }

    /// Scalar (grade 0) part.
    pub fn real_part(&self) -> ScaledDyadic {
        self.coeff(0)
    }

    /// Sum of squared coefficients.
    pub fn norm_sq(&self) -> ScaledDyadic {
        self.coeffs
            .values()
            .fold(ScaledDyadic::zero(), |acc, c| acc + c.square())
    }

    /// True when every blade has even size.
    pub fn is_even(&self) -> bool {
        self.coeffs.keys().all(|m| m.count_ones() % 2 == 0)
    }

    /// Product, failing on rank mismatch.
    pub fn try_mul(&self, rhs: &CliffordElement) -> Result<CliffordElement> {
        if self.n != rhs.n {
            return Err(Error::RankMismatch(self.n, rhs.n));
        }
        let mut coeffs: BTreeMap<u32, ScaledDyadic> = BTreeMap::new();
        for (&s, &cs) in &self.coeffs {
            for (&t, &ct) in &rhs.coeffs {
                let (mask, sign) = blade_mul(s, t);
                let mut term = cs * ct;
                if sign < 0 {
                    term = -term;
                }
                let entry = coeffs.entry(mask).or_insert(ScaledDyadic::zero());
                *entry = *entry + term;
            }
        }
        coeffs.retain(|_, c| !c.is_zero());
        Ok(CliffordElement { n: self.n, coeffs })
    }

    /// Reversal anti-automorphism: each blade of size `k` picks up
    /// `(-1)^(k(k-1)/2)`.  Satisfies `rev(xy) = rev(y) rev(x)`.
    pub fn reversal(&self) -> CliffordElement {
        let coeffs = self
            .coeffs
            .iter()
            .map(|(&m, &c)| {
                let c = if reversal_sign(m.count_ones()) < 0 { -c } else { c };
                (m, c)
            })
            .collect();
        CliffordElement { n: self.n, coeffs }
    }

    /// Conjugation by a sign vector `E` in `{+1,-1}^n`.
    ///
    /// `E` lifts to a diagonal sign vector `d` on the `n+1` coordinates with
    /// `d_i d_{i+1} = E_i`; a blade is scaled by the product of `d` over its
    /// vectors.  On even elements the two lifts of `E` agree, and
    /// `sign_conjugate` sends `ahat_i` to `E_i ahat_i`.
    pub fn sign_conjugate(&self, signs: &[i8]) -> Result<CliffordElement> {
        if signs.len() != self.n {
            return Err(Error::SignLengthMismatch { got: signs.len(), expected: self.n });
        }
        if signs.iter().any(|&s| s != 1 && s != -1) {
            return Err(Error::BadSignEntry);
        }
        let mut diag = vec![1i8; self.n + 1];
        for i in 0..self.n {
            diag[i + 1] = diag[i] * signs[i];
        }
        let coeffs = self
            .coeffs
            .iter()
            .map(|(&m, &c)| {
                let mut sign = 1i8;
                let mut rest = m;
                while rest != 0 {
                    let bit = rest.trailing_zeros() as usize;
                    sign *= diag[bit];
                    rest &= rest - 1;
                }
                (m, if sign < 0 { -c } else { c })
            })
            .collect();
        Ok(CliffordElement { n: self.n, coeffs })
    }

    /// The matrix of `v -> z v rev(z)` on `e_1..e_{n+1}`, column `j` holding
    /// the image of `e_j`.  Requires `z rev(z) = 1`.
    pub fn pi_matrix(&self) -> Result<Vec<Vec<ScaledDyadic>>> {
        let rev = self.reversal();
        if self.try_mul(&rev)? != CliffordElement::one(self.n) {
            return Err(Error::NotUnit);
        }
        let dim = self.n + 1;
        let mut columns = Vec::with_capacity(dim);
        for j in 0..dim {
            let ej = CliffordElement::blade(self.n, 1u32 << j, ScaledDyadic::one())?;
            let image = self.try_mul(&ej)?.try_mul(&rev)?;
            let mut column = vec![ScaledDyadic::zero(); dim];
            for (mask, c) in image.coeffs() {
                if mask.count_ones() != 1 {
                    panic!("conjugation of a vector by a unit must stay a vector");
                }
                column[mask.trailing_zeros() as usize] = c;
            }
            columns.push(column);
        }
        let mut matrix = vec![vec![ScaledDyadic::zero(); dim]; dim];
        for (j, column) in columns.iter().enumerate() {
            for (i, &c) in column.iter().enumerate() {
                matrix[i][j] = c;
            }
        }
        Ok(matrix)
    }

    /// Expansion over products of `ahat` generators.
    ///
    /// Even elements decompose uniquely over the monomials
    /// `ahat_S = prod_{i in S} ahat_i` (ascending factors), `S` running over
    /// subsets of `{1..n}` in binary counting order `1, ahat_1, ahat_2,
    /// ahat_1 ahat_2, ahat_3, ...`.  When all nonzero coefficients share one
    /// magnitude `2^(-h/2)` the result is rendered as a signed sum over a
    /// common denominator, matching the usual display of spin group elements.
    pub fn to_ahat_string(&self, notation: AhatNotation) -> Result<String> {
        if !self.is_even() {
            return Err(Error::OddElement);
        }
        if self.coeffs.is_empty() {
            return Ok("0".to_string());
        }
        let mut terms: Vec<(u32, ScaledDyadic)> = Vec::new();
        let mut total = 0usize;
        for s in 0u32..1u32 << self.n {
            let (mask, sign) = ahat_monomial(self.n, s);
            let mut c = self.coeff(mask);
            if sign < 0 {
                c = -c;
            }
            if !c.is_zero() {
                terms.push((s, c));
                total += 1;
            }
        }
        debug_assert_eq!(total, self.coeffs.len());

        let magnitude = terms[0].1.abs();
        let uniform = terms.iter().all(|(_, c)| c.abs() == magnitude);
        if uniform && magnitude.mantissa() == 1 {
            let mut body = String::new();
            for (k, (s, c)) in terms.iter().enumerate() {
                if c.signum() < 0 {
                    body.push('-');
                } else if k > 0 {
                    body.push('+');
                }
                body.push_str(&monomial_string(*s, notation));
            }
            if magnitude.halfexp() == 0 {
                return Ok(body);
            }
            return Ok(format!("({})/{}", body, denominator_string(magnitude.halfexp(), notation)));
        }

        // Mixed coefficients: render term by term with explicit scalars.
        let mut body = String::new();
        for (k, (s, c)) in terms.iter().enumerate() {
            if c.signum() < 0 {
                body.push('-');
            } else if k > 0 {
                body.push('+');
            }
            let mag = c.abs();
            if mag == ScaledDyadic::one() && *s != 0 {
                body.push_str(&monomial_string(*s, notation));
            } else if *s == 0 {
                body.push_str(&mag.to_string());
            } else {
                body.push_str(&format!("{}*{}", mag, monomial_string(*s, notation)));
            }
        }
        Ok(body)
    }
}

impl Add for &CliffordElement {
    type Output = CliffordElement;

    fn add(self, rhs: &CliffordElement) -> CliffordElement {
        assert_eq!(self.n, rhs.n, "rank mismatch in addition");
        let mut coeffs = self.coeffs.clone();
        for (&m, &c) in &rhs.coeffs {
            let entry = coeffs.entry(m).or_insert(ScaledDyadic::zero());
            *entry = *entry + c;
        }
        coeffs.retain(|_, c| !c.is_zero());
        CliffordElement { n: self.n, coeffs }
    }
}

impl Sub for &CliffordElement {
    type Output = CliffordElement;

    fn sub(self, rhs: &CliffordElement) -> CliffordElement {
        self + &(-rhs)
    }
}

impl Neg for &CliffordElement {
    type Output = CliffordElement;

    fn neg(self) -> CliffordElement {
        let coeffs = self.coeffs.iter().map(|(&m, &c)| (m, -c)).collect();
        CliffordElement { n: self.n, coeffs }
    }
}

impl Mul for &CliffordElement {
    type Output = CliffordElement;

    fn mul(self, rhs: &CliffordElement) -> CliffordElement {
        self.try_mul(rhs).expect("rank mismatch in product")
    }
}

impl fmt::Display for CliffordElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.to_ahat_string(AhatNotation::Unicode) {
            Ok(s) => write!(f, "{s}"),
            Err(_) => {
                // Odd or mixed-grade elements: raw blade expansion.
                if self.coeffs.is_empty() {
                    return write!(f, "0");
                }
                for (k, (mask, c)) in self.coeffs().enumerate() {
                    if k > 0 {
                        write!(f, " + ")?;
                    }
                    write!(f, "({c})e[{mask:b}]")?;
                }
                Ok(())
            }
        }
    }
}

/// Rendering style for `to_ahat_string`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AhatNotation {
    /// `â₁â₂`, denominators like `2√2`.
    Unicode,
    /// `a^1 a^2`, denominators like `2*sqrt(2)`.
    Ascii,
}

/// Blade and sign of the monomial `prod_{i in s} ahat_i`, factors ascending;
/// bit `i-1` of `s` selects `ahat_i`.
pub fn ahat_monomial(n: usize, s: u32) -> (u32, i32) {
    let mut mask = 0u32;
    let mut sign = 1i32;
    for i in 1..=n {
        if s & (1 << (i - 1)) != 0 {
            let blade = (1u32 << (i - 1)) | (1u32 << i);
            let (m, sg) = blade_mul(mask, blade);
            mask = m;
            sign *= sg;
        }
    }
    (mask, sign)
}

fn monomial_string(s: u32, notation: AhatNotation) -> String {
    if s == 0 {
        return "1".to_string();
    }
    let mut out = String::new();
    let mut first = true;
    for i in 1..=32u32 {
        if s & (1 << (i - 1)) != 0 {
            match notation {
                AhatNotation::Unicode => {
                    out.push('â');
                    for d in i.to_string().chars() {
                        out.push(subscript_digit(d));
                    }
                }
                AhatNotation::Ascii => {
                    if !first {
                        out.push(' ');
                    }
                    out.push_str(&format!("a^{i}"));
                }
            }
            first = false;
        }
    }
    out
}

fn subscript_digit(d: char) -> char {
    match d {
        '0' => '₀',
        '1' => '₁',
        '2' => '₂',
        '3' => '₃',
        '4' => '₄',
        '5' => '₅',
        '6' => '₆',
        '7' => '₇',
        '8' => '₈',
        '9' => '₉',
        _ => d,
    }
}

fn denominator_string(halfexp: u32, notation: AhatNotation) -> String {
    if halfexp % 2 == 0 {
        return format!("{}", 1u64 << (halfexp / 2));
    }
    let whole = 1u64 << ((halfexp - 1) / 2);
    match (whole, notation) {
        (1, AhatNotation::Unicode) => "(√2)".to_string(),
        (1, AhatNotation::Ascii) => "(sqrt(2))".to_string(),
        (w, AhatNotation::Unicode) => format!("({w}√2)"),
        (w, AhatNotation::Ascii) => format!("({w}*sqrt(2))"),
    }
}

/// Exact determinant by Laplace expansion; intended for the small matrices
/// produced by `pi_matrix`.
pub fn determinant(matrix: &[Vec<ScaledDyadic>]) -> ScaledDyadic {
    let n = matrix.len();
    if n == 0 {
        return ScaledDyadic::one();
    }
    if n == 1 {
        return matrix[0][0];
    }
    let mut det = ScaledDyadic::zero();
    for j in 0..n {
        if matrix[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<ScaledDyadic>> = matrix[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|&(k, _)| k != j)
                    .map(|(_, &c)| c)
                    .collect()
            })
            .collect();
        let term = matrix[0][j] * determinant(&minor);
        det = if j % 2 == 0 { det + term } else { det - term };
    }
    det
}
