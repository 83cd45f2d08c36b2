//! Exact rational matrices: unit-lower-triangular factorizations along a
//! reduced word, Bruhat-cell detection by rank jumps, rational rotation
//! matrices, and the transversal-section product with its sign
//! polynomials.  No floating point anywhere.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::words::{Permutation, ReducedWord};

/// Parses an exact rational from `p` or `p/q` text.
pub fn parse_rational(text: &str) -> Result<BigRational> {
    BigRational::from_str(text.trim())
        .map_err(|e| Error::Parse(format!("bad rational {text:?}: {e}")))
}

fn int(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

/// A dense matrix of exact rationals.  Entries are 0-indexed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: Vec<Vec<BigRational>>,
}

impl RationalMatrix {
    pub fn identity(size: usize) -> Self {
        let rows = (0..size)
            .map(|r| {
                (0..size)
                    .map(|c| if r == c { BigRational::one() } else { BigRational::zero() })
                    .collect()
            })
            .collect();
        RationalMatrix { rows }
    }

    /// Builds from row data; all rows must share one nonzero length.
    pub fn from_rows(rows: Vec<Vec<BigRational>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if cols == 0 || rows.iter().any(|r| r.len() != cols) {
            return Err(Error::MatrixShape(rows.len(), cols));
        }
        Ok(RationalMatrix { rows })
    }

    pub fn from_int_rows(rows: &[&[i64]]) -> Self {
        let rows = rows.iter().map(|r| r.iter().map(|&v| int(v)).collect()).collect();
        RationalMatrix::from_rows(rows).expect("literal rows are rectangular")
    }

    pub fn rows(&self) -> usize {
        self.rows.len()
    }

    pub fn cols(&self) -> usize {
        self.rows.first().map_or(0, Vec::len)
    }

    pub fn is_square(&self) -> bool {
        self.rows() == self.cols()
    }

    pub fn entry(&self, r: usize, c: usize) -> &BigRational {
        &self.rows[r][c]
    }

    pub fn set_entry(&mut self, r: usize, c: usize, value: BigRational) {
        self.rows[r][c] = value;
    }

    pub fn transpose(&self) -> RationalMatrix {
        let rows = (0..self.cols())
            .map(|c| (0..self.rows()).map(|r| self.rows[r][c].clone()).collect())
            .collect();
        RationalMatrix { rows }
    }

    pub fn mul(&self, rhs: &RationalMatrix) -> Result<RationalMatrix> {
        if self.cols() != rhs.rows() {
            return Err(Error::MatrixShape(rhs.rows(), rhs.cols()));
        }
        let rows = (0..self.rows())
            .map(|r| {
                (0..rhs.cols())
                    .map(|c| {
                        (0..self.cols())
                            .map(|k| &self.rows[r][k] * &rhs.rows[k][c])
                            .fold(BigRational::zero(), |acc, v| acc + v)
                    })
                    .collect()
            })
            .collect();
        Ok(RationalMatrix { rows })
    }

    pub fn is_unit_lower_triangular(&self) -> bool {
        self.is_square()
            && (0..self.rows()).all(|r| {
                self.rows[r][r].is_one()
                    && (r + 1..self.cols()).all(|c| self.rows[r][c].is_zero())
            })
    }

    /// Rank by exact Gaussian elimination.
    pub fn rank(&self) -> usize {
        rank_of(self.rows.clone())
    }

    pub fn determinant(&self) -> Result<BigRational> {
        if !self.is_square() {
            return Err(Error::MatrixShape(self.rows(), self.cols()));
        }
        let mut m = self.rows.clone();
        let size = m.len();
        let mut det = BigRational::one();
        for col in 0..size {
            let pivot = (col..size).find(|&r| !m[r][col].is_zero());
            let pivot = match pivot {
                Some(p) => p,
                None => return Ok(BigRational::zero()),
            };
            if pivot != col {
                m.swap(pivot, col);
                det = -det;
            }
            det *= &m[col][col];
            for r in col + 1..size {
                if m[r][col].is_zero() {
                    continue;
                }
                let ratio = &m[r][col] / &m[col][col];
                for c in col..size {
                    let delta = &ratio * &m[col][c];
                    m[r][c] -= delta;
                }
            }
        }
        Ok(det)
    }

    /// Parses comma-separated rows, one per line, entries as `p` or `p/q`.
    pub fn from_csv(text: &str) -> Result<RationalMatrix> {
        let mut rows = Vec::new();
        for line in text.lines() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let row: Vec<BigRational> =
                line.split(',').map(parse_rational).collect::<Result<_>>()?;
            rows.push(row);
        }
        RationalMatrix::from_rows(rows)
    }

    pub fn to_csv(&self) -> String {
        self.fraction_strings()
            .iter()
            .map(|row| row.join(","))
            .collect::<Vec<_>>()
            .join("\n")
    }

    /// Entries rendered as `p` or `p/q` strings.
    pub fn fraction_strings(&self) -> Vec<Vec<String>> {
        self.rows
            .iter()
            .map(|row| row.iter().map(BigRational::to_string).collect())
            .collect()
    }
}

impl fmt::Display for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_csv())
    }
}

fn rank_of(mut m: Vec<Vec<BigRational>>) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..cols {
        let pivot = (rank..rows).find(|&r| !m[r][col].is_zero());
        let pivot = match pivot {
            Some(p) => p,
            None => continue,
        };
        m.swap(pivot, rank);
        for r in rank + 1..rows {
            if m[r][col].is_zero() {
                continue;
            }
            let ratio = &m[r][col] / &m[rank][col];
            for c in col..cols {
                let delta = &ratio * &m[rank][c];
                m[r][c] -= delta;
            }
        }
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

/// The one-parameter lower-triangular generator: identity plus `t` at row
/// `j+1`, column `j` (1-indexed), inside an `(n+1) x (n+1)` matrix.
pub fn lambda_gen(n: usize, j: usize, t: &BigRational) -> Result<RationalMatrix> {
    if j < 1 || j > n {
        return Err(Error::LetterOutOfRange { letter: j, n });
    }
    let mut m = RationalMatrix::identity(n + 1);
    m.set_entry(j, j - 1, t.clone());
    Ok(m)
}

/// Left-to-right product of the word's generators at the given parameters.
pub fn product_from(word: &ReducedWord, t: &[BigRational]) -> Result<RationalMatrix> {
    if t.len() != word.len() {
        return Err(Error::ParamLengthMismatch { got: t.len(), expected: word.len() });
    }
    let size = word.rank() + 1;
    let mut m = RationalMatrix::identity(size);
    // Right-multiplying by the generator at letter j adds t times column
    // j+1 into column j (1-indexed).
    for (&j, tk) in word.letters().iter().zip(t) {
        for r in 0..size {
            let delta = tk * &m.rows[r][j];
            m.rows[r][j - 1] += delta;
        }
    }
    Ok(m)
}

/// A multilinear polynomial in the word parameters: each monomial is a
/// squarefree product of distinct `t_k`, stored as a bitmask.
#[derive(Debug, Clone, Default)]
struct MPoly {
    terms: std::collections::BTreeMap<u32, BigRational>,
}

impl MPoly {
    fn constant(c: BigRational) -> Self {
        let mut p = MPoly::default();
        if !c.is_zero() {
            p.terms.insert(0, c);
        }
        p
    }

    /// Adds `other * t_var` into `self`; no monomial of `other` may
    /// already contain the variable.
    fn add_mul_var(&mut self, other: &MPoly, var: u32) {
        let bit = 1u32 << var;
        for (&mask, coeff) in &other.terms {
            debug_assert_eq!(mask & bit, 0, "parameters enter a column once");
            let entry = self.terms.entry(mask | bit).or_insert_with(BigRational::zero);
            *entry += coeff;
            if entry.is_zero() {
                self.terms.remove(&(mask | bit));
            }
        }
    }

    /// Variables of the polynomial not yet assigned a value.
    fn unknowns(&self, solved: &[Option<BigRational>]) -> u32 {
        let mut union = 0u32;
        for &mask in self.terms.keys() {
            union |= mask;
        }
        let mut unknown = 0u32;
        for (k, slot) in solved.iter().enumerate() {
            if slot.is_none() && union >> k & 1 == 1 {
                unknown |= 1 << k;
            }
        }
        unknown
    }

    /// Evaluates the monomials not containing `skip_bit`, and separately
    /// the coefficient of the variable `skip_bit` after substituting the
    /// solved values; every other variable must be solved.
    fn split_linear(
        &self,
        solved: &[Option<BigRational>],
        skip_bit: u32,
    ) -> (BigRational, BigRational) {
        let mut constant = BigRational::zero();
        let mut coefficient = BigRational::zero();
        for (&mask, coeff) in &self.terms {
            let mut value = coeff.clone();
            for (k, slot) in solved.iter().enumerate() {
                if mask >> k & 1 == 1 && 1 << k != skip_bit {
                    value *= slot.as_ref().expect("remaining variables are solved");
                }
            }
            if mask & skip_bit == 0 {
                constant += value;
            } else {
                coefficient += value;
            }
        }
        (constant, coefficient)
    }
}

/// Recovers the unique all-nonzero parameter vector whose word product is
/// `l_matrix`, by sequential elimination on the symbolic product: each
/// pass solves every strictly-lower entry whose residual involves exactly
/// one unknown parameter (always linearly).  Fails when some parameter
/// would vanish, stays undetermined, or the final product differs.
pub fn factor(word: &ReducedWord, l_matrix: &RationalMatrix) -> Result<Vec<BigRational>> {
    let size = word.rank() + 1;
    if !l_matrix.is_square() || l_matrix.rows() != size {
        return Err(Error::MatrixShape(l_matrix.rows(), l_matrix.cols()));
    }
    let ell = word.len();
    // Symbolic product along the word.
    let mut sym: Vec<Vec<MPoly>> = (0..size)
        .map(|r| {
            (0..size)
                .map(|c| {
                    MPoly::constant(if r == c { BigRational::one() } else { BigRational::zero() })
                })
                .collect()
        })
        .collect();
    for (k, &j) in word.letters().iter().enumerate() {
        for r in 0..size {
            let source = sym[r][j].clone();
            sym[r][j - 1].add_mul_var(&source, k as u32);
        }
    }
    let mut solved: Vec<Option<BigRational>> = vec![None; ell];
    loop {
        let mut progress = false;
        for i in 0..size {
            for j in 0..i {
                let unknown = sym[i][j].unknowns(&solved);
                if unknown == 0 || unknown.count_ones() != 1 {
                    continue;
                }
                let (constant, coefficient) = sym[i][j].split_linear(&solved, unknown);
                if coefficient.is_zero() {
                    continue;
                }
                let value = (l_matrix.entry(i, j) - constant) / coefficient;
                if value.is_zero() {
                    return Err(Error::NotFactorizable);
                }
                solved[unknown.trailing_zeros() as usize] = Some(value);
                progress = true;
            }
        }
        if !progress {
            break;
        }
    }
    let t: Vec<BigRational> = solved.into_iter().collect::<Option<_>>().ok_or(Error::NotFactorizable)?;
    if product_from(word, &t)? != *l_matrix {
        return Err(Error::NotFactorizable);
    }
    Ok(t)
}

/// The permutation of the Bruhat cell containing `m`, read off rank
/// jumps: with `r(i,j)` the rank of the submatrix on rows `>= i` and
/// columns `<= j` (1-indexed), the pattern entry at `(i,j)` is
/// `r(i,j) - r(i+1,j) - r(i,j-1) + r(i+1,j-1)`; the result is invariant
/// under multiplication by invertible upper-triangular matrices on either
/// side.
pub fn bruhat_perm(m: &RationalMatrix) -> Result<Permutation> {
    if !m.is_square() {
        return Err(Error::MatrixShape(m.rows(), m.cols()));
    }
    let size = m.rows();
    if m.rank() != size {
        return Err(Error::SingularMatrix);
    }
    // ranks[i][j] = rank of rows i..size, cols 0..j (0-indexed, j exclusive).
    let mut ranks = vec![vec![0usize; size + 1]; size + 2];
    for i in 0..size {
        for j in 1..=size {
            let sub: Vec<Vec<BigRational>> =
                (i..size).map(|r| m.rows[r][..j].to_vec()).collect();
            ranks[i][j] = rank_of(sub);
        }
    }
    let mut images = vec![0usize; size];
    for i in 0..size {
        for j in 1..=size {
            let jump = ranks[i][j] + ranks[i + 1][j - 1];
            let cross = ranks[i + 1][j] + ranks[i][j - 1];
            if jump == cross + 1 {
                images[i] = j;
            }
        }
    }
    Permutation::from_oneline(images).map_err(|_| Error::SingularMatrix)
}

/// The rational rotation in rows/columns `i, i+1` (1-indexed) with cosine
/// `(1-t^2)/(1+t^2)` and sine `2t/(1+t^2)`; orthogonal with determinant 1.
pub fn zeta(n: usize, i: usize, t: &BigRational) -> Result<RationalMatrix> {
    if i < 1 || i > n {
        return Err(Error::LetterOutOfRange { letter: i, n });
    }
    let denom = BigRational::one() + t * t;
    let cos = (BigRational::one() - t * t) / &denom;
    let sin = (int(2) * t) / &denom;
    let mut m = RationalMatrix::identity(n + 1);
    m.set_entry(i - 1, i - 1, cos.clone());
    m.set_entry(i, i, cos);
    m.set_entry(i, i - 1, sin.clone());
    m.set_entry(i - 1, i, -sin);
    Ok(m)
}

/// The two-parameter transversal section at the dimension-2 stratum: the
/// 5x5 product of seven rational rotations, the first two carrying the
/// parameters.
pub fn transversal_z7(x1: &BigRational, x2: &BigRational) -> RationalMatrix {
    let half = BigRational::new(BigInt::from(1), BigInt::from(2));
    let factors = [
        zeta(4, 2, &(x1 - BigRational::one())),
        zeta(4, 3, &(x2 - BigRational::one())),
        zeta(4, 1, &-half.clone()),
        zeta(4, 2, &-half.clone()),
        zeta(4, 4, &half),
        zeta(4, 3, &half),
        zeta(4, 2, &half),
    ];
    let mut m = RationalMatrix::identity(5);
    for f in factors {
        m = m.mul(&f.expect("rotation index in range")).expect("square sizes agree");
    }
    m
}

/// The three sign polynomials cutting out the stratum inside the
/// transversal section: two coordinates and one quartic.
#[derive(Debug, Clone)]
pub struct TransversalPolynomials {
    terms: [Vec<(BigRational, u32, u32)>; 3],
}

impl TransversalPolynomials {
    pub fn standard() -> Self {
        let p1 = vec![(int(1), 1, 0)];
        let p2 = vec![(int(1), 0, 1)];
        let p3 = vec![
            (int(5), 2, 2),
            (int(-10), 2, 1),
            (int(-2), 1, 2),
            (int(10), 2, 0),
            (int(4), 1, 1),
            (int(-8), 0, 2),
            (int(-20), 1, 0),
            (int(16), 0, 1),
        ];
        TransversalPolynomials { terms: [p1, p2, p3] }
    }

    /// Coefficient triples `(c, d1, d2)` of the requested polynomial,
    /// meaning `c * x1^d1 * x2^d2`.
    pub fn terms(&self, index: usize) -> &[(BigRational, u32, u32)] {
        &self.terms[index]
    }

    pub fn eval(&self, x1: &BigRational, x2: &BigRational) -> [BigRational; 3] {
        let eval_one = |terms: &[(BigRational, u32, u32)]| {
            terms
                .iter()
                .map(|(c, d1, d2)| {
                    let mut v = c.clone();
                    for _ in 0..*d1 {
                        v *= x1;
                    }
                    for _ in 0..*d2 {
                        v *= x2;
                    }
                    v
                })
                .fold(BigRational::zero(), |acc, v| acc + v)
        };
        [eval_one(&self.terms[0]), eval_one(&self.terms[1]), eval_one(&self.terms[2])]
    }

    /// Gradients at the origin: the linear-term coefficients.
    pub fn gradients_at_origin(&self) -> [[BigRational; 2]; 3] {
        let grad_one = |terms: &[(BigRational, u32, u32)]| {
            let pick = |d1: u32, d2: u32| {
                terms
                    .iter()
                    .find(|(_, a, b)| *a == d1 && *b == d2)
                    .map_or_else(BigRational::zero, |(c, _, _)| c.clone())
            };
            [pick(1, 0), pick(0, 1)]
        };
        [grad_one(&self.terms[0]), grad_one(&self.terms[1]), grad_one(&self.terms[2])]
    }

    /// True when the origin gradients of every pair span the plane.
    pub fn gradients_pairwise_independent(&self) -> bool {
        let g = self.gradients_at_origin();
        for a in 0..3 {
            for b in a + 1..3 {
                let det = &g[a][0] * &g[b][1] - &g[a][1] * &g[b][0];
                if det.is_zero() {
                    return false;
                }
            }
        }
        true
    }
}

/// Evaluates the three sign polynomials exactly.
pub fn p_values(x1: &BigRational, x2: &BigRational) -> [BigRational; 3] {
    TransversalPolynomials::standard().eval(x1, x2)
}

/// True when every entry of `t` is nonzero with the stated sign.
pub fn signs_of(t: &[BigRational]) -> Option<Vec<i8>> {
    t.iter()
        .map(|v| {
            if v.is_zero() {
                None
            } else if v.is_positive() {
                Some(1)
            } else {
                Some(-1)
            }
        })
        .collect()
}
