//! Exact scalars of the form `a * 2^(-h/2)`.
//!
//! Every coefficient that appears in this crate lives in the set
//! `{ dyadic rationals } ∪ { dyadic rationals * sqrt(2) }`: products of the
//! group generators contribute one factor `1/sqrt(2)` each, and nothing else
//! ever enters.  A single signed mantissa together with a nonnegative
//! half-exponent represents such a number exactly.
//!
//! The set is closed under multiplication but *not* under arbitrary addition:
//! `1 + sqrt(2)` has no representation here.  Sums of two nonzero values are
//! defined only when the half-exponents have equal parity, which holds for
//! every addition the library performs (coefficients of a fixed product of
//! generators all share the parity of the word length).  Mixed-parity
//! addition panics rather than silently approximating.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

/// Exact scalar `mantissa * 2^(-halfexp/2)`.
///
/// Canonical form: a zero mantissa forces `halfexp == 0`, and a nonzero
/// mantissa is either odd or has `halfexp < 2`, so no factor of 2 can be
/// moved between the fields.  Canonical forms are unique, which makes the
/// derived `Eq`/`Ord`/`Hash` structural comparisons exact value comparisons
/// within one parity class; `Ord` additionally handles mixed parities by
/// comparing squared values.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ScaledDyadic {
    mantissa: i64,
    halfexp: u32,
}

impl ScaledDyadic {
    /// Builds the value `mantissa * 2^(-halfexp/2)` and canonicalizes it.
    pub fn new(mantissa: i64, halfexp: u32) -> Self {
        let mut a = mantissa;
        let mut h = halfexp;
        if a == 0 {
            return ScaledDyadic { mantissa: 0, halfexp: 0 };
        }
        while a % 2 == 0 && h >= 2 {
            a /= 2;
            h -= 2;
        }
        ScaledDyadic { mantissa: a, halfexp: h }
    }

    pub const fn zero() -> Self {
        ScaledDyadic { mantissa: 0, halfexp: 0 }
    }

    pub const fn one() -> Self {
        ScaledDyadic { mantissa: 1, halfexp: 0 }
    }

    pub fn from_int(v: i64) -> Self {
        ScaledDyadic::new(v, 0)
    }

    /// `2^k` for any integer `k` (negative `k` gives `1/2^|k|`).
    pub fn pow2(k: i32) -> Self {
        Self::sqrt2_pow(2 * k)
    }

    /// `2^(k/2)` for any integer `k`, i.e. an arbitrary power of `sqrt(2)`.
    pub fn sqrt2_pow(k: i32) -> Self {
        if k >= 0 {
            if k % 2 == 0 {
                ScaledDyadic::new(1i64 << (k / 2), 0)
            } else {
                // 2^(k/2) = 2^((k+1)/2) * 2^(-1/2)
                ScaledDyadic::new(1i64 << ((k + 1) / 2), 1)
            }
        } else {
            ScaledDyadic::new(1, (-k) as u32)
        }
    }

    pub fn mantissa(&self) -> i64 {
        self.mantissa
    }

    pub fn halfexp(&self) -> u32 {
        self.halfexp
    }

    pub fn is_zero(&self) -> bool {
        self.mantissa == 0
    }

    pub fn signum(&self) -> i32 {
        self.mantissa.signum() as i32
    }

    pub fn abs(&self) -> Self {
        ScaledDyadic { mantissa: self.mantissa.abs(), halfexp: self.halfexp }
    }

    /// True when the value is an integer.  In canonical form that is exactly
    /// `halfexp == 0`.
    pub fn is_integer(&self) -> bool {
        self.halfexp == 0
    }

    /// The value as an integer, when it is one.
    pub fn as_integer(&self) -> Option<i64> {
        if self.is_integer() {
            Some(self.mantissa)
        } else {
            None
        }
    }

    /// Squared value; always dyadic, hence always addable to other squares.
    pub fn square(&self) -> Self {
        *self * *self
    }

    fn checked(mantissa: i128, halfexp: u32) -> Self {
        let mut a = mantissa;
        let mut h = halfexp;
        if a == 0 {
            return ScaledDyadic::zero();
        }
        while a % 2 == 0 && h >= 2 {
            a /= 2;
            h -= 2;
        }
        let a64 = i64::try_from(a).expect("ScaledDyadic mantissa overflow");
        ScaledDyadic { mantissa: a64, halfexp: h }
    }
}

impl Add for ScaledDyadic {
    type Output = ScaledDyadic;

    fn add(self, rhs: ScaledDyadic) -> ScaledDyadic {
        if self.is_zero() {
            return rhs;
        }
        if rhs.is_zero() {
            return self;
        }
        assert_eq!(
            self.halfexp % 2,
            rhs.halfexp % 2,
            "cannot add {self} and {rhs}: incommensurable sqrt(2) parts"
        );
        let h = self.halfexp.max(rhs.halfexp);
        let a = (self.mantissa as i128) << ((h - self.halfexp) / 2);
        let b = (rhs.mantissa as i128) << ((h - rhs.halfexp) / 2);
        ScaledDyadic::checked(a + b, h)
    }
}

impl AddAssign for ScaledDyadic {
    fn add_assign(&mut self, rhs: ScaledDyadic) {
        *self = *self + rhs;
    }
}

impl Sub for ScaledDyadic {
    type Output = ScaledDyadic;

    fn sub(self, rhs: ScaledDyadic) -> ScaledDyadic {
        self + (-rhs)
    }
}

impl Neg for ScaledDyadic {
    type Output = ScaledDyadic;

    fn neg(self) -> ScaledDyadic {
        ScaledDyadic { mantissa: -self.mantissa, halfexp: self.halfexp }
    }
}

impl Mul for ScaledDyadic {
    type Output = ScaledDyadic;

    fn mul(self, rhs: ScaledDyadic) -> ScaledDyadic {
        ScaledDyadic::checked(
            self.mantissa as i128 * rhs.mantissa as i128,
            self.halfexp + rhs.halfexp,
        )
    }
}

impl PartialOrd for ScaledDyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ScaledDyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        let sa = self.signum();
        let sb = other.signum();
        if sa != sb {
            return sa.cmp(&sb);
        }
        if sa == 0 {
            return Ordering::Equal;
        }
        // Same nonzero sign: compare |a1| 2^(-h1/2) with |a2| 2^(-h2/2) via
        // squares, which is exact in the dyadic rationals.
        let min = self.halfexp.min(other.halfexp);
        let lhs = (self.mantissa as i128 * self.mantissa as i128) << (other.halfexp - min);
        let rhs = (other.mantissa as i128 * other.mantissa as i128) << (self.halfexp - min);
        let mag = lhs.cmp(&rhs);
        if sa > 0 {
            mag
        } else {
            mag.reverse()
        }
    }
}

impl fmt::Display for ScaledDyadic {
    /// `a` when the value is an integer, otherwise `a/2^(h/2)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.halfexp == 0 {
            write!(f, "{}", self.mantissa)
        } else {
            write!(f, "{}/2^({}/2)", self.mantissa, self.halfexp)
        }
    }
}
