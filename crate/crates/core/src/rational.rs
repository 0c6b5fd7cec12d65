//! Exact rational arithmetic used for every offset, volume and threshold.
//!
//! [`Rational`] is a thin wrapper over `Ratio<i128>` that keeps values in
//! lowest terms with a positive denominator. Arithmetic is checked: an
//! overflow of the 128-bit range panics with `"rational overflow"` instead of
//! silently wrapping. Quantities that can grow without bound (binomials,
//! Erdős–Szekeres bounds, Fourier–Motzkin rows) are computed with
//! [`BigRational`] and converted back with [`Rational::try_from_big`].

use std::fmt;
use std::iter::{Product, Sum};
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{CheckedAdd, CheckedDiv, CheckedMul, CheckedSub, One, Signed, ToPrimitive, Zero};
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// An exact rational number in canonical form.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rational(Ratio<i128>);

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid rational {input:?}: {reason}")]
pub struct ParseRationalError {
    input: String,
    reason: &'static str,
}

impl Rational {
    pub const ZERO: Rational = Rational(Ratio::new_raw(0, 1));
    pub const ONE: Rational = Rational(Ratio::new_raw(1, 1));

    /// Builds `numer / denom` in lowest terms. Returns `None` for a zero denominator.
    pub fn new(numer: i128, denom: i128) -> Option<Self> {
        if denom == 0 {
            return None;
        }
        Some(Rational(Ratio::new(numer, denom)))
    }

    pub fn from_integer(value: i128) -> Self {
        Rational(Ratio::from_integer(value))
    }

    pub fn numer(&self) -> i128 {
        *self.0.numer()
    }

    pub fn denom(&self) -> i128 {
        *self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    pub fn floor(&self) -> i128 {
        self.0.floor().to_integer()
    }

    pub fn ceil(&self) -> i128 {
        self.0.ceil().to_integer()
    }

    pub fn checked_add(&self, other: &Self) -> Option<Self> {
        self.0.checked_add(&other.0).map(Rational)
    }

    pub fn checked_sub(&self, other: &Self) -> Option<Self> {
        self.0.checked_sub(&other.0).map(Rational)
    }

    pub fn checked_mul(&self, other: &Self) -> Option<Self> {
        self.0.checked_mul(&other.0).map(Rational)
    }

    pub fn checked_div(&self, other: &Self) -> Option<Self> {
        if other.is_zero() {
            return None;
        }
        self.0.checked_div(&other.0).map(Rational)
    }

    pub fn to_big(&self) -> BigRational {
        BigRational::new(BigInt::from(self.numer()), BigInt::from(self.denom()))
    }

    /// Converts back from an arbitrary-precision rational if it fits.
    pub fn try_from_big(value: &BigRational) -> Option<Self> {
        let numer = value.numer().to_i128()?;
        let denom = value.denom().to_i128()?;
        Rational::new(numer, denom)
    }

    /// Lossy conversion, for display and logging only.
    pub fn to_f64(&self) -> f64 {
        self.numer() as f64 / self.denom() as f64
    }

    /// The ratio `count / total` of two counters.
    pub fn from_counts(count: u128, total: u128) -> Option<Self> {
        if total == 0 {
            return None;
        }
        Rational::new(i128::try_from(count).ok()?, i128::try_from(total).ok()?)
    }

    pub fn min(self, other: Self) -> Self {
        std::cmp::min(self, other)
    }

    pub fn max(self, other: Self) -> Self {
        std::cmp::max(self, other)
    }
}

impl From<i128> for Rational {
    fn from(value: i128) -> Self {
        Rational::from_integer(value)
    }
}

impl From<i64> for Rational {
    fn from(value: i64) -> Self {
        Rational::from_integer(value as i128)
    }
}

impl From<i32> for Rational {
    fn from(value: i32) -> Self {
        Rational::from_integer(value as i128)
    }
}

impl Zero for Rational {
    fn zero() -> Self {
        Rational::ZERO
    }

    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}

impl One for Rational {
    fn one() -> Self {
        Rational::ONE
    }
}

impl Add for Rational {
    type Output = Rational;

    fn add(self, rhs: Self) -> Self {
        self.checked_add(&rhs).expect("rational overflow")
    }
}

impl Sub for Rational {
    type Output = Rational;

    fn sub(self, rhs: Self) -> Self {
        self.checked_sub(&rhs).expect("rational overflow")
    }
}

impl Mul for Rational {
    type Output = Rational;

    fn mul(self, rhs: Self) -> Self {
        self.checked_mul(&rhs).expect("rational overflow")
    }
}

impl Div for Rational {
    type Output = Rational;

    fn div(self, rhs: Self) -> Self {
        assert!(!rhs.is_zero(), "rational division by zero");
        self.checked_div(&rhs).expect("rational overflow")
    }
}

impl Neg for Rational {
    type Output = Rational;

    fn neg(self) -> Self {
        Rational(Ratio::new_raw(
            self.numer().checked_neg().expect("rational overflow"),
            self.denom(),
        ))
    }
}

impl AddAssign for Rational {
    fn add_assign(&mut self, rhs: Self) {
        *self = *self + rhs;
    }
}

impl SubAssign for Rational {
    fn sub_assign(&mut self, rhs: Self) {
        *self = *self - rhs;
    }
}

impl Sum for Rational {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Rational::ZERO, |acc, x| acc + x)
    }
}

impl Product for Rational {
    fn product<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Rational::ONE, |acc, x| acc * x)
    }
}

/// Always `p/q`, including `q = 1`; this is the canonical wire form.
impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.numer(), self.denom())
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rational {
    type Err = ParseRationalError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = |reason| ParseRationalError {
            input: s.to_string(),
            reason,
        };
        let trimmed = s.trim();
        let (numer, denom) = match trimmed.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (trimmed, "1"),
        };
        let numer: i128 = numer.parse().map_err(|_| err("bad numerator"))?;
        let denom: i128 = denom.parse().map_err(|_| err("bad denominator"))?;
        Rational::new(numer, denom).ok_or_else(|| err("zero denominator"))
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct RationalVisitor;

        impl Visitor<'_> for RationalVisitor {
            type Value = Rational;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a rational string \"p/q\" or an integer")
            }

            fn visit_str<E: de::Error>(self, v: &str) -> Result<Rational, E> {
                v.parse().map_err(E::custom)
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> Result<Rational, E> {
                Ok(Rational::from(v))
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> Result<Rational, E> {
                Ok(Rational::from_integer(v as i128))
            }
        }

        deserializer.deserialize_any(RationalVisitor)
    }
}

/// Exact comparison of `value^exp` against `bound` for a nonnegative big rational.
pub(crate) fn big_pow(value: &BigRational, exp: u32) -> BigRational {
    let mut acc = BigRational::one();
    for _ in 0..exp {
        acc *= value;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_form() {
        let r = Rational::new(6, -4).unwrap();
        assert_eq!(r.numer(), -3);
        assert_eq!(r.denom(), 2);
        assert_eq!(r.to_string(), "-3/2");
        assert_eq!(Rational::from_integer(3).to_string(), "3/1");
        assert!(Rational::new(1, 0).is_none());
    }

    #[test]
    fn parse_and_display_round_trip() {
        for s in ["0/1", "-7/3", "12/1", "1/1000000"] {
            assert_eq!(s.parse::<Rational>().unwrap().to_string(), s);
        }
        assert_eq!("5".parse::<Rational>().unwrap(), Rational::from_integer(5));
        assert_eq!(" 4/6 ".parse::<Rational>().unwrap().to_string(), "2/3");
        assert!("1/0".parse::<Rational>().is_err());
        assert!("x".parse::<Rational>().is_err());
        assert!("1.5".parse::<Rational>().is_err());
    }

    #[test]
    fn arithmetic() {
        let half = Rational::new(1, 2).unwrap();
        let third = Rational::new(1, 3).unwrap();
        assert_eq!(half + third, Rational::new(5, 6).unwrap());
        assert_eq!(half - third, Rational::new(1, 6).unwrap());
        assert_eq!(half * third, Rational::new(1, 6).unwrap());
        assert_eq!(half / third, Rational::new(3, 2).unwrap());
        assert_eq!(-half, Rational::new(-1, 2).unwrap());
        assert!(third < half);
        assert_eq!(Rational::new(7, 2).unwrap().floor(), 3);
        assert_eq!(Rational::new(-7, 2).unwrap().floor(), -4);
        assert_eq!(Rational::new(7, 2).unwrap().ceil(), 4);
    }

    #[test]
    #[should_panic(expected = "rational overflow")]
    fn overflow_panics() {
        let big = Rational::from_integer(i128::MAX / 2);
        let _ = big * Rational::from_integer(4);
    }

    #[test]
    fn serde_as_string() {
        let r = Rational::new(-3, 4).unwrap();
        let json = serde_json::to_string(&r).unwrap();
        assert_eq!(json, "\"-3/4\"");
        let back: Rational = serde_json::from_str(&json).unwrap();
        assert_eq!(back, r);
        let from_int: Rational = serde_json::from_str("5").unwrap();
        assert_eq!(from_int, Rational::from_integer(5));
    }

    #[test]
    fn big_round_trip() {
        let r = Rational::new(-22, 7).unwrap();
        assert_eq!(Rational::try_from_big(&r.to_big()), Some(r));
    }
}
