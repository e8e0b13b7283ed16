//! Exact scalar fields used by the linear algebra layer.

use std::fmt::Debug;
use std::ops::{Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Rational numbers with arbitrary precision.
pub type Rational = BigRational;

/// A commutative field with exact arithmetic.
pub trait Field:
    Clone + Debug + PartialEq + Zero + One + Neg<Output = Self> + Sub<Output = Self>
{
    /// Multiplicative inverse, `None` for zero.
    fn inverse(&self) -> Option<Self>;

    /// Image of an integer.
    fn from_i64(n: i64) -> Self;

    /// `self / other`; panics when `other` is zero.
    fn divide(&self, other: &Self) -> Self {
        self.clone() * other.inverse().expect("division by zero")
    }
}

impl Field for BigRational {
    fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.recip())
        }
    }

    fn from_i64(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }
}

/// Shorthand for a rational from a numerator and denominator.
pub fn rat(num: i64, den: i64) -> Rational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Shorthand for an integral rational.
pub fn rat_int(n: i64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}

/// Converts an integral rational back to `i64`, if it is one and fits.
pub fn rat_to_i64(r: &Rational) -> Option<i64> {
    if !r.is_integer() {
        return None;
    }
    i64::try_from(r.to_integer()).ok()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_inverse() {
        assert_eq!(rat(3, 4).inverse(), Some(rat(4, 3)));
        assert_eq!(rat_int(0).inverse(), None);
        assert_eq!(rat(6, 4).divide(&rat(3, 2)), rat_int(1));
        assert_eq!(rat_to_i64(&rat(10, 5)), Some(2));
        assert_eq!(rat_to_i64(&rat(1, 2)), None);
    }
}
