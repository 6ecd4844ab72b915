//! Scalar field abstraction.
//!
//! Every construction in this crate is generic over the coefficient field.
//! Verification compares against exact zero, so the intended instances are
//! exact fields: [`num_rational::BigRational`] (the default, see
//! [`crate::Rational`]) or a fixed-width `Ratio<i64>` / `Ratio<i128>` for small
//! inputs where overflow is known not to occur.

use std::fmt::{Debug, Display};
use std::str::FromStr;

use num_traits::{FromPrimitive, Num, Signed};

/// Coefficient field used by the linear algebra kernel and the algebra tables.
pub trait Scalar:
    Clone
    + Debug
    + Display
    + FromStr
    + PartialOrd
    + Num
    + Signed
    + FromPrimitive
    + Send
    + Sync
    + 'static
{
    /// Embeds an integer.
    fn from_int(v: i64) -> Self {
        Self::from_i64(v).expect("integer not representable in scalar type")
    }

    /// The quotient `num / den` computed in the field.
    fn ratio(num: i64, den: i64) -> Self {
        Self::from_int(num) / Self::from_int(den)
    }

    fn two() -> Self {
        Self::from_int(2)
    }

    fn half() -> Self {
        Self::ratio(1, 2)
    }
}

impl<T> Scalar for T where
    T: Clone
        + Debug
        + Display
        + FromStr
        + PartialOrd
        + Num
        + Signed
        + FromPrimitive
        + Send
        + Sync
        + 'static
{
}

/// Parses a scalar written as `"p"` or `"p/q"`.
pub fn parse_scalar<T: Scalar>(s: &str) -> Option<T> {
    s.trim().parse::<T>().ok()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::{BigRational, Ratio};

    #[test]
    fn ratio_is_reduced() {
        let r: BigRational = Scalar::ratio(6, -4);
        assert_eq!(r.to_string(), "-3/2");
        assert!(r.denom() > &num_bigint::BigInt::from(0));
    }

    #[test]
    fn parse_round_trip() {
        let r: BigRational = parse_scalar("-7/21").unwrap();
        assert_eq!(r, Scalar::ratio(-1, 3));
        assert_eq!(parse_scalar::<BigRational>("5").unwrap().to_string(), "5");
        assert!(parse_scalar::<BigRational>("1/0x").is_none());
        let small: Ratio<i64> = parse_scalar("3/9").unwrap();
        assert_eq!(small, Ratio::new(1, 3));
    }
}
