//! The scalar abstraction every other module is generic over.
//!
//! Exactness guarantees (canonical forms, exact LP optima, certified oracle
//! bounds) hold for the rational instances. The float instances exist for
//! quick approximate work and cross-checks; comparisons against zero in the
//! simplex are then subject to rounding.

use std::fmt::{Debug, Display};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::{BigRational, Ratio};
use num_traits::{FromPrimitive, Num, Signed, Zero};

/// A real field element usable throughout the crate.
pub trait Scalar:
    Num + Signed + Clone + PartialOrd + FromPrimitive + Display + Debug + FromStr + Send + Sync + 'static
{
    /// True for types whose arithmetic never rounds.
    const EXACT: bool;

    /// Magnitude below which a value counts as zero; zero for exact types.
    fn tolerance() -> Self {
        Self::zero()
    }

    fn is_negligible(&self) -> bool {
        self.abs() <= Self::tolerance()
    }

    fn exceeds_zero(&self) -> bool {
        *self > Self::tolerance()
    }

    fn below_zero(&self) -> bool {
        *self < -Self::tolerance()
    }

    /// Decimal rendering rounded half away from zero to `places` digits.
    fn to_decimal(&self, places: usize) -> String;

    fn from_int(v: i64) -> Self {
        Self::from_i64(v).expect("every scalar type represents small integers")
    }

    /// `p / q`; panics if `q == 0`. Use [`crate::exactnum::rat`] for checked construction.
    fn ratio(p: i64, q: i64) -> Self {
        assert!(q != 0, "zero denominator");
        Self::from_int(p) / Self::from_int(q)
    }

    fn two() -> Self {
        Self::one() + Self::one()
    }

    fn half() -> Self {
        Self::one() / Self::two()
    }

    /// `2^e` for any integer exponent.
    fn pow2(e: i32) -> Self {
        let base = if e >= 0 { Self::two() } else { Self::half() };
        let mut out = Self::one();
        for _ in 0..e.unsigned_abs() {
            out = out * base.clone();
        }
        out
    }

    /// The larger of two values; `self` wins ties.
    fn max_of(self, other: Self) -> Self {
        if other > self {
            other
        } else {
            self
        }
    }

    fn min_of(self, other: Self) -> Self {
        if other < self {
            other
        } else {
            self
        }
    }
}

fn decimal_from_parts(numer: &BigInt, denom: &BigInt, places: usize) -> String {
    let scale = num_traits::pow(BigInt::from(10u32), places);
    let scaled = numer.abs() * &scale;
    // round half away from zero: floor((2·scaled + denom) / (2·denom))
    let two = BigInt::from(2u32);
    let rounded = (&two * scaled + denom).div_floor(&(&two * denom));
    let (int_part, frac_part) = rounded.div_rem(&scale);
    let negative = numer.is_negative() && !rounded.is_zero();
    let sign = if negative { "-" } else { "" };
    if places == 0 {
        format!("{sign}{int_part}")
    } else {
        format!("{sign}{int_part}.{frac_part:0>places$}")
    }
}

impl Scalar for BigRational {
    const EXACT: bool = true;

    fn to_decimal(&self, places: usize) -> String {
        decimal_from_parts(self.numer(), self.denom(), places)
    }
}

impl Scalar for Ratio<i64> {
    const EXACT: bool = true;

    fn to_decimal(&self, places: usize) -> String {
        decimal_from_parts(
            &BigInt::from(*self.numer()),
            &BigInt::from(*self.denom()),
            places,
        )
    }
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn tolerance() -> Self {
        1e-9
    }

    fn to_decimal(&self, places: usize) -> String {
        format!("{self:.places$}")
    }
}

impl Scalar for f32 {
    const EXACT: bool = false;

    fn tolerance() -> Self {
        1e-5
    }

    fn to_decimal(&self, places: usize) -> String {
        format!("{self:.places$}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    type Q = BigRational;

    #[test]
    fn pow2_both_signs() {
        assert_eq!(Q::pow2(3), Q::from_int(8));
        assert_eq!(Q::pow2(-2), Q::ratio(1, 4));
        assert_eq!(Q::pow2(0), Q::one());
        assert_eq!(f64::pow2(-3), 0.125);
    }

    #[test]
    fn decimal_rounding() {
        assert_eq!(Q::ratio(2, 3).to_decimal(12), "0.666666666667");
        assert_eq!(Q::ratio(-1, 3).to_decimal(4), "-0.3333");
        assert_eq!(Q::ratio(1, 2).to_decimal(0), "1");
        assert_eq!(Q::ratio(-1, 8).to_decimal(2), "-0.13");
        assert_eq!(Q::ratio(-1, 1000).to_decimal(2), "0.00");
        assert_eq!(Q::from_int(16).to_decimal(3), "16.000");
        assert_eq!(Ratio::<i64>::new(16, 31).to_decimal(6), "0.516129");
    }

    #[test]
    fn max_min_ties_keep_self() {
        assert_eq!(Q::one().max_of(Q::zero()), Q::one());
        assert_eq!(Q::one().min_of(Q::zero()), Q::zero());
    }
}
