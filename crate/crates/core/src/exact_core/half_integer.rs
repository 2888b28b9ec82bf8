use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use super::{format_rational, BigRational};
use crate::error::{Error, Result};

/// An exact element of `½ℤ`, stored as twice its value.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct HalfInteger {
    twice: BigInt,
}

impl HalfInteger {
    pub fn from_twice(twice: impl Into<BigInt>) -> Self {
        HalfInteger { twice: twice.into() }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_twice(BigInt::from(n) * 2)
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn half() -> Self {
        Self::from_twice(1)
    }

    pub fn twice_value(&self) -> &BigInt {
        &self.twice
    }

    pub fn to_rational(&self) -> BigRational {
        BigRational::new(self.twice.clone(), BigInt::from(2))
    }

    pub fn to_f64(&self) -> f64 {
        self.twice.to_f64().unwrap_or(f64::NAN) / 2.0
    }

    pub fn try_from_rational(q: &BigRational) -> Result<Self> {
        let t = q * BigInt::from(2);
        if t.is_integer() {
            Ok(Self::from_twice(t.to_integer()))
        } else {
            Err(Error::DomainError(format!("{} is not a half-integer", format_rational(q))))
        }
    }

    pub fn is_integer(&self) -> bool {
        self.twice.is_even()
    }

    /// Splits `self = n + f` with `n ∈ ℤ` and `f ∈ {0, ½}`.
    pub fn split_floor(&self) -> (i64, HalfInteger) {
        let (q, r) = self.twice.div_mod_floor(&BigInt::from(2));
        let n = q.to_i64().expect("half-integer shift out of i64 range");
        (n, HalfInteger::from_twice(r))
    }

    pub fn is_zero(&self) -> bool {
        self.twice.is_zero()
    }
}

impl fmt::Display for HalfInteger {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", format_rational(&self.to_rational()))
    }
}

impl std::str::FromStr for HalfInteger {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Self::try_from_rational(&super::parse_rational(s)?)
    }
}

impl<'a> Add<&'a HalfInteger> for &'a HalfInteger {
    type Output = HalfInteger;
    fn add(self, rhs: &HalfInteger) -> HalfInteger {
        HalfInteger::from_twice(&self.twice + &rhs.twice)
    }
}

impl<'a> Sub<&'a HalfInteger> for &'a HalfInteger {
    type Output = HalfInteger;
    fn sub(self, rhs: &HalfInteger) -> HalfInteger {
        HalfInteger::from_twice(&self.twice - &rhs.twice)
    }
}

impl Add for HalfInteger {
    type Output = HalfInteger;
    fn add(self, rhs: Self) -> Self {
        &self + &rhs
    }
}

impl Sub for HalfInteger {
    type Output = HalfInteger;
    fn sub(self, rhs: Self) -> Self {
        &self - &rhs
    }
}

impl Neg for HalfInteger {
    type Output = HalfInteger;
    fn neg(self) -> Self {
        HalfInteger::from_twice(-self.twice)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_core::rat;

    #[test]
    fn split_floor_handles_negatives() {
        assert_eq!(HalfInteger::from_twice(3).split_floor(), (1, HalfInteger::half()));
        assert_eq!(HalfInteger::from_twice(-1).split_floor(), (-1, HalfInteger::half()));
        assert_eq!(HalfInteger::from_twice(-4).split_floor(), (-2, HalfInteger::zero()));
    }

    #[test]
    fn parses_and_rejects() {
        assert_eq!("3/2".parse::<HalfInteger>().unwrap(), HalfInteger::from_twice(3));
        assert!("1/3".parse::<HalfInteger>().is_err());
        assert_eq!(HalfInteger::from_twice(-3).to_rational(), rat(-3, 2));
        assert_eq!(HalfInteger::from_twice(5).to_string(), "5/2");
    }
}
