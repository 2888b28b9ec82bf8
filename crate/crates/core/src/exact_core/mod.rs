//! Exact arithmetic: rationals, Gaussian rationals, polynomials and rational
//! functions in the formal variable `s`, half-integers, and the symbolic
//! Gamma-expression algebra everything else is written in.

mod gamma_expr;
mod gaussian;
mod half_integer;
mod matrix;
mod poly;
mod ratfunc;
pub mod special;

pub use gamma_expr::{FourPiExponent, GammaExpr, GammaValue};
pub use gaussian::GaussianRational;
pub use half_integer::HalfInteger;
pub use matrix::ExactMatrix;
pub use poly::Poly;
pub use ratfunc::RationalFunction;

pub use num_bigint::BigInt;
pub use num_rational::BigRational;

use crate::error::{Error, Result};
use num_traits::{One, Signed, ToPrimitive, Zero};

/// `n / d` as a reduced big rational. Panics on `d == 0`.
pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// The integer `n` as a big rational.
pub fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn big(n: &BigInt) -> BigRational {
    BigRational::from_integer(n.clone())
}

/// Parses `"p/q"` or `"p"`.
pub fn parse_rational(text: &str) -> Result<BigRational> {
    let t = text.trim();
    let parsed = match t.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| Error::Parse(t.to_string()))?;
            let d: BigInt = d.trim().parse().map_err(|_| Error::Parse(t.to_string()))?;
            if d.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {t}")));
            }
            BigRational::new(n, d)
        }
        None => {
            let n: BigInt = t.parse().map_err(|_| Error::Parse(t.to_string()))?;
            BigRational::from_integer(n)
        }
    };
    Ok(parsed)
}

/// Canonical `"p/q"` string (`"p"` for integers).
pub fn format_rational(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Nearest `f64` to a big rational; handles numerators and denominators
/// beyond the `f64` range.
pub fn rational_to_f64(q: &BigRational) -> f64 {
    if let (Some(n), Some(d)) = (q.numer().to_f64(), q.denom().to_f64()) {
        if n.is_finite() && d.is_finite() && n.abs() < 9.0e15 && d < 9.0e15 {
            return n / d;
        }
    }
    let n = q.numer().abs();
    let d = q.denom();
    let k = 64 - (n.bits() as i64 - d.bits() as i64);
    let quotient = if k >= 0 {
        (n << (k as usize)) / d
    } else {
        n / (d << ((-k) as usize))
    };
    let mag = libm::ldexp(quotient.to_f64().unwrap_or(f64::INFINITY), (-k).clamp(-5000, 5000) as i32);
    if q.is_negative() {
        -mag
    } else {
        mag
    }
}

/// Binomial coefficient with the convention `C(n, k) = 0` whenever `k < 0`,
/// `n < 0` or `k > n`.
pub fn binomial(n: i64, k: i64) -> BigInt {
    if n < 0 || k < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

/// `(2n-1)!! = 1·3·…·(2n-1)`, with `(-1)!! = 1`.
pub fn odd_double_factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(2 * i - 1))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format_round_trip() {
        for s in ["0", "-1/2", "7", "355/113", "-12"] {
            assert_eq!(format_rational(&parse_rational(s).unwrap()), s);
        }
        assert_eq!(parse_rational("2/4").unwrap(), rat(1, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn binomial_out_of_range_is_zero() {
        assert_eq!(binomial(0, 2), BigInt::zero());
        assert_eq!(binomial(0, -2), BigInt::zero());
        assert_eq!(binomial(-1, 0), BigInt::zero());
        assert_eq!(binomial(6, 3), BigInt::from(20));
    }

    #[test]
    fn large_rationals_convert() {
        let huge = BigRational::new(factorial(200), factorial(199));
        assert!((rational_to_f64(&huge) - 200.0).abs() < 1e-12);
        let tiny = BigRational::new(BigInt::from(-1), factorial(150));
        let expect = -(-libm::lgamma(151.0)).exp();
        assert!(((rational_to_f64(&tiny) - expect) / expect).abs() < 1e-12);
    }
}
