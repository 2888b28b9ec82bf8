use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::det_derivative::det_derivative;
use crate::combinatorics::triangle;
use crate::exact_core::{big, binomial, factorial, BigRational, GammaExpr, Poly};

/// Polynomial part `p(s)` of `∫ Y11^{n1} Y22^{n2} Y12^{n3} det(Y)^s e^{-tr Y} dY_inv = p(s) Γ₂(s)`.
pub fn monomial_poly(n1: u32, n2: u32, n3: u32) -> Poly {
    if n3 % 2 == 1 {
        return Poly::zero();
    }
    let h = n3 / 2;
    let prefactor = big(&triangle(n3 as i64 - 1, h as i64)) / big(&(BigInt::one() << h as usize));
    let mut sum = Poly::zero();
    for k in 0..=n1.min(n2) {
        let c = factorial(k as u64) * binomial(n1 as i64, k as i64) * binomial(n2 as i64, k as i64);
        let c = if k % 2 == 0 { c } else { -c };
        let p = Poly::rising(&BigRational::zero(), (n1 + n2 + h - k) as usize);
        sum = sum + p.scale(&big(&c));
    }
    sum.scale(&prefactor)
}

/// `∫ Y11^{n1} Y22^{n2} Y12^{n3} det(Y)^s e^{-tr Y} dY_inv`.
pub fn monomial_integral(n1: u32, n2: u32, n3: u32) -> GammaExpr {
    GammaExpr::from_poly(2, monomial_poly(n1, n2, n3))
}

/// The same integral as `(-1)^{n1+n2+n3} ∂11^{n1} ∂22^{n2} ∂12^{n3} det(T)^{-s}` at `T = 1`.
pub fn monomial_poly_via_derivative(n1: u32, n2: u32, n3: u32) -> Poly {
    let p = det_derivative(n1, n2, n3).at_identity();
    if (n1 + n2 + n3) % 2 == 0 {
        p
    } else {
        -p
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_core::rat;

    #[test]
    fn examples() {
        assert!(monomial_poly(0, 0, 1).is_zero());
        assert_eq!(monomial_poly(1, 0, 0), Poly::s());
        assert_eq!(monomial_poly(1, 1, 0), Poly::from_ints(&[0, 0, 1]));
        assert_eq!(monomial_poly(0, 0, 2), Poly::s().scale(&rat(1, 2)));
        assert_eq!(monomial_poly(0, 0, 0), Poly::one());
    }

    #[test]
    fn matches_derivative_route() {
        for n1 in 0..5 {
            for n2 in 0..5 {
                for n3 in 0..7 {
                    assert_eq!(monomial_poly(n1, n2, n3), monomial_poly_via_derivative(n1, n2, n3), "({n1},{n2},{n3})");
                }
            }
        }
        assert!(!monomial_poly(2, 0, 0).is_zero());
        assert!(monomial_poly(3, 1, 3).is_zero());
    }
}
