//! Numeric Gamma functions backing `eval_numeric`. The scalar routines come
//! from `libm` (a port of the musl/FreeBSD implementations).

use std::f64::consts::PI;

use num_traits::{Signed, Zero};

use super::{BigRational, HalfInteger};

/// True if `x` is a pole of `Γ`, i.e. a nonpositive integer.
pub fn is_gamma_pole(x: f64) -> bool {
    x <= 0.0 && x.fract() == 0.0
}

/// `Γ(x)`, or `None` at a pole.
pub fn gamma(x: f64) -> Option<f64> {
    if is_gamma_pole(x) {
        return None;
    }
    Some(libm::tgamma(x))
}

/// `(ln|Γ(x)|, sign Γ(x))`, or `None` at a pole.
pub fn ln_gamma_signed(x: f64) -> Option<(f64, f64)> {
    if is_gamma_pole(x) {
        return None;
    }
    let (lg, sign) = libm::lgamma_r(x);
    Some((lg, if sign < 0 { -1.0 } else { 1.0 }))
}

/// `Γ_m(z) = π^{m(m-1)/4} ∏_{ν=0}^{m-1} Γ(z - ν/2)`, or `None` at a pole.
pub fn multivariate_gamma(m: u32, z: f64) -> Option<f64> {
    let (lg, sign) = ln_multivariate_gamma_signed(m, z)?;
    let args = (0..m).map(|nu| z - nu as f64 / 2.0);
    if args.clone().all(|a| a.abs() < 150.0) {
        let prod: f64 = args.map(libm::tgamma).product();
        return Some(PI.powf(m as f64 * (m as f64 - 1.0) / 4.0) * prod);
    }
    Some(sign * lg.exp())
}

pub fn ln_multivariate_gamma_signed(m: u32, z: f64) -> Option<(f64, f64)> {
    let mut lg = (m as f64) * (m as f64 - 1.0) / 4.0 * PI.ln();
    let mut sign = 1.0;
    for nu in 0..m {
        let (l, s) = ln_gamma_signed(z - nu as f64 / 2.0)?;
        lg += l;
        sign *= s;
    }
    Some((lg, sign))
}

/// True if the exact argument `z` is a pole of `Γ_m`.
pub fn is_multivariate_gamma_pole(m: u32, z: &BigRational) -> bool {
    (0..m as i64).any(|nu| {
        let a = z - BigRational::new(nu.into(), 2.into());
        a.is_integer() && !a.is_positive() || a.is_zero()
    })
}

/// True if `Γ_m(s0 + shift)` has a pole.
pub fn shifted_pole(m: u32, s0: &BigRational, shift: &HalfInteger) -> bool {
    is_multivariate_gamma_pole(m, &(s0 + shift.to_rational()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_core::rat;

    #[test]
    fn gamma_two_at_two_is_half_pi() {
        // Γ₂(2) = √π Γ(2) Γ(3/2) = π/2
        let v = multivariate_gamma(2, 2.0).unwrap();
        assert!((v - PI / 2.0).abs() / (PI / 2.0) < 1e-15);
    }

    #[test]
    fn half_integer_values_match_closed_forms() {
        // Γ(n + 1/2) = (2n)! √π / (4^n n!)
        for n in 0..20u64 {
            let exact = (1..=n).fold(PI.sqrt(), |acc, k| acc * (2 * k - 1) as f64 / 2.0);
            let got = gamma(n as f64 + 0.5).unwrap();
            assert!((got - exact).abs() / exact < 1e-14, "n={n}");
        }
    }

    #[test]
    fn poles_detected() {
        assert!(gamma(0.0).is_none());
        assert!(gamma(-3.0).is_none());
        assert!(multivariate_gamma(2, 0.5).is_none());
        assert!(is_multivariate_gamma_pole(2, &rat(1, 2)));
        assert!(is_multivariate_gamma_pole(2, &rat(0, 1)));
        assert!(!is_multivariate_gamma_pole(2, &rat(3, 2)));
        assert!(is_multivariate_gamma_pole(3, &rat(1, 1)));
    }

    #[test]
    fn log_route_agrees_with_direct_product() {
        for z in [3.1, 7.5, 20.25] {
            let direct = multivariate_gamma(3, z).unwrap();
            let (lg, s) = ln_multivariate_gamma_signed(3, z).unwrap();
            assert!(((s * lg.exp()) - direct).abs() / direct.abs() < 1e-13);
        }
    }
}
