use std::f64::consts::PI;

use vvgamma_core::combinatorics::{c_k_nu, c_poly, triangle};
use vvgamma_core::exact_core::{int, rat, BigInt, FourPiExponent};
use vvgamma_core::gamma_engine::{
    gamma_alternating, gamma_operator, invertibility_report, monomial_integral, monomial_poly,
};
use vvgamma_core::gl2_rep::{rho_matrix_int, HighestWeight};
use vvgamma_core::sturm_phantom::{combine_b, combine_b_expected, phantom_limit, theorem_verdict};
use vvgamma_core::{Error, ExactMatrix, GammaExpr, GaussianRational, HalfInteger, Poly, RationalFunction};

fn roots(rs: &[(i64, i64)]) -> Poly {
    Poly::from_roots(&rs.iter().map(|&(n, d)| rat(n, d)).collect::<Vec<_>>())
}

#[test]
fn triangle_values() {
    assert_eq!(triangle(4, 1), BigInt::from(10));
    assert_eq!(triangle(4, 2), BigInt::from(15));
    assert_eq!(triangle(2, 2), BigInt::from(0));
    assert_eq!(triangle(-1, 0), BigInt::from(1));
}

#[test]
fn alternating_polynomials() {
    assert_eq!(c_poly(1), Poly::s());
    assert_eq!(c_poly(2), roots(&[(0, 1), (-1, 2)]));
    assert_eq!(c_poly(3), roots(&[(0, 1), (-1, 2), (-1, 1)]));
    assert_eq!(c_k_nu(2, 1, 0), BigInt::from(1));
    assert_eq!(c_k_nu(2, 1, 1), BigInt::from(0));
    assert_eq!(c_k_nu(2, 0, 2), BigInt::from(1));
}

#[test]
fn alternating_gamma() {
    assert_eq!(gamma_alternating(2, 1).unwrap(), GammaExpr::from_poly(2, Poly::s()));
    let det = gamma_alternating(2, 2).unwrap();
    assert_eq!(det, GammaExpr::gamma_shifted(2, HalfInteger::from_int(1)));
    let three = gamma_alternating(3, 2).unwrap();
    let direct = 3.0 * 2.5 * PI.powf(1.5) * libm::tgamma(3.0) * libm::tgamma(2.5) * libm::tgamma(2.0);
    assert!((three.eval_numeric(3.0).unwrap() - direct).abs() < 1e-12 * direct);
    assert!(matches!(gamma_alternating(2, 3), Err(Error::DomainError(_))));
}

#[test]
fn monomial_values() {
    assert!(monomial_poly(0, 0, 1).is_zero());
    assert_eq!(monomial_poly(1, 0, 0), Poly::s());
    assert_eq!(monomial_poly(1, 1, 0), Poly::from_ints(&[0, 0, 1]));
    assert_eq!(monomial_poly(0, 0, 2), Poly::s().scale(&rat(1, 2)));
    assert_eq!(monomial_integral(1, 0, 0), gamma_alternating(2, 1).unwrap());
}

#[test]
fn rank_two_operators() {
    let sym = gamma_operator(HighestWeight::new(2, 0).unwrap());
    let outer = GammaExpr::from_poly(2, roots(&[(0, 1), (-1, 2)]));
    let middle = GammaExpr::from_poly(2, roots(&[(0, 1), (-3, 2)]));
    assert_eq!(sym.diag, vec![outer.clone(), middle, outer]);
    assert!(sym.is_palindromic());

    let trivial = gamma_operator(HighestWeight::new(0, 0).unwrap());
    assert_eq!(trivial.diag, vec![GammaExpr::gamma(2)]);

    // det^1 twist: Γ₂(s+1) on the one-dimensional weight (1, 1)
    let det = gamma_operator(HighestWeight::new(1, 1).unwrap());
    assert_eq!(det.diag, vec![GammaExpr::gamma_shifted(2, HalfInteger::from_int(1))]);
}

#[test]
fn invertibility_examples() {
    let l = HighestWeight::new(2, 0).unwrap();
    assert!(invertibility_report(l, &int(3)).invertible);
    let at_zero = invertibility_report(l, &int(0));
    assert_eq!(at_zero.vanishing, vec![0, 1, 2]);
    assert!(at_zero.gamma_pole);
    let at_minus_half = invertibility_report(l, &rat(-1, 2));
    assert_eq!(at_minus_half.vanishing, vec![0, 2]);
}

#[test]
fn standard_representation_matrix_is_g() {
    let m = rho_matrix_int(1, [[1, 2], [3, 4]]).matrix;
    let g = |i: usize, j: usize| GaussianRational::real(int([[1, 2], [3, 4]][i][j]));
    assert_eq!(m, ExactMatrix::from_fn(2, g));
}

#[test]
fn canonical_forms() {
    let shifted = GammaExpr::gamma_shifted(2, HalfInteger::from_int(1));
    assert_eq!(shifted.canonicalize().rat(), &RationalFunction::new(roots(&[(0, 1), (1, 2)]), Poly::one()));
    assert!(shifted.canonicalize().shift().is_zero());

    let half = GammaExpr::gamma_shifted(2, HalfInteger::from_twice(3)).canonicalize();
    assert_eq!(half.shift(), &HalfInteger::half());
    assert_eq!(half.rat(), &RationalFunction::new(roots(&[(-1, 2), (0, 1)]), Poly::one()));

    let a = GammaExpr::from_poly(2, Poly::s());
    let b = GammaExpr::from_poly(2, Poly::from_ints(&[1, 1]));
    assert_eq!(a.add(&b).unwrap(), GammaExpr::from_poly(2, Poly::from_ints(&[1, 2])));
    let odd = GammaExpr::gamma_shifted(2, HalfInteger::half());
    assert!(matches!(a.add(&odd), Err(Error::IncompatibleExpr(_))));
}

#[test]
fn numeric_evaluation() {
    assert!((GammaExpr::gamma(2).eval_numeric(2.0).unwrap() - PI / 2.0).abs() < 1e-14);
    assert!(matches!(GammaExpr::from_poly(2, Poly::s()).eval_numeric(0.0), Err(Error::PoleError(_))));
    let scaled = GammaExpr::gamma(2).times_four_pi(&rat(-2, 1), &int(0));
    let want = (4.0 * PI).powi(-6) * PI.sqrt() * 2.0 * libm::tgamma(2.5);
    assert!((scaled.eval_numeric(3.0).unwrap() - want).abs() < 1e-12 * want);
}

#[test]
fn phantom_values() {
    let one = phantom_limit(1).unwrap();
    assert_eq!(one.display_string(), "-8*pi^2");
    assert!((one.display_f64() + (4.0 * PI).powi(2) / 2.0).abs() < 1e-12);
    assert!(phantom_limit(2).unwrap().is_zero());
    assert!(phantom_limit(7).unwrap().is_zero());
    let (entries, report) = theorem_verdict(20).unwrap();
    assert!(report.passed(), "{report}");
    assert_eq!(entries.iter().filter(|e| e.nonzero).count(), 1);
    for k in 1..=10 {
        assert_eq!(combine_b(k).unwrap(), combine_b_expected(k));
    }
}

#[test]
fn json_round_trip() {
    let e = GammaExpr::new(
        2,
        RationalFunction::new(Poly::from_ints(&[0, -1, 2]), Poly::from_ints(&[1, 1])),
        HalfInteger::half(),
        FourPiExponent::new(rat(-2, 1), rat(-3, 1)),
    );
    let json = serde_json::to_string(&e).unwrap();
    let back: GammaExpr = serde_json::from_str(&json).unwrap();
    assert_eq!(back, e);
}
