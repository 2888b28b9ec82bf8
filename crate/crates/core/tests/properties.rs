use num_traits::Zero;
use proptest::prelude::*;

use vvgamma_core::combinatorics::{binomial_identity_sides, c_k_nu, triangle};
use vvgamma_core::exact_core::{int, rat, BigInt, FourPiExponent};
use vvgamma_core::gamma_engine::{det_derivative, gamma_rk_poly, monomial_poly, monomial_poly_via_derivative, DetDerivative};
use vvgamma_core::gl2_rep::{p_k_value, p_k_via_matrix, rho_matrix_int, so2_eigen_residual};
use vvgamma_core::{GammaExpr, GaussianRational, HalfInteger, Poly, RationalFunction};

fn small_poly() -> impl Strategy<Value = Poly> {
    prop::collection::vec(-6i64..6, 1..4).prop_map(|c| Poly::from_ints(&c))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn triangle_first_column_and_support(n in 1i64..150) {
        prop_assert_eq!(triangle(n, 1), BigInt::from(n * (n + 1) / 2));
        prop_assert!(triangle(n, (n + 1) / 2 + 1).is_zero());
        prop_assert_eq!(triangle(n, 0), BigInt::from(1));
    }

    #[test]
    fn binomial_identity_random(r in 0i64..80, frac in 0.0f64..1.0) {
        let mu = ((r / 2) as f64 * frac).floor() as i64;
        let (a, b) = binomial_identity_sides(r, mu);
        prop_assert_eq!(a, b);
    }

    #[test]
    fn representation_is_multiplicative(
        r in 0u32..5,
        g in prop::array::uniform4(-3i64..4),
        h in prop::array::uniform4(-3i64..4),
    ) {
        let (g, h) = ([[g[0], g[1]], [g[2], g[3]]], [[h[0], h[1]], [h[2], h[3]]]);
        let gh = [
            [g[0][0] * h[0][0] + g[0][1] * h[1][0], g[0][0] * h[0][1] + g[0][1] * h[1][1]],
            [g[1][0] * h[0][0] + g[1][1] * h[1][0], g[1][0] * h[0][1] + g[1][1] * h[1][1]],
        ];
        let lhs = rho_matrix_int(r, gh).matrix;
        let rhs = &rho_matrix_int(r, g).matrix * &rho_matrix_int(r, h).matrix;
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn weight_vectors_are_rotation_eigenvectors(r in 0u32..9, theta in -3.2f64..3.2) {
        prop_assert!(so2_eigen_residual(r, theta) < 1e-10);
    }

    #[test]
    fn p_k_two_routes(r in 0u32..5, k_frac in 0.0f64..1.0, y in prop::array::uniform3(-4i64..5)) {
        let k = ((r as f64 + 1.0) * k_frac).floor().min(r as f64) as u32;
        let gy = |v: i64| GaussianRational::real(int(v));
        let ym = [[gy(y[0]), gy(y[2])], [gy(y[2]), gy(y[1])]];
        for nu in 0..=r {
            prop_assert_eq!(p_k_value(r, k, nu, &ym), p_k_via_matrix(r, k, nu, &ym));
        }
    }

    #[test]
    fn c_k_is_symmetric_under_k_flip(r in 0i64..12, k_frac in 0.0f64..1.0) {
        let k = ((r as f64 + 1.0) * k_frac).floor().min(r as f64) as i64;
        for nu in 0..=r {
            let a = c_k_nu(r, k, nu);
            let b = c_k_nu(r, r - k, nu);
            prop_assert!(a == b || a == -b);
        }
    }

    #[test]
    fn gamma_rk_palindrome(r in 0u32..14) {
        for k in 0..=r {
            prop_assert_eq!(gamma_rk_poly(r, k), gamma_rk_poly(r, r - k));
        }
    }

    #[test]
    fn rebase_preserves_value(p in small_poly(), twice in 0i64..6, steps in 0i64..3) {
        prop_assume!(!p.is_zero());
        let e = GammaExpr::new(
            2,
            RationalFunction::new(p, Poly::one()),
            HalfInteger::from_twice(twice),
            FourPiExponent::new(rat(-2, 1), int(0)),
        );
        // rebasing only moves between shifts of the same parity
        let target = HalfInteger::from_twice(twice % 2 + 2 * steps);
        let moved = e.rebase(&target).unwrap();
        prop_assert_eq!(&moved, &e);
        let (a, b) = (e.eval_numeric(4.3).unwrap(), moved.eval_numeric(4.3).unwrap());
        prop_assert!((a - b).abs() <= 1e-10 * a.abs().max(1e-300));
    }

    #[test]
    fn addition_matches_evaluation(p in small_poly(), q in small_poly(), s in 2.2f64..6.0) {
        let a = GammaExpr::from_poly(2, p);
        let b = GammaExpr::from_poly(2, q).substitute_shift(&HalfInteger::from_int(1));
        let sum = a.add(&b).unwrap();
        let direct = a.eval_numeric(s).unwrap() + b.eval_numeric(s).unwrap();
        prop_assert!((sum.eval_numeric(s).unwrap() - direct).abs() <= 1e-9 * direct.abs().max(1.0));
    }

    #[test]
    fn det_derivative_is_homogeneous(
        n in (0u32..4, 0u32..4, 0u32..4),
        t in (1.0f64..2.0, 1.0f64..2.0, -0.5f64..0.5),
        lambda in 0.5f64..2.0,
        s in 0.5f64..3.0,
    ) {
        let d = det_derivative(n.0, n.1, n.2);
        let order = (n.0 + n.1 + n.2) as f64;
        let at = d.eval(t.0, t.1, t.2, s);
        let scaled = d.eval(lambda * t.0, lambda * t.1, lambda * t.2, s);
        let want = lambda.powf(-2.0 * s - order) * at;
        prop_assert!((scaled - want).abs() <= 1e-10 * want.abs().max(1e-300));
    }

    #[test]
    fn closed_form_matches_product_rule(n1 in 0u32..4, n2 in 0u32..4, n3 in 0u32..5) {
        prop_assert_eq!(det_derivative(n1, n2, n3), DetDerivative::by_product_rule(n1, n2, n3));
    }

    #[test]
    fn monomial_routes_agree(n1 in 0u32..4, n2 in 0u32..4, n3 in 0u32..5) {
        prop_assert_eq!(monomial_poly(n1, n2, n3), monomial_poly_via_derivative(n1, n2, n3));
    }
}
