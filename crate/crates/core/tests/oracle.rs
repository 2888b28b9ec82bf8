use std::f64::consts::PI;

use proptest::prelude::*;

use vvgamma_core::gl2_rep::HighestWeight;
use vvgamma_core::numeric_oracle::{
    compare_all, det_derivative_fd_check, integrate_gamma_numeric, maass_fd_check, maass_fd_value, maass_samples,
    random_points, relative_error, scaling_law_check, weyl_detk_check, weyl_detk_numeric, DetFdScheme, QuadratureSpec,
    MAASS_DEFAULT_STEP,
};
use vvgamma_core::Error;

fn max_rel_change(a: &[Vec<f64>], b: &[Vec<f64>]) -> f64 {
    let scale = a.iter().flatten().fold(0.0f64, |m, v| m.max(v.abs()));
    a.iter().flatten().zip(b.iter().flatten()).fold(0.0f64, |m, (x, y)| m.max((x - y).abs())) / scale
}

fn weight(r: u32) -> HighestWeight {
    HighestWeight::new(r as i64, 0).unwrap()
}

#[test]
fn defaults_pass_without_warnings() {
    let report = compare_all(&QuadratureSpec::default(), 4).unwrap();
    assert!(report.passed(), "{report}");
    assert!(report.warnings.is_empty(), "{report}");
}

#[test]
fn scalar_case_is_calibration_for_every_s0() {
    let spec = QuadratureSpec::default();
    for &s0 in &spec.s_values {
        let ng = integrate_gamma_numeric(weight(0), s0, &spec).unwrap();
        let want = PI.sqrt() * libm::tgamma(s0) * libm::tgamma(s0 - 0.5);
        assert!(relative_error(ng.matrix[0][0], want) < 1e-12, "s0={s0}");
    }
}

#[test]
fn doubling_order_in_exact_regime() {
    let base = QuadratureSpec::default();
    let doubled = QuadratureSpec { laguerre_order: 2 * base.laguerre_order, ..base.clone() };
    for r in 0..=4 {
        for s0 in [2.5, 3.5] {
            let a = integrate_gamma_numeric(weight(r), s0, &base).unwrap();
            let b = integrate_gamma_numeric(weight(r), s0, &doubled).unwrap();
            let d = max_rel_change(&a.matrix, &b.matrix);
            assert!(d < 1e-12, "r={r} s0={s0}: {d:e}");
        }
    }
}

#[test]
fn doubling_theta_points() {
    let base = QuadratureSpec::default();
    let doubled = QuadratureSpec { theta_points: 2 * base.theta_points, ..base.clone() };
    for r in [1, 3, 4] {
        let a = integrate_gamma_numeric(weight(r), 3.1, &base).unwrap();
        let b = integrate_gamma_numeric(weight(r), 3.1, &doubled).unwrap();
        let d = max_rel_change(&a.matrix, &b.matrix);
        assert!(d < 1e-12, "r={r}: {d:e}");
    }
}

#[test]
fn twisted_standard_at_two() {
    // st ⊗ det at s = 2 is the standard representation at s = 3
    let spec = QuadratureSpec::default();
    let a = integrate_gamma_numeric(HighestWeight::new(2, 1).unwrap(), 2.0, &spec).unwrap();
    let b = integrate_gamma_numeric(weight(1), 3.0, &spec).unwrap();
    assert!(max_rel_change(&a.matrix, &b.matrix) < 1e-12);
}

#[test]
fn under_resolved_quadrature_warns() {
    let spec = QuadratureSpec { laguerre_order: 4, ..QuadratureSpec::default() };
    let report = compare_all(&QuadratureSpec { s_values: vec![3.1], ..spec }, 4).unwrap();
    assert!(!report.warnings.is_empty());
}

#[test]
fn bit_identical_across_thread_counts() {
    let spec = QuadratureSpec::default();
    let run = |threads| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap()
            .install(|| integrate_gamma_numeric(weight(4), 3.1, &spec).unwrap().matrix)
    };
    let one = run(1);
    let many = run(4);
    for (a, b) in one.iter().flatten().zip(many.iter().flatten()) {
        assert_eq!(a.to_bits(), b.to_bits());
    }
}

#[test]
fn scaling_law_at_four_pi() {
    let report = scaling_law_check(&QuadratureSpec::default(), 3).unwrap();
    assert!(report.passed(), "{report}");
}

#[test]
fn detk_reference_values() {
    assert!((weyl_detk_numeric(2, 128) + 0.5).abs() < 1e-8 * 0.5);
    assert!((weyl_detk_numeric(3, 128) + 1.5).abs() < 1e-8 * 1.5);
    let spec = QuadratureSpec { laguerre_order: 128, ..QuadratureSpec::default() };
    for k in 2..=4 {
        assert!(weyl_detk_check(k, &spec).unwrap().passed());
    }
    assert!(matches!(weyl_detk_check(1, &spec), Err(Error::DomainError(_))));
}

#[test]
fn maass_identity_point() {
    // k = 1, T = 1, Z = i·1: (1 - 8π + 16π²) e^{-4π} · 1, the exponential divided out
    let v = maass_fd_value(1, &maass_samples()[0], MAASS_DEFAULT_STEP).unwrap();
    let want = 1.0 - 8.0 * PI + 16.0 * PI * PI;
    assert!((v[0][0].re - want).abs() < 1e-5 * want);
    assert!((v[1][1].re - want).abs() < 1e-5 * want);
    assert!(v[0][1].norm() < 1e-5 * want);
}

#[test]
fn maass_larger_k() {
    for k in 4..=6 {
        for (i, s) in maass_samples().iter().enumerate() {
            let report = maass_fd_check(k, s, MAASS_DEFAULT_STEP, &format!("sample {i}")).unwrap();
            assert!(report.passed(), "{report}");
        }
    }
}

#[test]
fn maass_noise_floor() {
    assert!(matches!(maass_fd_value(2, &maass_samples()[2], 1e-6), Err(Error::StepSizeError(_))));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn det_fd_any_seed(seed in any::<u64>()) {
        let report = det_derivative_fd_check(5, &random_points(seed, 1), &DetFdScheme::default()).unwrap();
        prop_assert!(report.passed(), "{}", report);
    }
}
