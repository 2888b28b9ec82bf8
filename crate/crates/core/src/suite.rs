//! Named verification suites. The command-line `verify` subcommands and the
//! acceptance test run the same functions.

use std::time::{Duration, Instant};

use serde::Serialize;

use crate::combinatorics::{binomial_identity_check, verify_triangle_closed_forms};
use crate::error::Result;
use crate::exact_core::{rat, GammaExpr, Poly};
use crate::gamma_engine::{gamma_operator, gamma_rk_independence_check, rank2_identities, symmetric_matrix_form_check};
use crate::gl2_rep::HighestWeight;
use crate::numeric_oracle::{
    compare_all, det_derivative_fd_check, maass_fd_check, maass_samples, random_points, weyl_detk_check, ConvergenceWarning,
    DetFdScheme, OracleReport, QuadratureSpec, MAASS_DEFAULT_STEP,
};
use crate::report::Report;
use crate::sturm_phantom::{combine_b_numerator, phantom_limit, sturm_terms, sturm_terms_closed_form, theorem_verdict};

/// Fixed seed of the finite-difference sample points.
pub const DEFAULT_SEED: u64 = 20_240_501;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuiteOptions {
    pub quadrature: QuadratureSpec,
    pub r_max: u32,
    /// Gauss–Laguerre order of the ordered-region `det^k` integral; its
    /// integrand has a `(t1 + u)^{1/2}` branch at the origin for `k = 2`.
    pub detk_order: usize,
    pub maass_k_max: u32,
    pub maass_step: f64,
    pub seed: u64,
    pub fd_points: usize,
    pub fd_scheme: DetFdScheme,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions {
            quadrature: QuadratureSpec::default(),
            r_max: 4,
            detk_order: 128,
            maass_k_max: 3,
            maass_step: MAASS_DEFAULT_STEP,
            seed: DEFAULT_SEED,
            fd_points: 5,
            fd_scheme: DetFdScheme::default(),
        }
    }
}

/// A report plus any convergence warnings raised on the way.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct SuiteResult {
    pub report: Report,
    pub warnings: Vec<ConvergenceWarning>,
}

impl SuiteResult {
    pub fn passed(&self) -> bool {
        self.report.passed()
    }

    fn merge(&mut self, other: SuiteResult) {
        self.report.extend(other.report);
        self.warnings.extend(other.warnings);
    }
}

impl From<Report> for SuiteResult {
    fn from(report: Report) -> Self {
        SuiteResult { report, warnings: Vec::new() }
    }
}

impl From<OracleReport> for SuiteResult {
    fn from(o: OracleReport) -> Self {
        SuiteResult { report: o.to_report(), warnings: o.warnings }
    }
}

pub fn triangle_suite(n_max: u32) -> SuiteResult {
    verify_triangle_closed_forms(n_max).into()
}

pub fn binomial_suite(r_max: u32) -> SuiteResult {
    binomial_identity_check(r_max).into()
}

/// `Γ(ρ_(2,0) ⊗ det^s) = diag(s(s+1/2), s(s+3/2), s(s+1/2)) Γ₂(s)` and the
/// matrix-space form of the same integral.
pub fn symmetric_example_suite() -> SuiteResult {
    let mut report = Report::new("symmetric square example");
    let op = gamma_operator(HighestWeight { l1: 2, l2: 0 });
    let outer = Poly::from_roots(&[rat(0, 1), rat(-1, 2)]);
    let middle = Poly::from_roots(&[rat(0, 1), rat(-3, 2)]);
    let want = [outer.clone(), middle, outer].map(|p| GammaExpr::from_poly(2, p));
    for (k, (got, want)) in op.diag.iter().zip(&want).enumerate() {
        report.record(format!("diagonal entry k={k}"), got == want, format!("{got}"));
    }
    report.extend(symmetric_matrix_form_check());
    report.into()
}

/// The limit of `b(T, s)` at `s = 0` vanishes for `2 ≤ k ≤ k_max` and is
/// `-(4π)²/2` at `k = 1`; the numerator of the combined sum is `s² - s/2`.
pub fn phantom_suite(k_max: u32) -> Result<SuiteResult> {
    let (_, mut report) = theorem_verdict(k_max)?;
    let p = phantom_limit(1)?;
    report.record("k=1 limit is -(4pi)^2/2", p.display_coeff == rat(-1, 2) && p.four_pi_power == rat(2, 1), p.display_string());
    let target = Poly::from_coeffs(vec![rat(0, 1), rat(-1, 2), rat(1, 1)]);
    for k in 1..=k_max {
        let num = combine_b_numerator(k)?;
        report.record(format!("numerator k={k}"), num == target, format!("{num}"));
    }
    Ok(report.into())
}

pub fn sturm_suite(k_max: u32) -> Result<SuiteResult> {
    let mut report = Report::new(format!("Sturm terms by two routes up to k = {k_max}"));
    for k in 1..=k_max {
        let derived = sturm_terms(k)?;
        let closed = sturm_terms_closed_form(k);
        for (i, (a, b)) in derived.terms.iter().zip(&closed.terms).enumerate() {
            report.record(format!("k={k} term {}", i + 1), a == b, format!("{a}"));
        }
    }
    Ok(report.into())
}

pub fn nu_independence_suite(r_max: u32) -> SuiteResult {
    let mut report = Report::new(format!("nu-independence up to r = {r_max}"));
    for r in 0..=r_max {
        for k in 0..=r {
            report.extend(gamma_rk_independence_check(r, k));
        }
    }
    report.into()
}

pub fn oracle_suite(opts: &SuiteOptions) -> Result<SuiteResult> {
    Ok(compare_all(&opts.quadrature, opts.r_max)?.into())
}

pub fn detk_suite(opts: &SuiteOptions) -> Result<SuiteResult> {
    let spec = QuadratureSpec { laguerre_order: opts.detk_order, ..opts.quadrature.clone() };
    let mut out = SuiteResult::default();
    for k in 2..=4 {
        out.merge(weyl_detk_check(k, &spec)?.into());
    }
    out.report.title = "ordered-region det^k integrals".into();
    Ok(out)
}

pub fn maass_suite(opts: &SuiteOptions) -> Result<SuiteResult> {
    let mut out = SuiteResult::default();
    for k in 1..=opts.maass_k_max {
        for (i, sample) in maass_samples().iter().enumerate() {
            out.merge(maass_fd_check(k, sample, opts.maass_step, &format!("sample {i}"))?.into());
        }
    }
    out.report.title = format!("Maass shift finite differences up to k = {}", opts.maass_k_max);
    Ok(out)
}

pub fn det_fd_suite(opts: &SuiteOptions) -> Result<SuiteResult> {
    let points = random_points(opts.seed, opts.fd_points);
    Ok(det_derivative_fd_check(5, &points, &opts.fd_scheme)?.into())
}

/// Every exact identity: triangle numbers, the binomial identity, the
/// symmetric example, the dichotomy, the two Sturm routes, ν-independence
/// and the rank-two identities.
pub fn identities(opts: &SuiteOptions) -> Result<SuiteResult> {
    let mut out = triangle_suite(200);
    out.merge(binomial_suite(60));
    out.merge(symmetric_example_suite());
    out.merge(phantom_suite(20)?);
    out.merge(sturm_suite(10)?);
    out.merge(nu_independence_suite(5));
    out.merge(rank2_identities(opts.r_max.max(8)).into());
    out.report.title = "exact identities".into();
    Ok(out)
}

/// Quadrature, the `det^k` integral and the det-derivative finite differences.
pub fn oracle(opts: &SuiteOptions) -> Result<SuiteResult> {
    let mut out = oracle_suite(opts)?;
    out.merge(detk_suite(opts)?);
    out.merge(det_fd_suite(opts)?);
    out.report.title = "numeric oracle".into();
    Ok(out)
}

pub fn all(opts: &SuiteOptions) -> Result<SuiteResult> {
    let mut out = identities(opts)?;
    out.merge(oracle(opts)?);
    out.merge(maass_suite(opts)?);
    out.report.title = "all suites".into();
    Ok(out)
}

/// One acceptance criterion: a suite and its time budget.
pub struct Criterion {
    pub id: u32,
    pub title: &'static str,
    pub budget: Duration,
    run: fn(&SuiteOptions) -> Result<SuiteResult>,
}

#[derive(Clone, Debug)]
pub struct CriterionOutcome {
    pub id: u32,
    pub title: &'static str,
    pub budget: Duration,
    pub elapsed: Duration,
    pub result: Result<SuiteResult>,
}

impl CriterionOutcome {
    pub fn passed(&self) -> bool {
        self.elapsed <= self.budget && matches!(&self.result, Ok(r) if r.passed())
    }
}

impl Criterion {
    pub fn run(&self, opts: &SuiteOptions) -> CriterionOutcome {
        let start = Instant::now();
        let result = (self.run)(opts);
        CriterionOutcome { id: self.id, title: self.title, budget: self.budget, elapsed: start.elapsed(), result }
    }
}

pub fn criteria() -> Vec<Criterion> {
    let secs = Duration::from_secs;
    vec![
        Criterion { id: 1, title: "triangle numbers, n <= 200", budget: secs(1), run: |_| Ok(triangle_suite(200)) },
        Criterion { id: 2, title: "binomial identity, r <= 60", budget: secs(5), run: |_| Ok(binomial_suite(60)) },
        Criterion { id: 3, title: "symmetric square example", budget: secs(1), run: |_| Ok(symmetric_example_suite()) },
        Criterion { id: 4, title: "phantom term dichotomy, k <= 20", budget: secs(2), run: |_| phantom_suite(20) },
        Criterion { id: 5, title: "Sturm terms by two routes, k <= 10", budget: secs(2), run: |_| sturm_suite(10) },
        Criterion { id: 6, title: "quadrature oracle, r <= 4", budget: secs(60), run: oracle_suite },
        Criterion { id: 7, title: "ordered-region det^k integral, k = 2, 3, 4", budget: secs(5), run: detk_suite },
        Criterion { id: 8, title: "Maass shift finite differences, k <= 3", budget: secs(10), run: maass_suite },
        Criterion { id: 9, title: "nu-independence, r <= 5", budget: secs(5), run: |_| Ok(nu_independence_suite(5)) },
        Criterion { id: 10, title: "det-derivative finite differences, order <= 5", budget: secs(5), run: det_fd_suite },
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_suites_pass() {
        assert!(symmetric_example_suite().passed());
        assert!(phantom_suite(4).unwrap().passed());
        assert!(sturm_suite(3).unwrap().passed());
        assert!(nu_independence_suite(3).passed());
    }

    #[test]
    fn ten_criteria() {
        let ids: Vec<u32> = criteria().iter().map(|c| c.id).collect();
        assert_eq!(ids, (1..=10).collect::<Vec<_>>());
    }
}
