//! Floating-point cross-checks of the exact results: Gauss–Laguerre
//! quadrature over positive definite 2×2 matrices in Weyl coordinates,
//! finite differences of `det(T)^{-s}`, and a Wirtinger finite-difference
//! application of the Maass shift operator.
//!
//! Nothing here feeds back into the exact modules.

use std::fmt;

use serde::Serialize;

use crate::report::Report;

mod det_fd;
mod laguerre;
mod maass;
mod weyl;

pub use det_fd::{central_weights, det_derivative_fd, det_derivative_fd_check, random_points, DetFdEstimate, DetFdScheme, FdPoint};
pub use laguerre::GaussLaguerre;
pub use maass::{maass_fd_check, maass_fd_value, maass_samples, MaassSample, MAASS_DEFAULT_STEP};
pub use weyl::{
    compare_all, integrate_gamma_numeric, integrate_gamma_scaled, multivariate_gamma3_check, scaling_law_check,
    weyl_detk_check, weyl_detk_numeric, NumericGamma,
};

/// Quadrature parameters shared by the Weyl-coordinate routines.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct QuadratureSpec {
    pub laguerre_order: usize,
    pub theta_points: usize,
    pub s_values: Vec<f64>,
    /// Tolerance for the generic (non-polynomial) regime and for the
    /// successive-order convergence warning.
    pub tol: f64,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        QuadratureSpec { laguerre_order: 80, theta_points: 64, s_values: vec![2.5, 3.5, 3.1], tol: 1e-6 }
    }
}

/// Tolerance for cases whose radial integrand is a polynomial, where the
/// quadrature is exact up to rounding.
pub const EXACT_REGIME_TOL: f64 = 1e-10;

/// Off-diagonal entries in the weight basis, relative to the largest diagonal one.
pub const DIAGONAL_TOL: f64 = 1e-9;

/// `|a - b| / max(|a|, |b|, 1e-300)`.
pub fn relative_error(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs()).max(1e-300)
}

/// Results at order `N` and `N/2` differ by more than the tolerance.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConvergenceWarning {
    pub case: String,
    pub order: usize,
    pub half_order: usize,
    pub delta: f64,
    pub tol: f64,
}

impl fmt::Display for ConvergenceWarning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: orders {} and {} differ by {:.3e} (tol {:.1e})",
            self.case, self.order, self.half_order, self.delta, self.tol
        )
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OracleCase {
    pub name: String,
    pub closed_form: f64,
    pub numeric: f64,
    pub rel_error: f64,
    pub tol: f64,
    pub passed: bool,
}

impl OracleCase {
    pub fn compare(name: impl Into<String>, closed_form: f64, numeric: f64, tol: f64) -> Self {
        let rel_error = relative_error(closed_form, numeric);
        Self::with_error(name, closed_form, numeric, rel_error, tol)
    }

    /// A case whose error is measured against some other scale, e.g. an
    /// off-diagonal entry against the largest diagonal one.
    pub fn with_error(name: impl Into<String>, closed_form: f64, numeric: f64, rel_error: f64, tol: f64) -> Self {
        OracleCase { name: name.into(), closed_form, numeric, rel_error, tol, passed: rel_error < tol }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct OracleReport {
    pub title: String,
    pub cases: Vec<OracleCase>,
    pub warnings: Vec<ConvergenceWarning>,
}

impl OracleReport {
    pub fn new(title: impl Into<String>) -> Self {
        OracleReport { title: title.into(), ..Default::default() }
    }

    pub fn push(&mut self, case: OracleCase) {
        self.cases.push(case);
    }

    pub fn extend(&mut self, other: OracleReport) {
        self.cases.extend(other.cases);
        self.warnings.extend(other.warnings);
    }

    pub fn passed(&self) -> bool {
        self.cases.iter().all(|c| c.passed)
    }

    pub fn worst_error(&self) -> f64 {
        self.cases.iter().map(|c| c.rel_error).fold(0.0, f64::max)
    }

    pub fn to_report(&self) -> Report {
        let mut report = Report::new(self.title.clone());
        for c in &self.cases {
            report.record(
                c.name.clone(),
                c.passed,
                format!("closed {:.15e} numeric {:.15e} rel {:.2e} tol {:.0e}", c.closed_form, c.numeric, c.rel_error, c.tol),
            );
        }
        report
    }
}

impl fmt::Display for OracleReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_report())?;
        for w in &self.warnings {
            writeln!(f, "warning: {w}")?;
        }
        Ok(())
    }
}
