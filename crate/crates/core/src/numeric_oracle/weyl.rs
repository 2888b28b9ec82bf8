use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use super::{ConvergenceWarning, GaussLaguerre, OracleCase, OracleReport, QuadratureSpec, DIAGONAL_TOL, EXACT_REGIME_TOL};
use crate::error::{Error, Result};
use crate::exact_core::special::multivariate_gamma;
use crate::gamma_engine::{gamma_alternating, gamma_operator};
use crate::gl2_rep::{rho_entries, weight_basis, HighestWeight};

type Matrix = Vec<Vec<f64>>;

/// `∫ ρ(Y) det(Y)^{s0} e^{-c·tr Y} dY_inv` by quadrature, in the monomial basis.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NumericGamma {
    pub l1: i64,
    pub l2: i64,
    pub s0: f64,
    pub trace_scale: f64,
    pub matrix: Matrix,
    /// Factor turning the raw Weyl-coordinate sum into the invariant
    /// integral, fixed by the scalar integral `Γ₂(s0 + l2)`.
    pub calibration: f64,
    /// Largest entry change between orders `N` and `N/2`, relative to the largest entry.
    pub delta: f64,
    pub warning: Option<ConvergenceWarning>,
}

/// Weighted sums over `(t2, u)` of `t1^σ · t1^{r-ν} t2^ν` with `t1 = t2 + u`:
/// the diagonal of the radial part of `ρ_r(diag(t1, t2))`. Entry `r + 1` is
/// the scalar sum `Σ t1^σ`.
fn radial_sums(r: u32, sigma: f64, c: f64, order: usize) -> Vec<f64> {
    let gt = GaussLaguerre::new(order, sigma);
    let gu = GaussLaguerre::new(order, 1.0);
    let n = r as usize + 1;
    let mut sums = vec![0.0; n + 1];
    for (&x, &wx) in gt.nodes.iter().zip(&gt.weights) {
        let t2 = x / (2.0 * c);
        for (&y, &wy) in gu.nodes.iter().zip(&gu.weights) {
            let u = y / c;
            let t1 = t2 + u;
            let base = wx * wy * t1.powf(sigma);
            for (nu, s) in sums.iter_mut().take(n).enumerate() {
                *s += base * t1.powi((n - 1 - nu) as i32) * t2.powi(nu as i32);
            }
            sums[n] += base;
        }
    }
    let factor = (2.0 * c).powf(-sigma - 1.0) * c.powi(-2);
    sums.iter().map(|s| s * factor).collect()
}

/// Raw Weyl-coordinate sum `Σ_θ (π/M) ρ(k_θ) ρ(D) ρ(k_{-θ})` and the
/// matching scalar sum.
fn raw_matrix(r: u32, sigma: f64, c: f64, order: usize, theta_points: usize) -> (Matrix, f64) {
    let sums = radial_sums(r, sigma, c, order);
    let n = r as usize + 1;
    let w = PI / theta_points as f64;
    let slices: Vec<Matrix> = (0..theta_points)
        .into_par_iter()
        .map(|j| {
            let (s, co) = (PI * j as f64 / theta_points as f64).sin_cos();
            let k = rho_entries(r, &[[co, -s], [s, co]]);
            let k_inv = rho_entries(r, &[[co, s], [-s, co]]);
            (0..n)
                .map(|a| (0..n).map(|b| (0..n).map(|m| k[a][m] * sums[m] * k_inv[m][b]).sum::<f64>() * w).collect())
                .collect()
        })
        .collect();
    let mut total = vec![vec![0.0; n]; n];
    for slice in &slices {
        for a in 0..n {
            for b in 0..n {
                total[a][b] += slice[a][b];
            }
        }
    }
    (total, PI * sums[n])
}

fn calibrated(r: u32, sigma: f64, s_total: f64, c: f64, order: usize, theta_points: usize) -> Result<(Matrix, f64)> {
    let (m, _) = raw_matrix(r, sigma, c, order, theta_points);
    let (_, scalar) = raw_matrix(0, sigma, 1.0, order, theta_points);
    let target = multivariate_gamma(2, s_total).ok_or_else(|| Error::PoleError(format!("Gamma_2({s_total})")))?;
    let k = target / scalar;
    Ok((m.into_iter().map(|row| row.into_iter().map(|v| v * k).collect()).collect(), k))
}

fn max_abs(m: &Matrix) -> f64 {
    m.iter().flatten().fold(0.0, |acc, v| acc.max(v.abs()))
}

/// As [`integrate_gamma_numeric`] with `e^{-c·tr Y}` in place of `e^{-tr Y}`.
/// The calibration is always taken at `c = 1`.
pub fn integrate_gamma_scaled(l: HighestWeight, s0: f64, c: f64, spec: &QuadratureSpec) -> Result<NumericGamma> {
    let s_total = s0 + l.l2 as f64;
    if s_total <= 0.5 {
        return Err(Error::DomainError(format!("integral diverges unless s0 + l2 > 1/2, got {s_total}")));
    }
    if c <= 0.0 {
        return Err(Error::DomainError(format!("trace scale must be positive, got {c}")));
    }
    let r = l.r();
    let sigma = s_total - 1.5;
    let order = spec.laguerre_order.max(1);
    let (matrix, calibration) = calibrated(r, sigma, s_total, c, order, spec.theta_points)?;
    let half_order = (order / 2).max(1);
    let (half, _) = calibrated(r, sigma, s_total, c, half_order, spec.theta_points)?;
    let diff = matrix
        .iter()
        .flatten()
        .zip(half.iter().flatten())
        .fold(0.0, |acc: f64, (a, b)| acc.max((a - b).abs()));
    let delta = diff / max_abs(&matrix).max(1e-300);
    let warning = (delta > spec.tol).then(|| ConvergenceWarning {
        case: format!("l=({},{}), s0={s0}", l.l1, l.l2),
        order,
        half_order,
        delta,
        tol: spec.tol,
    });
    Ok(NumericGamma { l1: l.l1, l2: l.l2, s0, trace_scale: c, matrix, calibration, delta, warning })
}

/// `∫ ρ(Y) det(Y)^{s0} e^{-tr Y} dY_inv` over positive definite `Y`, with
/// `Y = k_θ diag(t1, t2) k_θ'`, `t1 = t2 + u`, Gauss–Laguerre in `t2`
/// (weight `t2^σ e^{-2 t2}`) and `u` (weight `u e^{-u}`), and the trapezoid
/// rule in `θ ∈ [0, π)`.
pub fn integrate_gamma_numeric(l: HighestWeight, s0: f64, spec: &QuadratureSpec) -> Result<NumericGamma> {
    integrate_gamma_scaled(l, s0, 1.0, spec)
}

fn complex_mul(a: &[Vec<Complex64>], b: &[Vec<Complex64>]) -> Vec<Vec<Complex64>> {
    let n = a.len();
    (0..n).map(|i| (0..n).map(|j| (0..n).map(|m| a[i][m] * b[m][j]).sum()).collect()).collect()
}

impl NumericGamma {
    pub fn weight(&self) -> HighestWeight {
        HighestWeight { l1: self.l1, l2: self.l2 }
    }

    /// `W^{-1} G W` with the columns of `W` the weight vectors `V_k`.
    pub fn in_weight_basis(&self) -> Vec<Vec<Complex64>> {
        let wb = weight_basis(self.weight().r());
        let n = self.matrix.len();
        let to_rows = |flat: Vec<Complex64>| flat.chunks(n).map(|c| c.to_vec()).collect::<Vec<_>>();
        let w = to_rows(wb.columns.to_complex());
        let w_inv = to_rows(wb.inverse().to_complex());
        let g: Vec<Vec<Complex64>> =
            self.matrix.iter().map(|row| row.iter().map(|&v| Complex64::new(v, 0.0)).collect()).collect();
        complex_mul(&complex_mul(&w_inv, &g), &w)
    }

    /// Compares the weight-basis matrix with the closed form scaled by
    /// `c^{-(r + 2(s0 + l2))}`: one case per diagonal entry plus one for the
    /// largest off-diagonal or imaginary part.
    fn compare_with_closed_form(&self, label: &str, tol: f64) -> Result<Vec<OracleCase>> {
        let l = self.weight();
        let op = gamma_operator(l);
        let scale = self.trace_scale.powf(-(l.r() as f64 + 2.0 * (self.s0 + l.l2 as f64)));
        let m = self.in_weight_basis();
        let n = m.len();
        let max_diag = (0..n).fold(0.0, |acc: f64, k| acc.max(m[k][k].re.abs()));
        let mut cases = Vec::with_capacity(n + 1);
        let mut stray: f64 = 0.0;
        for a in 0..n {
            for b in 0..n {
                stray = stray.max(if a == b { m[a][b].im.abs() } else { m[a][b].norm() });
            }
        }
        for (k, expr) in op.diag.iter().enumerate() {
            let closed = expr.eval_numeric(self.s0)? * scale;
            cases.push(OracleCase::compare(format!("{label} k={k}"), closed, m[k][k].re, tol));
        }
        cases.push(OracleCase::with_error(
            format!("{label} diagonal"),
            0.0,
            stray,
            stray / max_diag.max(1e-300),
            DIAGONAL_TOL,
        ));
        Ok(cases)
    }
}

/// True when `s0 + l2 - 3/2` is a nonnegative integer, so the radial
/// integrand is a polynomial and Gauss–Laguerre is exact.
fn exact_regime(s_total: f64) -> bool {
    let sigma = s_total - 1.5;
    sigma >= 0.0 && sigma.fract() == 0.0
}

fn weight_cases(report: &mut OracleReport, l: HighestWeight, s0: f64, c: f64, spec: &QuadratureSpec, exact_tol: f64) -> Result<()> {
    let ng = integrate_gamma_scaled(l, s0, c, spec)?;
    let tol = if exact_regime(s0 + l.l2 as f64) { exact_tol } else { spec.tol };
    let label = if c == 1.0 {
        format!("l=({},{}) s0={s0}", l.l1, l.l2)
    } else {
        format!("l=({},{}) s0={s0} c={c:.6}", l.l1, l.l2)
    };
    for case in ng.compare_with_closed_form(&label, tol)? {
        report.push(case);
    }
    if let Some(w) = ng.warning {
        report.warnings.push(w);
    }
    Ok(())
}

/// Quadrature against the closed form with `e^{-4π tr Y}`, which scales the
/// result by `(4π)^{-(r + 2(s0 + l2))}`.
pub fn scaling_law_check(spec: &QuadratureSpec, r_max: u32) -> Result<OracleReport> {
    let mut report = OracleReport::new("scaling law at c = 4pi");
    for r in 0..=r_max {
        for &s0 in &spec.s_values {
            weight_cases(&mut report, HighestWeight { l1: r as i64, l2: 0 }, s0, 4.0 * PI, spec, 1e-9)?;
        }
    }
    Ok(report)
}

/// `Γ₃(s) = π^{3/2} Γ(s) Γ(s - 1/2) Γ(s - 1)` against the rank-three
/// alternating-power formula, for `q = 1, 2, 3`.
pub fn multivariate_gamma3_check(s_values: &[f64]) -> Result<OracleReport> {
    let mut report = OracleReport::new("rank three alternating powers");
    for q in 1..=3u32 {
        let expr = gamma_alternating(3, q)?;
        for &s in s_values.iter().filter(|&&s| s > 1.0) {
            let prefix: f64 = (0..q).map(|j| s - j as f64 / 2.0).product();
            let direct =
                prefix * PI.powf(1.5) * libm::tgamma(s) * libm::tgamma(s - 0.5) * libm::tgamma(s - 1.0);
            report.push(OracleCase::compare(format!("q={q} s={s}"), direct, expr.eval_numeric(s)?, 1e-12));
        }
    }
    Ok(report)
}

/// Every `(r, k, s0)` weight-basis entry for `l = (r, 0)`, the twisted
/// weights `(r+1, 1)` for `r ≤ 2`, the scaling law and the rank-three
/// scalar formula.
pub fn compare_all(spec: &QuadratureSpec, r_max: u32) -> Result<OracleReport> {
    let mut report = OracleReport::new("numeric oracle");
    for r in 0..=r_max {
        for &s0 in &spec.s_values {
            weight_cases(&mut report, HighestWeight { l1: r as i64, l2: 0 }, s0, 1.0, spec, EXACT_REGIME_TOL)?;
        }
    }
    for r in 0..=r_max.min(2) {
        for &s0 in &spec.s_values {
            weight_cases(&mut report, HighestWeight { l1: r as i64 + 1, l2: 1 }, s0, 1.0, spec, EXACT_REGIME_TOL)?;
        }
    }
    report.extend(scaling_law_check(spec, r_max.min(2))?);
    report.extend(multivariate_gamma3_check(&spec.s_values)?);
    Ok(report)
}

/// `∫_{t2 > t1 > 0} (t1 t2)^{k-3/2} (t1 - t2) e^{-t1-t2} dt1 dt2`, with
/// `t2 = t1 + u`.
pub fn weyl_detk_numeric(k: u32, order: usize) -> f64 {
    let sigma = k as f64 - 1.5;
    let gt = GaussLaguerre::new(order, sigma);
    let gu = GaussLaguerre::new(order, 1.0);
    let mut acc = 0.0;
    for (&x, &wx) in gt.nodes.iter().zip(&gt.weights) {
        let t1 = x / 2.0;
        for (&u, &wu) in gu.nodes.iter().zip(&gu.weights) {
            acc += wx * wu * (t1 + u).powf(sigma);
        }
    }
    -acc * 2f64.powf(-sigma - 1.0)
}

/// The ordered-region integral against `-Γ(k)Γ(k - 1/2)/√π`, to `1e-8`.
pub fn weyl_detk_check(k: u32, spec: &QuadratureSpec) -> Result<OracleReport> {
    if k < 2 {
        return Err(Error::DomainError(format!("det^k check needs k >= 2, got {k}")));
    }
    let mut report = OracleReport::new(format!("ordered-region det^{k} integral"));
    let order = spec.laguerre_order.max(1);
    let closed = -libm::tgamma(k as f64) * libm::tgamma(k as f64 - 0.5) / PI.sqrt();
    let numeric = weyl_detk_numeric(k, order);
    let half_order = (order / 2).max(1);
    let delta = super::relative_error(numeric, weyl_detk_numeric(k, half_order));
    if delta > spec.tol {
        report.warnings.push(ConvergenceWarning { case: format!("det^{k}"), order, half_order, delta, tol: spec.tol });
    }
    report.push(OracleCase::compare(format!("k={k}"), closed, numeric, 1e-8));
    Ok(report)
}
