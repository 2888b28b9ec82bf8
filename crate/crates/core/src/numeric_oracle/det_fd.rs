use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{OracleCase, OracleReport};
use crate::error::{Error, Result};
use crate::gamma_engine::det_derivative;

/// Weights of the central stencil `-p..=p` (unit spacing) for the
/// `order`-th derivative at 0, by Fornberg's recursion.
pub fn central_weights(order: usize, half_width: usize) -> Vec<f64> {
    let xs: Vec<f64> = (-(half_width as i64)..=half_width as i64).map(|x| x as f64).collect();
    let n = xs.len();
    assert!(order < n, "stencil too narrow for derivative order {order}");
    let mut c = vec![vec![0.0; order + 1]; n];
    c[0][0] = 1.0;
    let mut c1 = 1.0;
    let mut c4 = xs[0];
    for i in 1..n {
        let mn = i.min(order);
        let mut c2 = 1.0;
        let c5 = c4;
        c4 = xs[i];
        for j in 0..i {
            let c3 = xs[i] - xs[j];
            c2 *= c3;
            if j == i - 1 {
                for k in (1..=mn).rev() {
                    c[i][k] = c1 * (k as f64 * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
                }
                c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
            }
            for k in (1..=mn).rev() {
                c[j][k] = (c4 * c[j][k] - k as f64 * c[j][k - 1]) / c3;
            }
            c[j][0] = c4 * c[j][0] / c3;
        }
        c1 = c2;
    }
    c.into_iter().map(|row| row[order]).collect()
}

/// Central differences of accuracy order `2·extra + 2` in each direction,
/// step `step` times the smallest eigenvalue of `T`, refined once by
/// halving the step.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct DetFdScheme {
    pub extra: usize,
    pub step: f64,
}

impl Default for DetFdScheme {
    fn default() -> Self {
        DetFdScheme { extra: 5, step: 0.06 }
    }
}

/// A symmetric `T` (by its three entries) and a real `s`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct FdPoint {
    pub t11: f64,
    pub t22: f64,
    pub t12: f64,
    pub s: f64,
}

impl FdPoint {
    pub fn min_eigenvalue(&self) -> f64 {
        let mean = 0.5 * (self.t11 + self.t22);
        mean - (0.25 * (self.t11 - self.t22).powi(2) + self.t12 * self.t12).sqrt()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct DetFdEstimate {
    pub value: f64,
    pub coarse: f64,
    pub fine: f64,
    /// Rounding error bound of the fine-step sum.
    pub noise: f64,
}

/// Deterministic sample points: `T11, T22 ∈ [1, 2]`, `|T12| ∈ [0.2, 0.5]`,
/// `s ∈ [0.5, 3]`.
pub fn random_points(seed: u64, count: usize) -> Vec<FdPoint> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let t11 = rng.gen_range(1.0..2.0);
            let t22 = rng.gen_range(1.0..2.0);
            let t12 = rng.gen_range(0.2..0.5) * if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
            let s = rng.gen_range(0.5..3.0);
            FdPoint { t11, t22, t12, s }
        })
        .collect()
}

fn stencil(order: u32, extra: usize, h: f64) -> Vec<(f64, f64)> {
    if order == 0 {
        return vec![(0.0, 1.0)];
    }
    let p = (order as usize).div_ceil(2) + extra;
    let scale = h.powi(-(order as i32));
    central_weights(order as usize, p)
        .into_iter()
        .enumerate()
        .map(|(i, w)| ((i as f64 - p as f64) * h, w * scale))
        .collect()
}

/// Returns `(sum, noise)` for one step size. Values are taken relative to
/// `det(T)^{-s}` through `expm1`/`log1p`, so the stencil sum loses no
/// digits to the constant term.
fn tensor_sum(n: (u32, u32, u32), p: &FdPoint, extra: usize, h: f64) -> (f64, f64) {
    let det = p.t11 * p.t22 - p.t12 * p.t12;
    let (s1, s2, s3) = (stencil(n.0, extra, h), stencil(n.1, extra, h), stencil(n.2, extra, h));
    let mut sum = 0.0;
    let mut abs = 0.0;
    for &(d1, w1) in &s1 {
        for &(d2, w2) in &s2 {
            for &(d3, w3) in &s3 {
                let q = (p.t11 * d2 + d1 * p.t22 + d1 * d2 - 2.0 * p.t12 * d3 - d3 * d3) / det;
                let g = (-p.s * q.ln_1p()).exp_m1();
                let w = w1 * w2 * w3;
                sum += w * g;
                abs += (w * g).abs();
            }
        }
    }
    let base = det.powf(-p.s) * 0.5f64.powi(n.2 as i32);
    (sum * base, 4.0 * f64::EPSILON * abs * base)
}

/// `∂11^{n1} ∂22^{n2} ∂12^{n3} det(T)^{-s}` by finite differences, with
/// `∂12 = (1/2) ∂/∂T12` and one Richardson step.
pub fn det_derivative_fd(n: (u32, u32, u32), p: &FdPoint, scheme: &DetFdScheme) -> Result<DetFdEstimate> {
    if n == (0, 0, 0) {
        let v = (p.t11 * p.t22 - p.t12 * p.t12).powf(-p.s);
        return Ok(DetFdEstimate { value: v, coarse: v, fine: v, noise: 0.0 });
    }
    let h = scheme.step * p.min_eigenvalue();
    let (coarse, _) = tensor_sum(n, p, scheme.extra, h);
    let (fine, noise) = tensor_sum(n, p, scheme.extra, h / 2.0);
    let factor = 2f64.powi(2 * scheme.extra as i32 + 2) - 1.0;
    let value = fine + (fine - coarse) / factor;
    if noise > 1e-6 * value.abs() {
        return Err(Error::StepSizeError(format!(
            "order {n:?}, step {h}: rounding {noise:.2e} against value {value:.6e}"
        )));
    }
    Ok(DetFdEstimate { value, coarse, fine, noise })
}

/// Closed-form derivatives against finite differences for every order with
/// `n1 + n2 + n3 ≤ max_order`, at each point, to `1e-6` relative.
pub fn det_derivative_fd_check(max_order: u32, points: &[FdPoint], scheme: &DetFdScheme) -> Result<OracleReport> {
    let mut report = OracleReport::new("det-derivative finite differences");
    for n1 in 0..=max_order {
        for n2 in 0..=max_order - n1 {
            for n3 in 0..=max_order - n1 - n2 {
                let closed = det_derivative(n1, n2, n3);
                for (i, p) in points.iter().enumerate() {
                    let exact = closed.eval(p.t11, p.t22, p.t12, p.s);
                    let fd = det_derivative_fd((n1, n2, n3), p, scheme)?;
                    report.push(OracleCase::compare(format!("({n1},{n2},{n3}) point {i}"), exact, fd.value, 1e-6));
                }
            }
        }
    }
    Ok(report)
}
