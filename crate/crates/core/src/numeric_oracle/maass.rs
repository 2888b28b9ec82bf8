use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use super::{OracleCase, OracleReport};
use crate::error::{Error, Result};
use crate::sturm_phantom::maass_terms;

type M2 = [[f64; 2]; 2];
type C2 = [[Complex64; 2]; 2];

pub const MAASS_DEFAULT_STEP: f64 = 1e-3;

const TOL: f64 = 1e-5;

/// A Fourier index `T` and a point `Z = X + iY` of the Siegel upper half-space.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct MaassSample {
    pub t: M2,
    pub x: M2,
    pub y: M2,
}

pub fn maass_samples() -> Vec<MaassSample> {
    vec![
        MaassSample { t: [[1.0, 0.0], [0.0, 1.0]], x: [[0.0, 0.0], [0.0, 0.0]], y: [[1.0, 0.0], [0.0, 1.0]] },
        MaassSample { t: [[1.0, 0.0], [0.0, 2.0]], x: [[0.3, 0.1], [0.1, 0.3]], y: [[1.1, 0.2], [0.2, 1.1]] },
        MaassSample { t: [[2.0, 0.5], [0.5, 1.0]], x: [[0.1, -0.2], [-0.2, 0.4]], y: [[0.9, 0.3], [0.3, 1.5]] },
    ]
}

fn det(a: &M2) -> f64 {
    a[0][0] * a[1][1] - a[0][1] * a[1][0]
}

fn inv(a: &M2) -> M2 {
    let d = det(a);
    [[a[1][1] / d, -a[0][1] / d], [-a[1][0] / d, a[0][0] / d]]
}

fn mul(a: &M2, b: &M2) -> M2 {
    let mut c = [[0.0; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            c[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    c
}

/// Real coordinates `(X11, X22, X12, Y11, Y22, Y12)`.
type Coords = [f64; 6];

fn coords(sample: &MaassSample) -> Coords {
    let (x, y) = (&sample.x, &sample.y);
    [x[0][0], x[1][1], x[0][1], y[0][0], y[1][1], y[0][1]]
}

/// `F(Z) = det(Y)^{k-1/2} · Y · e^{2πi tr(TZ)}`.
fn f_value(k: u32, t: &M2, c: &Coords) -> C2 {
    let y = [[c[3], c[5]], [c[5], c[4]]];
    let z = |re: f64, im: f64| Complex64::new(re, im);
    let tr = t[0][0] * z(c[0], c[3]) + t[1][1] * z(c[1], c[4]) + 2.0 * t[0][1] * z(c[2], c[5]);
    let e = (Complex64::new(0.0, 2.0 * PI) * tr).exp() * det(&y).powf(k as f64 - 0.5);
    y.map(|row| row.map(|v| e * v))
}

const D1: [(i32, f64); 4] = [(-2, 1.0 / 12.0), (-1, -8.0 / 12.0), (1, 8.0 / 12.0), (2, -1.0 / 12.0)];
const D2: [(i32, f64); 5] = [(-2, -1.0 / 12.0), (-1, 16.0 / 12.0), (0, -30.0 / 12.0), (1, 16.0 / 12.0), (2, -1.0 / 12.0)];

/// Fourth-order `∂_a ∂_b F` in the real coordinates, and the sum of
/// `|weight · F|` over the stencil.
fn second_partial(k: u32, t: &M2, c0: &Coords, a: usize, b: usize, h: f64) -> (C2, f64) {
    let mut acc = [[Complex64::new(0.0, 0.0); 2]; 2];
    let mut abs = 0.0;
    let mut add = |c: Coords, w: f64| {
        let f = f_value(k, t, &c);
        for i in 0..2 {
            for j in 0..2 {
                acc[i][j] += f[i][j] * w;
                abs += (f[i][j] * w).norm();
            }
        }
    };
    if a == b {
        for &(o, w) in &D2 {
            let mut c = *c0;
            c[a] += o as f64 * h;
            add(c, w / (h * h));
        }
    } else {
        for &(oa, wa) in &D1 {
            for &(ob, wb) in &D1 {
                let mut c = *c0;
                c[a] += oa as f64 * h;
                c[b] += ob as f64 * h;
                add(c, wa * wb / (h * h));
            }
        }
    }
    (acc, abs)
}

/// `det(∂_Z) F` with Wirtinger derivatives `∂/∂Z_ij = (1+δ_ij)/2 · (1/2)(∂/∂X_ij - i ∂/∂Y_ij)`.
fn det_wirtinger(k: u32, t: &M2, c0: &Coords, h: f64) -> (C2, f64) {
    let i = Complex64::new(0.0, 1.0);
    // D_p D_q F = c_p c_q (∂xp∂xq - i ∂xp∂yq - i ∂yp∂xq - ∂yp∂yq) F,
    // with x-coordinate index p and y-coordinate index p + 3
    let pair = |p: usize, q: usize, scale: f64| -> (C2, f64) {
        let parts = [
            (p, q, Complex64::new(1.0, 0.0)),
            (p, q + 3, -i),
            (p + 3, q, -i),
            (p + 3, q + 3, Complex64::new(-1.0, 0.0)),
        ];
        let mut acc = [[Complex64::new(0.0, 0.0); 2]; 2];
        let mut noise = 0.0;
        for (a, b, w) in parts {
            let (d, abs) = second_partial(k, t, c0, a, b, h);
            noise += abs * scale;
            for r in 0..2 {
                for s in 0..2 {
                    acc[r][s] += d[r][s] * w * scale;
                }
            }
        }
        (acc, noise)
    };
    let (d1122, n1) = pair(0, 1, 0.25);
    let (d1212, n2) = pair(2, 2, 1.0 / 16.0);
    let mut out = d1122;
    for r in 0..2 {
        for s in 0..2 {
            out[r][s] -= d1212[r][s];
        }
    }
    (out, n1 + n2)
}

/// `(2i)² det(Y)^{-(k-1/2)} Y^{-1} det(∂_Z) F` divided by `e^{2πi tr(TZ)}`,
/// by fourth-order differences with one Richardson step.
pub fn maass_fd_value(k: u32, sample: &MaassSample, h: f64) -> Result<C2> {
    if !(1e-6..=1e-3).contains(&h) {
        return Err(Error::DomainError(format!("step must lie in [1e-6, 1e-3], got {h}")));
    }
    if det(&sample.y) <= 0.0 || sample.y[0][0] <= 0.0 {
        return Err(Error::DomainError("Im Z must be positive definite".into()));
    }
    let c0 = coords(sample);
    let (coarse, _) = det_wirtinger(k, &sample.t, &c0, h);
    let (fine, noise) = det_wirtinger(k, &sample.t, &c0, h / 2.0);
    let mut d = [[Complex64::new(0.0, 0.0); 2]; 2];
    for r in 0..2 {
        for s in 0..2 {
            d[r][s] = fine[r][s] + (fine[r][s] - coarse[r][s]) / 15.0;
        }
    }
    let scale = d.iter().flatten().fold(0.0, |acc: f64, v| acc.max(v.norm()));
    if 8.0 * f64::EPSILON * noise > 1e-6 * scale {
        return Err(Error::StepSizeError(format!(
            "step {h}: rounding {:.2e} against derivative {scale:.2e}",
            8.0 * f64::EPSILON * noise
        )));
    }
    let y = &sample.y;
    let y_inv = inv(y);
    let f0 = f_value(k, &sample.t, &c0);
    // f0 = det(Y)^{k-1/2} Y e, so the exponential is recovered from f0 Y^{-1}
    let e = (0..2).map(|m| f0[0][m] * y_inv[m][0]).sum::<Complex64>() / det(y).powf(k as f64 - 0.5);
    let pre = Complex64::new(-4.0, 0.0) * det(y).powf(-(k as f64 - 0.5)) / e;
    let mut out = [[Complex64::new(0.0, 0.0); 2]; 2];
    for r in 0..2 {
        for s in 0..2 {
            out[r][s] = pre * (y_inv[r][0] * d[0][s] + y_inv[r][1] * d[1][s]);
        }
    }
    Ok(out)
}

/// The four-term Maass-shift formula against the finite-difference operator
/// at one sample, entrywise relative to the largest closed-form entry, plus
/// the check that the non-scalar remainder is a multiple of `(TY)^{-1}`.
pub fn maass_fd_check(k: u32, sample: &MaassSample, h: f64, label: &str) -> Result<OracleReport> {
    let fd = maass_fd_value(k, sample, h)?;
    let terms = maass_terms(k);
    let closed = terms.evaluate(&sample.t, &sample.y);
    let scale = closed.iter().flatten().fold(0.0, |acc: f64, v| acc.max(v.abs()));
    let mut report = OracleReport::new(format!("Maass shift k={k} {label}"));
    for r in 0..2 {
        for s in 0..2 {
            let err = (fd[r][s].re - closed[r][s]).abs() / scale.max(1e-300);
            report.push(OracleCase::with_error(format!("k={k} {label} entry {r}{s}"), closed[r][s], fd[r][s].re, err, TOL));
        }
    }
    let imag = fd.iter().flatten().fold(0.0, |acc: f64, v| acc.max(v.im.abs()));
    report.push(OracleCase::with_error(format!("k={k} {label} imaginary part"), 0.0, imag, imag / scale.max(1e-300), TOL));

    let scalar = terms.scalar_part(&sample.t, &sample.y);
    let rest: M2 = [[fd[0][0].re - scalar, fd[0][1].re], [fd[1][0].re, fd[1][1].re - scalar]];
    let shape = inv(&mul(&sample.t, &sample.y));
    let dot = |a: &M2, b: &M2| (0..2).flat_map(|i| (0..2).map(move |j| (i, j))).map(|(i, j)| a[i][j] * b[i][j]).sum::<f64>();
    let lambda = dot(&rest, &shape) / dot(&shape, &shape);
    let resid: f64 = (0..2)
        .flat_map(|i| (0..2).map(move |j| (i, j)))
        .map(|(i, j)| (rest[i][j] - lambda * shape[i][j]).powi(2))
        .sum::<f64>()
        .sqrt();
    let norm = dot(&rest, &rest).sqrt();
    report.push(OracleCase::with_error(
        format!("k={k} {label} (TY)^-1 shape"),
        0.0,
        resid,
        resid / norm.max(1e-300),
        TOL,
    ));
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_sample_value() {
        let s = maass_samples()[0];
        let fd = maass_fd_value(1, &s, MAASS_DEFAULT_STEP).unwrap();
        let expect = 1.0 - 8.0 * PI + 16.0 * PI * PI;
        for r in 0..2 {
            for c in 0..2 {
                let e = if r == c { expect } else { 0.0 };
                assert!((fd[r][c] - e).norm() < 1e-6 * expect, "{r}{c}: {}", fd[r][c]);
            }
        }
    }

    #[test]
    fn all_samples_small_k() {
        for k in 1..=3 {
            for (i, s) in maass_samples().iter().enumerate() {
                let report = maass_fd_check(k, s, MAASS_DEFAULT_STEP, &format!("sample {i}")).unwrap();
                assert!(report.passed(), "{report}");
            }
        }
    }

    #[test]
    fn step_bounds() {
        let s = maass_samples()[1];
        assert!(matches!(maass_fd_value(2, &s, 1e-2), Err(Error::DomainError(_))));
        assert!(matches!(maass_fd_value(2, &s, 1e-6), Err(Error::StepSizeError(_))));
    }
}
