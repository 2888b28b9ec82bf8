use nalgebra::{DMatrix, SymmetricEigen};
use twofloat::TwoFloat;

/// Nodes and weights of `n`-point generalized Gauss–Laguerre quadrature for
/// `∫_0^∞ x^α e^{-x} f(x) dx`.
#[derive(Clone, Debug)]
pub struct GaussLaguerre {
    pub alpha: f64,
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

/// `(L_n(x), L_{n-1}(x), log_scale)` with the true values equal to the
/// returned ones times `e^{log_scale}`. The recurrence runs in double-double
/// arithmetic; in plain `f64` the small nodes of high-order rules lose
/// several digits.
fn laguerre_pair(n: usize, alpha: f64, x: TwoFloat) -> (TwoFloat, TwoFloat, f64) {
    let one = TwoFloat::from(1.0);
    let mut prev = one;
    if n == 0 {
        return (prev, TwoFloat::from(0.0), 0.0);
    }
    let mut cur = one + alpha - x;
    let mut log_scale = 0.0;
    for k in 1..n {
        let kf = k as f64;
        let next = ((-x + (2.0 * kf + 1.0 + alpha)) * cur - prev * (kf + alpha)) / (kf + 1.0);
        prev = cur;
        cur = next;
        let m = cur.hi().abs().max(prev.hi().abs());
        if m > 1e100 {
            prev /= m;
            cur /= m;
            log_scale += m.ln();
        }
    }
    (cur, prev, log_scale)
}

impl GaussLaguerre {
    /// Golub–Welsch eigenvalues of the Jacobi matrix, each polished by Newton
    /// steps on the three-term recurrence; weights from
    /// `w = Γ(n+α+1) x / (n! (n+α)² L_{n-1}(x)²)` in the log domain,
    /// rescaled to the exact total `Γ(α+1)`.
    pub fn new(n: usize, alpha: f64) -> Self {
        assert!(n >= 1, "quadrature order must be positive");
        assert!(alpha > -1.0, "Laguerre parameter must exceed -1");
        let jacobi = DMatrix::from_fn(n, n, |i, j| {
            if i == j {
                2.0 * i as f64 + alpha + 1.0
            } else if i + 1 == j || j + 1 == i {
                let m = i.max(j) as f64;
                (m * (m + alpha)).sqrt()
            } else {
                0.0
            }
        });
        let mut nodes: Vec<f64> = SymmetricEigen::new(jacobi).eigenvalues.iter().copied().collect();
        nodes.sort_by(|a, b| a.total_cmp(b));
        let nf = n as f64;
        let mut lm_at_node = Vec::with_capacity(n);
        for x in nodes.iter_mut() {
            let mut xt = TwoFloat::from(*x);
            for _ in 0..10 {
                let (ln, lm, _) = laguerre_pair(n, alpha, xt);
                let deriv = (ln * nf - lm * (nf + alpha)) / xt;
                let dx = ln / deriv;
                xt -= dx;
                if dx.hi().abs() <= 1e-30 * xt.hi().abs() {
                    break;
                }
            }
            *x = xt.hi();
            let (_, lm, scale) = laguerre_pair(n, alpha, xt);
            lm_at_node.push(lm.hi().abs().ln() + scale);
        }
        let log_front = libm::lgamma(nf + alpha + 1.0) - libm::lgamma(nf + 1.0) - 2.0 * (nf + alpha).ln();
        let mut weights: Vec<f64> = nodes
            .iter()
            .zip(&lm_at_node)
            .map(|(&x, &log_lm)| (log_front + x.ln() - 2.0 * log_lm).exp())
            .collect();
        // the recurrence loses a few digits uniformly at high order; the
        // zeroth moment is known exactly
        let total: f64 = weights.iter().sum();
        let scale = libm::tgamma(alpha + 1.0) / total;
        weights.iter_mut().for_each(|w| *w *= scale);
        GaussLaguerre { alpha, nodes, weights }
    }

    pub fn order(&self) -> usize {
        self.nodes.len()
    }

    /// `∫_0^∞ x^α e^{-x} f(x) dx`.
    pub fn integrate(&self, f: impl Fn(f64) -> f64) -> f64 {
        self.nodes.iter().zip(&self.weights).map(|(&x, &w)| w * f(x)).sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs()
    }

    #[test]
    fn moments_are_exact() {
        for &alpha in &[0.0, 0.5, 1.0, 1.6, 4.5] {
            for &n in &[4usize, 20, 80, 128, 160] {
                let q = GaussLaguerre::new(n, alpha);
                for p in 0..(2 * n).min(30) {
                    let want = libm::tgamma(alpha + 1.0 + p as f64);
                    let got = q.integrate(|x| x.powi(p as i32));
                    assert!(rel(got, want) < 1e-12, "alpha={alpha} n={n} p={p}: {got} vs {want}");
                }
            }
        }
    }

    #[test]
    fn small_order_nodes() {
        // L_2(x) = (x² - 4x + 2)/2 for α = 0
        let q = GaussLaguerre::new(2, 0.0);
        assert!((q.nodes[0] - (2.0 - 2f64.sqrt())).abs() < 1e-15);
        assert!((q.nodes[1] - (2.0 + 2f64.sqrt())).abs() < 1e-14);
    }
}
