use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use super::monomial::monomial_poly;
use super::ypoly::YPoly;
use crate::combinatorics::{c_k_nu, triangle};
use crate::exact_core::special::is_multivariate_gamma_pole;
use crate::exact_core::{big, binomial, factorial, format_rational, int, rat, BigRational, GammaExpr, GaussianRational, HalfInteger, Poly};
use crate::gl2_rep::{p_k_generic, HighestWeight};
use crate::report::Report;

fn rising0(n: i64) -> Poly {
    Poly::rising(&BigRational::zero(), n.max(0) as usize)
}

fn two_pow(e: i64) -> BigRational {
    big(&(BigInt::one() << e as usize))
}

/// Polynomial part of `Γ(r,k,s) = p(s) Γ₂(s)`.
pub fn gamma_rk_poly(r: u32, k: u32) -> Poly {
    let (r, k) = (r as i64, k as i64);
    let k = if k > r / 2 { r - k } else { k };
    let mut acc = Poly::zero();
    for mu in 0..=r / 2 {
        let weight = big(&triangle(2 * mu - 1, mu)) / two_pow(mu);
        let mut inner = BigInt::zero();
        for j in 0..=k {
            let t = binomial(k, j) * binomial(r - 2 * k, 2 * (mu - j));
            inner += if (mu - j) % 2 == 0 { t } else { -t };
        }
        if inner.is_zero() {
            continue;
        }
        acc = acc + rising0(r - mu).scale(&(weight * big(&inner)));
    }
    acc
}

/// Eigenvalue `Γ(r,k,s)` of the Gamma integral on the weight vector `V_k`.
pub fn gamma_rk(r: u32, k: u32) -> GammaExpr {
    assert!(k <= r, "weight index out of range");
    GammaExpr::from_poly(2, gamma_rk_poly(r, k))
}

/// `Γ(r,0,s)` as `Σ_μ C(r,2μ) (-1)^μ a_{2μ-1,μ} 2^{-μ} ∏_{l<r-μ} (s+l)`.
pub fn gamma_r0_first_form(r: u32) -> Poly {
    let r = r as i64;
    (0..=r / 2).fold(Poly::zero(), |acc, mu| {
        let c = big(&(binomial(r, 2 * mu) * triangle(2 * mu - 1, mu))) / two_pow(mu);
        let c = if mu % 2 == 0 { c } else { -c };
        acc + rising0(r - mu).scale(&c)
    })
}

/// `Γ(r,0,s)` as `Σ_μ (-1)^μ μ!/2^r Σ_{j=μ}^{r-μ} C(r,j) C(r-j,μ) C(j,μ) ∏_{l<r-μ} (s+l)`.
pub fn gamma_r0_second_form(r: u32) -> Poly {
    let r = r as i64;
    (0..=r / 2).fold(Poly::zero(), |acc, mu| {
        let sum: BigInt = (mu..=r - mu)
            .map(|j| binomial(r, j) * binomial(r - j, mu) * binomial(j, mu))
            .sum();
        let c = big(&(factorial(mu as u64) * sum)) / two_pow(r);
        let c = if mu % 2 == 0 { c } else { -c };
        acc + rising0(r - mu).scale(&c)
    })
}

/// `∫ (Y11 + Y22)^r det(Y)^s e^{-tr Y} dY_inv / Γ₂(s)`.
pub fn trace_power_poly(r: u32) -> Poly {
    (0..=r).fold(Poly::zero(), |acc, j| {
        acc + monomial_poly(j, r - j, 0).scale(&big(&binomial(r as i64, j as i64)))
    })
}

/// `P_k(ν, Y)` as a polynomial in the entries of `Y`.
pub fn p_k_ypoly(r: u32, k: u32, nu: u32) -> YPoly {
    p_k_generic(r, k, nu, &YPoly::y11(), &YPoly::y22(), &YPoly::y12())
}

/// The Gamma integral of `ρ_{(l1,l2)} ⊗ det^s` in the weight basis.
#[derive(Clone, Debug, PartialEq)]
pub struct GammaOperator {
    pub weight: HighestWeight,
    pub shift: HalfInteger,
    pub diag: Vec<GammaExpr>,
}

pub fn gamma_operator(l: HighestWeight) -> GammaOperator {
    let r = l.r();
    let shift = HalfInteger::from_int(l.l2);
    let diag = (0..=r).map(|k| gamma_rk(r, k).substitute_shift(&shift)).collect();
    GammaOperator { weight: l, shift, diag }
}

impl GammaOperator {
    pub fn is_palindromic(&self) -> bool {
        let n = self.diag.len();
        (0..n).all(|k| self.diag[k] == self.diag[n - 1 - k])
    }
}

impl fmt::Display for GammaOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Gamma(rho_({},{}) (x) det^s), weight basis:", self.weight.l1, self.weight.l2)?;
        for (k, e) in self.diag.iter().enumerate() {
            writeln!(f, "  k={k}: {e}")?;
        }
        Ok(())
    }
}

/// Outcome of evaluating the diagonal polynomial parts at a point.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct InvertibilityReport {
    pub l1: i64,
    pub l2: i64,
    pub s0: String,
    /// Exact value of each polynomial part at `s0`.
    pub entries: Vec<String>,
    /// Weight indices `k` whose polynomial part vanishes.
    pub vanishing: Vec<u32>,
    /// `Γ₂(s0 + l2)` sits on a pole, so the operator is not defined there.
    pub gamma_pole: bool,
    pub invertible: bool,
}

pub fn invertibility_report(l: HighestWeight, s0: &BigRational) -> InvertibilityReport {
    let op = gamma_operator(l);
    let mut entries = Vec::new();
    let mut vanishing = Vec::new();
    for (k, e) in op.diag.iter().enumerate() {
        let v = e.rat().eval(s0).expect("diagonal entries are polynomial");
        if v.is_zero() {
            vanishing.push(k as u32);
        }
        entries.push(format_rational(&v));
    }
    let gamma_pole = is_multivariate_gamma_pole(2, &(s0 + int(l.l2)));
    InvertibilityReport {
        l1: l.l1,
        l2: l.l2,
        s0: format_rational(s0),
        entries,
        invertible: vanishing.is_empty() && !gamma_pole,
        vanishing,
        gamma_pole,
    }
}

/// For each `ν` with `c_k(ν) ≠ 0`, integrates `P_k(ν, Y) / c_k(ν)` symbolically
/// and compares with `Γ(r,k,s)`.
pub fn gamma_rk_independence_check(r: u32, k: u32) -> Report {
    let mut report = Report::new(format!("Gamma({r},{k},s) independent of nu"));
    let target = gamma_rk_poly(r, k);
    for nu in 0..=r {
        let c = c_k_nu(r as i64, k as i64, nu as i64);
        if c.is_zero() {
            continue;
        }
        let (re, im) = p_k_ypoly(r, k, nu).integrate();
        let re = re.scale(&big(&c).recip());
        let ok = im.is_zero() && re == target;
        let detail = if ok { String::new() } else { format!("got ({re}) + i({im}), expected {target}") };
        report.record(format!("r={r} k={k} nu={nu}"), ok, detail);
    }
    report
}

/// `∫ Y E Y det(Y)^s e^{-tr Y} dY_inv / Γ₂(s)` for a symmetric `E`,
/// entrywise `[[11, 12], [12, 22]]`.
pub fn sandwich_integral(e: [[i64; 2]; 2]) -> [[Poly; 2]; 2] {
    let y = [[YPoly::y11(), YPoly::y12()], [YPoly::y12(), YPoly::y22()]];
    let c = |x: i64| YPoly::constant(GaussianRational::real(int(x)));
    let entry = |i: usize, j: usize| {
        let mut acc = YPoly::default();
        for a in 0..2 {
            for b in 0..2 {
                acc = acc + y[i][a].clone() * c(e[a][b]) * y[b][j].clone();
            }
        }
        acc.integrate().0
    };
    [[entry(0, 0), entry(0, 1)], [entry(1, 0), entry(1, 1)]]
}

/// Checks `∫ YXY det^s e^{-tr Y} = s(s+1) Γ₂(s) X + (s/2) Γ₂(s) X̃` with
/// `X̃` the adjunct of `X`, on the basis `X1, X12, X2` of symmetric matrices.
pub fn symmetric_matrix_form_check() -> Report {
    let mut report = Report::new("symmetric square matrix form");
    let a = Poly::from_ints(&[0, 1, 1]); // s(s+1)
    let b = Poly::s().scale(&rat(1, 2)); // s/2
    let basis: [(&str, [[i64; 2]; 2], [[i64; 2]; 2]); 3] = [
        ("X1", [[1, 0], [0, 0]], [[0, 0], [0, 1]]),
        ("X12", [[0, 1], [1, 0]], [[0, -1], [-1, 0]]),
        ("X2", [[0, 0], [0, 1]], [[1, 0], [0, 0]]),
    ];
    let full = &a + &b;
    for (name, x, adj) in basis {
        let got = sandwich_integral(x);
        let mut ok = true;
        for i in 0..2 {
            for j in 0..2 {
                let want = a.scale(&int(x[i][j])) + b.scale(&int(adj[i][j]));
                ok &= got[i][j] == want;
            }
        }
        let detail = format!("[[{}, {}], [{}, {}]]", got[0][0], got[0][1], got[1][0], got[1][1]);
        report.record(format!("coefficient of {name}"), ok, detail);
        // trace is (s(s+1) + s/2)(X1 + X2)
        let tr = &got[0][0] + &got[1][1];
        let want_tr = full.scale(&int(x[0][0] + x[1][1]));
        report.record(format!("trace for {name}"), tr == want_tr, format!("{tr}"));
    }
    // X = 1: s(s+1) + s/2 = s(s+3/2) on the diagonal
    let id = sandwich_integral([[1, 0], [0, 1]]);
    let want = &a + &b;
    let ok = id[0][0] == want && id[1][1] == want && id[0][1].is_zero() && id[1][0].is_zero();
    report.record("X = 1 gives s(s+3/2)", ok, format!("{}", id[0][0]));
    // ∫Y² = ∫(Y11² + Y12², ...) from the monomial integrals directly
    let direct = &monomial_poly(2, 0, 0) + &monomial_poly(0, 0, 2);
    report.record("X = 1 from monomials", direct == want, format!("{direct}"));
    report
}

/// Exact identities of the rank-two Gamma integrals for `r ≤ r_max`.
pub fn rank2_identities(r_max: u32) -> Report {
    let mut report = Report::new(format!("rank-two identities up to r = {r_max}"));
    for r in 0..=r_max {
        let pal = (0..=r).all(|k| gamma_rk_poly(r, k) == gamma_rk_poly(r, r - k));
        report.record(format!("palindrome r={r}"), pal, "");

        let d = rising0((r / 2) as i64);
        let div = (0..=r).all(|k| gamma_rk_poly(r, k).checked_div(&d).is_some());
        report.record(format!("divisible by prod_(l<{}) (s+l), r={r}", r / 2), div, "");

        let g0 = gamma_rk_poly(r, 0);
        let f1 = gamma_r0_first_form(r);
        let f2 = gamma_r0_second_form(r);
        report.record(format!("two closed forms of Gamma({r},0,s)"), f1 == f2 && f1 == g0, format!("{f1} | {f2}"));

        let tr = trace_power_poly(r);
        let scaled = g0.scale(&two_pow(r as i64));
        report.record(format!("trace route r={r}"), tr == scaled, "");
    }
    report
}

/// `(-1)^q C_[q](-s) Γ_m(s) = ∏_{j<q} (s - j/2) Γ_m(s)`: the Gamma integral of
/// `st^{[q]} ⊗ det^s` on GL(m), a scalar.
pub fn gamma_alternating(m: u32, q: u32) -> crate::Result<GammaExpr> {
    if q < 1 || q > m {
        return Err(crate::Error::DomainError(format!("need 1 <= q <= m, got m={m}, q={q}")));
    }
    let p = (0..q).fold(Poly::one(), |acc, j| acc * Poly::s_plus(rat(-(j as i64), 2)));
    Ok(GammaExpr::from_poly(m, p))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_eigenvalues() {
        assert_eq!(gamma_rk_poly(2, 0), Poly::from_roots(&[int(0), rat(-1, 2)]));
        assert_eq!(gamma_rk_poly(2, 1), Poly::from_roots(&[int(0), rat(-3, 2)]));
        assert_eq!(gamma_rk_poly(1, 0), Poly::s());
        assert_eq!(gamma_rk_poly(0, 0), Poly::one());
    }

    #[test]
    fn operator_examples() {
        let op = gamma_operator(HighestWeight::new(2, 0).unwrap());
        assert_eq!(op.diag.len(), 3);
        assert!(op.is_palindromic());
        let op = gamma_operator(HighestWeight::new(1, 1).unwrap());
        assert_eq!(op.diag, vec![GammaExpr::gamma_shifted(2, HalfInteger::from_int(1))]);
    }

    #[test]
    fn alternating() {
        assert_eq!(gamma_alternating(2, 1).unwrap(), GammaExpr::from_poly(2, Poly::s()));
        assert_eq!(gamma_alternating(2, 2).unwrap(), GammaExpr::gamma_shifted(2, HalfInteger::from_int(1)));
        assert!(gamma_alternating(2, 3).is_err());
    }

    #[test]
    fn invertibility() {
        let l = HighestWeight::new(2, 0).unwrap();
        assert!(invertibility_report(l, &int(3)).invertible);
        let r = invertibility_report(l, &int(0));
        assert_eq!(r.vanishing, vec![0, 1, 2]);
        let r = invertibility_report(l, &rat(-1, 2));
        assert_eq!(r.vanishing, vec![0, 2]);
        assert!(!r.invertible);
    }

    #[test]
    fn identities_small() {
        let r = rank2_identities(8);
        assert!(r.passed(), "{r}");
        assert!(symmetric_matrix_form_check().passed(), "{}", symmetric_matrix_form_check());
        for r in 0..5 {
            for k in 0..=r {
                let rep = gamma_rk_independence_check(r, k);
                assert!(rep.passed(), "{rep}");
            }
        }
    }
}
