//! Triangle numbers `a_{n,m}`, the polynomials `C_[q]`, the weight-vector
//! coefficients `c_k(ν)` and the binomial identity linking the two closed
//! forms of `Γ(r,0,s)`.

use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::exact_core::{big, binomial, factorial, format_rational, odd_double_factorial, rat, BigRational, Poly};
use crate::report::Report;

/// Memoized triangle numbers. Row `n` stores `a_{n,m}` for `m = 0..=n`;
/// entries with `m > n` vanish.
#[derive(Debug, Default)]
pub struct TriangleTable {
    rows: RwLock<Vec<Vec<BigInt>>>,
}

/// One row of a table dump.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TriangleEntry {
    pub n: u32,
    pub m: u32,
    #[serde(serialize_with = "ser_bigint")]
    pub value: BigInt,
    pub recursion_ok: bool,
}

fn ser_bigint<S: serde::Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

impl TriangleTable {
    pub fn new() -> Self {
        Self::default()
    }

    /// `a_{n,m}` for `n ≥ -1`, with `a_{-1,0} = 1` and `a_{-1,m} = 0` otherwise.
    pub fn get(&self, n: i64, m: i64) -> BigInt {
        if m < 0 || n < -1 {
            return BigInt::zero();
        }
        if n == -1 {
            return if m == 0 { BigInt::one() } else { BigInt::zero() };
        }
        if m > n {
            return BigInt::zero();
        }
        let (n, m) = (n as usize, m as usize);
        {
            let rows = self.rows.read().expect("triangle table lock poisoned");
            if let Some(row) = rows.get(n) {
                return row[m].clone();
            }
        }
        self.fill(n);
        self.rows.read().expect("triangle table lock poisoned")[n][m].clone()
    }

    /// Ensures rows `0..=n_max` are stored.
    pub fn fill(&self, n_max: usize) {
        let mut rows = self.rows.write().expect("triangle table lock poisoned");
        while rows.len() <= n_max {
            let n = rows.len();
            let row: Vec<BigInt> = (0..=n)
                .map(|m| {
                    if m == 0 {
                        BigInt::one()
                    } else if n == 0 {
                        BigInt::zero()
                    } else {
                        let prev = &rows[n - 1];
                        let diag = prev.get(m - 1).cloned().unwrap_or_default();
                        let up = prev.get(m).cloned().unwrap_or_default();
                        BigInt::from(n as i64 - 2 * (m as i64 - 1)) * diag + up
                    }
                })
                .collect();
            rows.push(row);
        }
    }

    /// Every stored (or newly filled) entry up to `n_max`, in the nonzero range
    /// `m ≤ ⌊(n+1)/2⌋`, each re-checked against the recursion.
    pub fn dump(&self, n_max: u32) -> Vec<TriangleEntry> {
        self.fill(n_max as usize);
        let mut out = Vec::new();
        for n in 0..=n_max as i64 {
            for m in 0..=(n + 1) / 2 {
                let value = self.get(n, m);
                out.push(TriangleEntry {
                    n: n as u32,
                    m: m as u32,
                    recursion_ok: self.recursion_holds(n, m),
                    value,
                });
            }
        }
        out
    }

    fn recursion_holds(&self, n: i64, m: i64) -> bool {
        let v = self.get(n, m);
        if m == 0 {
            return v.is_one();
        }
        if n == 0 {
            return v.is_zero();
        }
        v == BigInt::from(n - 2 * (m - 1)) * self.get(n - 1, m - 1) + self.get(n - 1, m)
    }
}

fn global_table() -> &'static TriangleTable {
    static TABLE: OnceLock<TriangleTable> = OnceLock::new();
    TABLE.get_or_init(TriangleTable::new)
}

/// `a_{n,m}` from a process-wide memo table.
pub fn triangle(n: i64, m: i64) -> BigInt {
    global_table().get(n, m)
}

pub fn triangle_dump(n_max: u32) -> Vec<TriangleEntry> {
    global_table().dump(n_max)
}

fn record_family(report: &mut Report, name: &str, violations: Vec<String>, count: usize) {
    let detail = if violations.is_empty() {
        format!("{count} cases")
    } else {
        violations.join("; ")
    };
    report.record(name, violations.is_empty(), detail);
}

/// Checks the recursion on every entry and the closed forms for the
/// triangle numbers up to row `n_max`.
pub fn verify_triangle_closed_forms(n_max: u32) -> Report {
    let mut report = Report::new(format!("triangle numbers up to n = {n_max}"));
    let n_max = n_max as i64;
    let a = triangle;

    let dump = triangle_dump(n_max as u32);
    let bad: Vec<String> = dump
        .iter()
        .filter(|e| !e.recursion_ok)
        .map(|e| format!("a({},{})", e.n, e.m))
        .collect();
    record_family(&mut report, "recursion", bad, dump.len());

    let mut bad = Vec::new();
    for n in 0..=n_max {
        if a(n, 1) != BigInt::from(n * (n + 1) / 2) {
            bad.push(format!("n={n}"));
        }
    }
    record_family(&mut report, "a(n,1) = n(n+1)/2", bad, n_max as usize + 1);

    let mut bad = Vec::new();
    for n in 0..=n_max {
        if a(n, 2) != BigInt::from(n * (n + 1) * (n - 1) * (n - 2) / 8) {
            bad.push(format!("n={n}"));
        }
    }
    record_family(&mut report, "a(n,2) = n(n+1)(n-1)(n-2)/8", bad, n_max as usize + 1);

    let mut bad = Vec::new();
    let mut count = 0;
    for n in 0..=n_max {
        for m in (n + 1) / 2 + 1..=n + 2 {
            count += 1;
            if !a(n, m).is_zero() {
                bad.push(format!("a({n},{m})"));
            }
        }
    }
    record_family(&mut report, "a(n,m) = 0 above floor((n+1)/2)", bad, count);

    let mut bad = Vec::new();
    let mut count = 0;
    for nu in 1..=(n_max + 1) / 2 {
        count += 1;
        if a(2 * nu - 1, nu) != a(2 * (nu - 1), nu - 1) {
            bad.push(format!("nu={nu}"));
        }
    }
    record_family(&mut report, "a(2v-1,v) = a(2v-2,v-1)", bad, count);

    let mut bad_a = Vec::new();
    let mut bad_b = Vec::new();
    let mut bad_c = Vec::new();
    let (mut count_a, mut count_b, mut count_c) = (0, 0, 0);
    for mu in 0..=(n_max + 1) / 2 {
        let dfact = odd_double_factorial(mu as u64);
        count_a += 1;
        if a(2 * mu - 1, mu) != dfact {
            bad_a.push(format!("mu={mu}"));
        }
        if mu >= 1 {
            count_b += 1;
            if a(2 * mu - 1, mu - 1) != BigInt::from(mu) * &dfact {
                bad_b.push(format!("mu={mu}"));
            }
        }
        if mu >= 1 && 2 * mu <= n_max {
            count_c += 1;
            let lhs = big(&a(2 * mu, mu - 1));
            let rhs = rat(mu, 3) * big(&odd_double_factorial(mu as u64 + 1));
            if lhs != rhs {
                bad_c.push(format!("mu={mu}"));
            }
        }
    }
    record_family(&mut report, "a(2mu-1,mu) = (2mu-1)!!", bad_a, count_a);
    record_family(&mut report, "a(2mu-1,mu-1) = mu (2mu-1)!!", bad_b, count_b);
    record_family(&mut report, "a(2mu,mu-1) = (mu/3) (2mu+1)!!", bad_c, count_c);
    report
}

/// `C_[q](x) = x (x + 1/2) ⋯ (x + (q-1)/2)`, written in the formal variable `s`.
pub fn c_poly(q: u32) -> Poly {
    (0..q).fold(Poly::one(), |acc, j| acc * Poly::s_plus(rat(j as i64, 2)))
}

/// `c_k(ν) = Σ_j (-1)^j C(r-k, j) C(k, ν-j)`.
pub fn c_k_nu(r: i64, k: i64, nu: i64) -> BigInt {
    (0..=nu)
        .map(|j| {
            let term = binomial(r - k, j) * binomial(k, nu - j);
            if j % 2 == 0 {
                term
            } else {
                -term
            }
        })
        .sum()
}

/// Both sides of
/// `(μ!/2^r) Σ_{j=μ}^{r-μ} C(r,j) C(r-j,μ) C(j,μ) = C(r,2μ) a_{2μ-1,μ} / 2^μ`.
pub fn binomial_identity_sides(r: i64, mu: i64) -> (BigRational, BigRational) {
    let sum: BigInt = (mu..=r - mu)
        .map(|j| binomial(r, j) * binomial(r - j, mu) * binomial(j, mu))
        .sum();
    let lhs = big(&(factorial(mu as u64) * sum)) / big(&(BigInt::one() << r as usize));
    let rhs = big(&(binomial(r, 2 * mu) * triangle(2 * mu - 1, mu))) / big(&(BigInt::one() << mu as usize));
    (lhs, rhs)
}

pub fn binomial_identity_check(r_max: u32) -> Report {
    let mut report = Report::new(format!("binomial identity up to r = {r_max}"));
    for r in 0..=r_max as i64 {
        for mu in 0..=r / 2 {
            let (lhs, rhs) = binomial_identity_sides(r, mu);
            let detail = format!("{} vs {}", format_rational(&lhs), format_rational(&rhs));
            report.record(format!("r={r} mu={mu}"), lhs == rhs, detail);
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_core::int;

    #[test]
    fn small_values() {
        assert_eq!(triangle(4, 1), BigInt::from(10));
        assert_eq!(triangle(4, 2), BigInt::from(15));
        assert_eq!(triangle(2, 2), BigInt::zero());
        assert_eq!(triangle(5, 3), BigInt::from(15));
        assert_eq!(triangle(3, 1), BigInt::from(6));
        assert_eq!(triangle(2, 0), BigInt::one());
        assert_eq!(triangle(-1, 0), BigInt::one());
        assert_eq!(triangle(-1, 1), BigInt::zero());
        assert_eq!(triangle(0, 3), BigInt::zero());
    }

    #[test]
    fn separate_tables_agree() {
        let t = TriangleTable::new();
        assert_eq!(t.get(12, 5), triangle(12, 5));
    }

    #[test]
    fn closed_forms_hold() {
        let report = verify_triangle_closed_forms(30);
        assert!(report.passed(), "{report}");
    }

    #[test]
    fn c_poly_roots() {
        assert_eq!(c_poly(1), Poly::s());
        assert_eq!(c_poly(3), Poly::from_roots(&[int(0), rat(-1, 2), int(-1)]));
    }

    #[test]
    fn c_k_examples() {
        assert_eq!(c_k_nu(2, 1, 0), BigInt::one());
        assert_eq!(c_k_nu(2, 1, 1), BigInt::zero());
        assert_eq!(c_k_nu(2, 0, 2), BigInt::one());
    }

    #[test]
    fn binomial_identity_examples() {
        assert_eq!(binomial_identity_sides(2, 1), (rat(1, 2), rat(1, 2)));
        assert_eq!(binomial_identity_sides(4, 2).1, rat(3, 4));
        assert!(binomial_identity_check(12).passed());
    }
}
