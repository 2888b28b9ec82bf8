use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::combinatorics::triangle;
use crate::exact_core::{big, binomial, factorial, format_rational, int, rat, rational_to_f64, BigRational, Poly};

/// One summand `coeff · T11^{p11} T22^{p22} T12^{p12} · det(T)^{-(s+n)} · poly(s)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DetTerm {
    pub coeff: BigRational,
    pub p11: u32,
    pub p22: u32,
    pub p12: u32,
    pub det_shift: u32,
    pub poly: Poly,
}

/// A derivative of `det(T)^{-s}` with respect to the normalized operators
/// `∂_ij = (1 + δ_ij)/2 · ∂/∂T_ij`, as a sum of [`DetTerm`]s.
///
/// Terms are kept merged by `(p11, p22, p12, det_shift)`, sorted by that key,
/// with monic `poly`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DetDerivative {
    pub terms: Vec<DetTerm>,
}

type Key = (u32, u32, u32, u32);

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    D11,
    D22,
    D12,
}

impl DetDerivative {
    /// `det(T)^{-s}` itself.
    pub fn base() -> Self {
        Self::from_map(BTreeMap::from([((0, 0, 0, 0), Poly::one())]))
    }

    fn from_map(map: BTreeMap<Key, Poly>) -> Self {
        let terms = map
            .into_iter()
            .filter(|(_, p)| !p.is_zero())
            .map(|((p11, p22, p12, det_shift), p)| {
                let (coeff, poly) = p.to_monic();
                DetTerm { coeff, p11, p22, p12, det_shift, poly }
            })
            .collect();
        DetDerivative { terms }
    }

    fn to_map(&self) -> BTreeMap<Key, Poly> {
        let mut map = BTreeMap::new();
        for t in &self.terms {
            add_to(&mut map, (t.p11, t.p22, t.p12, t.det_shift), t.poly.scale(&t.coeff));
        }
        map
    }

    /// One more derivative by the product rule.
    pub fn apply(&self, dir: Direction) -> Self {
        let mut out = BTreeMap::new();
        for ((a, b, e, n), p) in self.to_map() {
            // s + n
            let sn = Poly::s_plus(int(n as i64));
            match dir {
                Direction::D11 => {
                    if a > 0 {
                        add_to(&mut out, (a - 1, b, e, n), p.scale(&int(a as i64)));
                    }
                    add_to(&mut out, (a, b + 1, e, n + 1), -(&p * &sn));
                }
                Direction::D22 => {
                    if b > 0 {
                        add_to(&mut out, (a, b - 1, e, n), p.scale(&int(b as i64)));
                    }
                    add_to(&mut out, (a + 1, b, e, n + 1), -(&p * &sn));
                }
                Direction::D12 => {
                    if e > 0 {
                        add_to(&mut out, (a, b, e - 1, n), p.scale(&rat(e as i64, 2)));
                    }
                    add_to(&mut out, (a, b, e + 1, n + 1), &p * &sn);
                }
            }
        }
        Self::from_map(out)
    }

    /// `∂11^{n1} ∂22^{n2} ∂12^{n3}` by repeated product rule only.
    pub fn by_product_rule(n1: u32, n2: u32, n3: u32) -> Self {
        let mut d = Self::base();
        for _ in 0..n3 {
            d = d.apply(Direction::D12);
        }
        for _ in 0..n2 {
            d = d.apply(Direction::D22);
        }
        for _ in 0..n1 {
            d = d.apply(Direction::D11);
        }
        d
    }

    /// Value at `T = 1`: the sum of the terms free of `T12`, as a polynomial in `s`.
    pub fn at_identity(&self) -> Poly {
        self.terms
            .iter()
            .filter(|t| t.p12 == 0)
            .fold(Poly::zero(), |acc, t| acc + t.poly.scale(&t.coeff))
    }

    /// Floating-point value at a symmetric `T` (entries `t11, t22, t12`) and real `s`.
    pub fn eval(&self, t11: f64, t22: f64, t12: f64, s: f64) -> f64 {
        let det = t11 * t22 - t12 * t12;
        self.terms
            .iter()
            .map(|t| {
                rational_to_f64(&t.coeff)
                    * t11.powi(t.p11 as i32)
                    * t22.powi(t.p22 as i32)
                    * t12.powi(t.p12 as i32)
                    * det.powf(-(s + t.det_shift as f64))
                    * t.poly.eval_f64(s)
            })
            .sum()
    }

    /// Every term has total `T`-degree `-2s - order`.
    pub fn is_homogeneous_of_order(&self, order: u32) -> bool {
        self.terms
            .iter()
            .all(|t| t.p11 as i64 + t.p22 as i64 + t.p12 as i64 - 2 * t.det_shift as i64 == -(order as i64))
    }
}

fn add_to(map: &mut BTreeMap<Key, Poly>, key: Key, p: Poly) {
    let entry = map.entry(key).or_insert_with(Poly::zero);
    *entry = &*entry + &p;
}

/// `∂jj^n det(T)^{-s} = (-1)^n T_ii^n det(T)^{-(s+n)} ∏_{l<n} (s+l)`, `{i,j} = {1,2}`.
fn pure_diagonal(n: u32, first: bool) -> DetDerivative {
    let sign = if n % 2 == 0 { BigRational::one() } else { -BigRational::one() };
    let (p11, p22) = if first { (0, n) } else { (n, 0) };
    let p = Poly::rising(&BigRational::zero(), n as usize).scale(&sign);
    DetDerivative::from_map(BTreeMap::from([((p11, p22, 0, n), p)]))
}

/// `∂11^{n1} ∂22^{n2} det(T)^{-s}`.
fn mixed_diagonal(n1: u32, n2: u32) -> DetDerivative {
    let mut map = BTreeMap::new();
    for k in 0..=n1.min(n2) {
        let sign = if (n1 + n2 + k) % 2 == 0 { 1 } else { -1 };
        let c = big(&(factorial(k as u64) * binomial(n1 as i64, k as i64) * binomial(n2 as i64, k as i64) * sign));
        let total = n1 + n2 - k;
        let p = Poly::rising(&BigRational::zero(), total as usize).scale(&c);
        add_to(&mut map, (n2 - k, n1 - k, 0, total), p);
    }
    DetDerivative::from_map(map)
}

/// `∂12^n det(T)^{-s} = Σ_k 2^{-k} a_{n-1,k} det(T)^{-(s+n-k)} T12^{n-2k} ∏_{l<n-k} (s+l)`.
fn pure_off_diagonal(n: u32) -> DetDerivative {
    let mut map = BTreeMap::new();
    for k in 0..=n / 2 {
        let a = triangle(n as i64 - 1, k as i64);
        if a.is_zero() {
            continue;
        }
        let c = big(&a) / big(&(num_bigint::BigInt::one() << k as usize));
        let p = Poly::rising(&BigRational::zero(), (n - k) as usize).scale(&c);
        add_to(&mut map, (0, 0, n - 2 * k, n - k), p);
    }
    DetDerivative::from_map(map)
}

/// `∂11^{n1} ∂22^{n2} ∂12^{n3} det(T)^{-s}` from the closed forms. When all
/// three orders are positive the `∂12` closed form is taken first and the
/// diagonal derivatives (`∂22`, then `∂11`) follow by the product rule.
pub fn det_derivative(n1: u32, n2: u32, n3: u32) -> DetDerivative {
    match (n1, n2, n3) {
        (0, 0, 0) => DetDerivative::base(),
        (n, 0, 0) => pure_diagonal(n, true),
        (0, n, 0) => pure_diagonal(n, false),
        (0, 0, n) => pure_off_diagonal(n),
        (_, _, 0) => mixed_diagonal(n1, n2),
        _ => {
            let mut d = pure_off_diagonal(n3);
            for _ in 0..n2 {
                d = d.apply(Direction::D22);
            }
            for _ in 0..n1 {
                d = d.apply(Direction::D11);
            }
            d
        }
    }
}

impl fmt::Display for DetDerivative {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, t) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(
                f,
                "{}*({})*T11^{}*T22^{}*T12^{}*det^-(s+{})",
                format_rational(&t.coeff),
                t.poly,
                t.p11,
                t.p22,
                t.p12,
                t.det_shift
            )?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_derivatives() {
        let d = det_derivative(0, 0, 1);
        assert_eq!(d.terms.len(), 1);
        let t = &d.terms[0];
        assert_eq!((t.p11, t.p22, t.p12, t.det_shift), (0, 0, 1, 1));
        assert_eq!(t.poly.scale(&t.coeff), Poly::s());

        let d = det_derivative(1, 0, 0);
        let t = &d.terms[0];
        assert_eq!((t.p11, t.p22, t.p12, t.det_shift), (0, 1, 0, 1));
        assert_eq!(t.poly.scale(&t.coeff), -Poly::s());
    }

    #[test]
    fn second_off_diagonal() {
        // s(s+1) T12^2 det^{-(s+2)} + (s/2) det^{-(s+1)}
        let d = det_derivative(0, 0, 2);
        let expect = DetDerivative::from_map(BTreeMap::from([
            ((0, 0, 2, 2), Poly::from_ints(&[0, 1, 1])),
            ((0, 0, 0, 1), Poly::s().scale(&rat(1, 2))),
        ]));
        assert_eq!(d, expect);
    }

    #[test]
    fn closed_forms_match_product_rule() {
        for n1 in 0..5 {
            for n2 in 0..5 {
                for n3 in 0..6 {
                    let a = det_derivative(n1, n2, n3);
                    let b = DetDerivative::by_product_rule(n1, n2, n3);
                    assert_eq!(a, b, "({n1},{n2},{n3})");
                    assert!(a.is_homogeneous_of_order(n1 + n2 + n3));
                }
            }
        }
    }
}
