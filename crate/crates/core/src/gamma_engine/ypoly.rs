use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::monomial::monomial_poly;
use crate::exact_core::{big, BigRational, GaussianRational, Poly};
use crate::gl2_rep::RepScalar;

/// Exponents `(n1, n2, n3)` of `Y11^{n1} Y22^{n2} Y12^{n3}`.
pub type YMonomial = (u32, u32, u32);

/// Polynomial in the entries of a symmetric 2×2 matrix `Y`, with Gaussian
/// rational coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct YPoly {
    terms: BTreeMap<YMonomial, GaussianRational>,
}

impl YPoly {
    pub fn monomial(n1: u32, n2: u32, n3: u32, c: GaussianRational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((n1, n2, n3), c);
        }
        YPoly { terms }
    }

    pub fn y11() -> Self {
        Self::monomial(1, 0, 0, GaussianRational::one())
    }

    pub fn y22() -> Self {
        Self::monomial(0, 1, 0, GaussianRational::one())
    }

    pub fn y12() -> Self {
        Self::monomial(0, 0, 1, GaussianRational::one())
    }

    pub fn constant(c: GaussianRational) -> Self {
        Self::monomial(0, 0, 0, c)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&YMonomial, &GaussianRational)> {
        self.terms.iter()
    }

    fn insert_add(&mut self, key: YMonomial, c: GaussianRational) {
        let entry = self.terms.entry(key).or_default();
        *entry = &*entry + &c;
        if entry.is_zero() {
            self.terms.remove(&key);
        }
    }

    /// `∫ self · det(Y)^s e^{-tr Y} dY_inv = (re + i·im) · Γ₂(s)`; returns
    /// `(re, im)`.
    pub fn integrate(&self) -> (Poly, Poly) {
        let mut re = Poly::zero();
        let mut im = Poly::zero();
        for (&(n1, n2, n3), c) in &self.terms {
            let p = monomial_poly(n1, n2, n3);
            if p.is_zero() {
                continue;
            }
            re = re + p.scale(&c.re);
            im = im + p.scale(&c.im);
        }
        (re, im)
    }

    pub fn eval(&self, y11: &BigRational, y22: &BigRational, y12: &BigRational) -> GaussianRational {
        self.terms.iter().fold(GaussianRational::zero(), |acc, (&(a, b, e), c)| {
            let m = num_traits::pow(y11.clone(), a as usize)
                * num_traits::pow(y22.clone(), b as usize)
                * num_traits::pow(y12.clone(), e as usize);
            acc + c.scale(&m)
        })
    }
}

impl fmt::Display for YPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(&(a, b, e), c)| format!("({c})*Y11^{a}*Y22^{b}*Y12^{e}"))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl Add for YPoly {
    type Output = YPoly;
    fn add(mut self, rhs: YPoly) -> YPoly {
        for (k, c) in rhs.terms {
            self.insert_add(k, c);
        }
        self
    }
}

impl Neg for YPoly {
    type Output = YPoly;
    fn neg(self) -> YPoly {
        YPoly { terms: self.terms.into_iter().map(|(k, c)| (k, -c)).collect() }
    }
}

impl Sub for YPoly {
    type Output = YPoly;
    fn sub(self, rhs: YPoly) -> YPoly {
        self + (-rhs)
    }
}

impl Mul for YPoly {
    type Output = YPoly;
    fn mul(self, rhs: YPoly) -> YPoly {
        let mut out = YPoly::default();
        for (&(a1, b1, e1), c1) in &self.terms {
            for (&(a2, b2, e2), c2) in &rhs.terms {
                out.insert_add((a1 + a2, b1 + b2, e1 + e2), c1 * c2);
            }
        }
        out
    }
}

impl Zero for YPoly {
    fn zero() -> Self {
        YPoly::default()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for YPoly {
    fn one() -> Self {
        YPoly::constant(GaussianRational::one())
    }
}

impl RepScalar for YPoly {
    fn imag_unit() -> Self {
        YPoly::constant(GaussianRational::i())
    }
    fn from_integer(n: &BigInt) -> Self {
        YPoly::constant(GaussianRational::real(big(n)))
    }
}
