use std::f64::consts::PI;
use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::special::{is_multivariate_gamma_pole, multivariate_gamma};
use super::{format_rational, parse_rational, rational_to_f64, BigRational, HalfInteger, Poly, RationalFunction};
use crate::error::{Error, Result};

/// Exponent `slope·s + offset` of a `(4π)` power.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct FourPiExponent {
    pub slope: BigRational,
    pub offset: BigRational,
}

impl FourPiExponent {
    pub fn new(slope: BigRational, offset: BigRational) -> Self {
        FourPiExponent { slope, offset }
    }

    pub fn at(&self, s0: &BigRational) -> BigRational {
        &self.slope * s0 + &self.offset
    }

    pub fn is_zero(&self) -> bool {
        self.slope.is_zero() && self.offset.is_zero()
    }
}

/// Symbolic value `rat(s) · Γ_m(s + σ) · (4π)^{αs + β}`.
///
/// `σ` is a half-integer. Integer parts of `σ` can be traded for polynomial
/// factors of `rat` through `Γ_m(z + 1) = ∏_{ν<m} (z - ν/2) · Γ_m(z)`; the
/// canonical form keeps `σ ∈ {0, 1/2}`. Equality compares canonical forms.
#[derive(Clone, Debug)]
pub struct GammaExpr {
    rank: u32,
    rat: RationalFunction,
    shift: HalfInteger,
    four_pi: FourPiExponent,
}

/// An exact special value `Γ_m(arg) · (4π)^{four_pi_exp}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GammaValue {
    pub rank: u32,
    pub arg: BigRational,
    pub four_pi_exp: BigRational,
}

impl GammaValue {
    pub fn is_pole(&self) -> bool {
        is_multivariate_gamma_pole(self.rank, &self.arg)
    }

    pub fn to_f64(&self) -> Option<f64> {
        let g = multivariate_gamma(self.rank, rational_to_f64(&self.arg))?;
        Some(g * (4.0 * PI).powf(rational_to_f64(&self.four_pi_exp)))
    }
}

impl fmt::Display for GammaValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Gamma_{}({})", self.rank, format_rational(&self.arg))?;
        if !self.four_pi_exp.is_zero() {
            write!(f, " * (4pi)^({})", format_rational(&self.four_pi_exp))?;
        }
        Ok(())
    }
}

/// `∏_{j=0}^{n-1} ∏_{ν=0}^{m-1} (s + base + j - ν/2)`: the factor relating
/// `Γ_m(s + base + n)` to `Γ_m(s + base)`.
fn shift_factor(rank: u32, base: &HalfInteger, n: u64) -> Poly {
    let mut acc = Poly::one();
    for j in 0..n {
        for nu in 0..rank {
            let c = base.to_rational() + BigRational::from_integer(j.into())
                - BigRational::new(nu.into(), 2.into());
            acc = acc * Poly::s_plus(c);
        }
    }
    acc
}

impl GammaExpr {
    pub fn new(rank: u32, rat: RationalFunction, shift: HalfInteger, four_pi: FourPiExponent) -> Self {
        assert!(rank >= 1, "Gamma rank must be positive");
        GammaExpr { rank, rat, shift, four_pi }
    }

    /// `Γ_m(s)`.
    pub fn gamma(rank: u32) -> Self {
        Self::gamma_shifted(rank, HalfInteger::zero())
    }

    /// `Γ_m(s + σ)`.
    pub fn gamma_shifted(rank: u32, shift: HalfInteger) -> Self {
        Self::new(rank, RationalFunction::one(), shift, FourPiExponent::default())
    }

    /// `p(s) · Γ_m(s)`.
    pub fn from_poly(rank: u32, p: Poly) -> Self {
        Self::new(rank, p.into(), HalfInteger::zero(), FourPiExponent::default())
    }

    pub fn zero(rank: u32) -> Self {
        Self::from_poly(rank, Poly::zero())
    }

    pub fn rank(&self) -> u32 {
        self.rank
    }

    pub fn rat(&self) -> &RationalFunction {
        &self.rat
    }

    pub fn shift(&self) -> &HalfInteger {
        &self.shift
    }

    pub fn four_pi(&self) -> &FourPiExponent {
        &self.four_pi
    }

    pub fn is_zero(&self) -> bool {
        self.rat.is_zero()
    }

    pub fn times_rat(&self, f: &RationalFunction) -> Self {
        GammaExpr { rat: &self.rat * f, ..self.clone() }
    }

    pub fn times_poly(&self, p: &Poly) -> Self {
        self.times_rat(&p.clone().into())
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        GammaExpr { rat: self.rat.scale(c), ..self.clone() }
    }

    /// Multiplies by `(4π)^{slope·s + offset}`.
    pub fn times_four_pi(&self, slope: &BigRational, offset: &BigRational) -> Self {
        let four_pi = FourPiExponent::new(&self.four_pi.slope + slope, &self.four_pi.offset + offset);
        GammaExpr { four_pi, ..self.clone() }
    }

    pub fn neg(&self) -> Self {
        GammaExpr { rat: -&self.rat, ..self.clone() }
    }

    /// The substitution `s ↦ s + c`.
    pub fn substitute_shift(&self, c: &HalfInteger) -> Self {
        let cq = c.to_rational();
        GammaExpr {
            rank: self.rank,
            rat: self.rat.shift(&cq),
            shift: &self.shift + c,
            four_pi: FourPiExponent::new(self.four_pi.slope.clone(), &self.four_pi.offset + &self.four_pi.slope * &cq),
        }
    }

    /// Moves all integer shifts of the Gamma factor into `rat`, leaving
    /// `σ ∈ {0, 1/2}`. The zero expression has `σ = 0` and no `(4π)` power.
    pub fn canonicalize(&self) -> Self {
        if self.rat.is_zero() {
            return Self::zero(self.rank);
        }
        let (n, frac) = self.shift.split_floor();
        self.rebase_unchecked(&frac, n)
    }

    /// Re-expresses `self` with Gamma factor `Γ_m(s + target)`; `target` must
    /// differ from the current shift by an integer.
    pub fn rebase(&self, target: &HalfInteger) -> Result<Self> {
        let diff = &self.shift - target;
        if !diff.is_integer() {
            return Err(Error::IncompatibleExpr(format!(
                "cannot move Gamma shift {} to {}",
                self.shift, target
            )));
        }
        let (n, _) = diff.split_floor();
        Ok(self.rebase_unchecked(target, n))
    }

    fn rebase_unchecked(&self, target: &HalfInteger, n: i64) -> Self {
        let rat = if n >= 0 {
            &self.rat * &shift_factor(self.rank, target, n as u64).into()
        } else {
            let f: RationalFunction = shift_factor(self.rank, &self.shift, n.unsigned_abs()).into();
            self.rat.checked_div(&f).expect("shift factor is a nonzero polynomial")
        };
        GammaExpr { rank: self.rank, rat, shift: target.clone(), four_pi: self.four_pi.clone() }
    }

    fn compatible(&self, other: &Self) -> Result<(Self, Self)> {
        if self.rank != other.rank {
            return Err(Error::IncompatibleExpr(format!("ranks {} and {}", self.rank, other.rank)));
        }
        let a = self.canonicalize();
        let b = other.canonicalize();
        if a.is_zero() || b.is_zero() {
            return Ok((a, b));
        }
        if a.shift != b.shift {
            return Err(Error::IncompatibleExpr(format!(
                "Gamma shifts {} and {} lie in different classes",
                a.shift, b.shift
            )));
        }
        if a.four_pi != b.four_pi {
            return Err(Error::IncompatibleExpr("different (4pi) exponents".into()));
        }
        Ok((a, b))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        let (a, b) = self.compatible(other)?;
        if a.is_zero() {
            return Ok(b);
        }
        if b.is_zero() {
            return Ok(a);
        }
        let sum = GammaExpr { rat: &a.rat + &b.rat, ..a };
        Ok(sum.canonicalize())
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    /// `self / other` as a rational function, when both lie in the same
    /// Gamma class with the same `(4π)` exponent.
    pub fn ratio(&self, other: &Self) -> Result<RationalFunction> {
        if other.is_zero() {
            return Err(Error::DomainError("division by the zero expression".into()));
        }
        if self.is_zero() {
            return Ok(RationalFunction::zero());
        }
        let (a, b) = self.compatible(other)?;
        a.rat.checked_div(&b.rat)
    }

    /// Floating-point value at `s0`.
    pub fn eval_numeric(&self, s0: f64) -> Result<f64> {
        let r = self
            .rat
            .eval_f64(s0)
            .ok_or_else(|| Error::PoleError(format!("rational part at s = {s0}")))?;
        if self.is_zero() {
            return Ok(0.0);
        }
        let z = s0 + self.shift.to_f64();
        let g = multivariate_gamma(self.rank, z)
            .ok_or_else(|| Error::PoleError(format!("Gamma_{}({z})", self.rank)))?;
        let e = rational_to_f64(&self.four_pi.slope) * s0 + rational_to_f64(&self.four_pi.offset);
        Ok(r * g * (4.0 * PI).powf(e))
    }

    /// Exact limit `s → s0`: returns the limit of `rat` together with the
    /// Gamma factor and `(4π)` power at `s0`, which must be regular there.
    pub fn limit_at(&self, s0: &BigRational) -> Result<(BigRational, GammaValue)> {
        let value = GammaValue {
            rank: self.rank,
            arg: s0 + self.shift.to_rational(),
            four_pi_exp: self.four_pi.at(s0),
        };
        if value.is_pole() {
            return Err(Error::PoleError(value.to_string()));
        }
        if self.is_zero() {
            return Ok((BigRational::zero(), value));
        }
        let num = self.rat.num();
        let den = self.rat.den();
        let mn = num.root_multiplicity(s0);
        let md = den.root_multiplicity(s0);
        if mn > md {
            return Ok((BigRational::zero(), value));
        }
        if mn < md {
            return Err(Error::DivergesError(format!("s = {} in {}", format_rational(s0), self.rat)));
        }
        let lin = Poly::s_plus(-s0.clone());
        let strip = lin.pow(mn as u32);
        let n = num.checked_div(&strip).expect("root multiplicity");
        let d = den.checked_div(&strip).expect("root multiplicity");
        Ok((n.eval(s0) / d.eval(s0), value))
    }
}

impl PartialEq for GammaExpr {
    fn eq(&self, other: &Self) -> bool {
        let a = self.canonicalize();
        let b = other.canonicalize();
        a.rank == b.rank && a.rat == b.rat && a.shift == b.shift && a.four_pi == b.four_pi
    }
}

impl Eq for GammaExpr {}

impl fmt::Display for GammaExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let rat = self.rat.to_string();
        let trivial = self.rat.is_polynomial() && self.rat.num() == &Poly::one();
        if !trivial {
            if self.rat.is_polynomial() && self.rat.num().degree() == Some(0) {
                write!(f, "{rat} * ")?;
            } else if self.rat.is_polynomial() {
                write!(f, "({rat}) * ")?;
            } else {
                write!(f, "{rat} * ")?;
            }
        }
        if self.shift.is_zero() {
            write!(f, "Gamma_{}(s)", self.rank)?;
        } else {
            write!(f, "Gamma_{}(s + {})", self.rank, self.shift)?;
        }
        if !self.four_pi.is_zero() {
            let exponent = Poly::from_coeffs(vec![self.four_pi.offset.clone(), self.four_pi.slope.clone()]);
            write!(f, " * (4pi)^({exponent})")?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct FourPiJson {
    a: String,
    b: String,
}

#[derive(Serialize, Deserialize)]
struct GammaExprJson {
    m: u32,
    shift: String,
    num: Poly,
    den: Poly,
    four_pi: FourPiJson,
}

impl Serialize for GammaExpr {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        GammaExprJson {
            m: self.rank,
            shift: self.shift.to_string(),
            num: self.rat.num().clone(),
            den: self.rat.den().clone(),
            four_pi: FourPiJson {
                a: format_rational(&self.four_pi.slope),
                b: format_rational(&self.four_pi.offset),
            },
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for GammaExpr {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let j = GammaExprJson::deserialize(deserializer)?;
        if j.m == 0 {
            return Err(D::Error::custom("rank m must be positive"));
        }
        let shift: HalfInteger = j.shift.parse().map_err(D::Error::custom)?;
        let rat = RationalFunction::try_new(j.num, j.den).map_err(D::Error::custom)?;
        let a = parse_rational(&j.four_pi.a).map_err(D::Error::custom)?;
        let b = parse_rational(&j.four_pi.b).map_err(D::Error::custom)?;
        Ok(GammaExpr::new(j.m, rat, shift, FourPiExponent::new(a, b)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_core::{int, rat};

    fn sq(a: i64, b: i64) -> BigRational {
        rat(a, b)
    }

    #[test]
    fn canonicalize_integer_shift() {
        // Γ₂(s+1) = s(s-1/2) Γ₂(s)
        let e = GammaExpr::gamma_shifted(2, HalfInteger::from_int(1)).canonicalize();
        assert_eq!(e.shift(), &HalfInteger::zero());
        assert_eq!(e.rat().num(), &Poly::from_roots(&[int(0), sq(1, 2)]));
    }

    #[test]
    fn canonicalize_three_halves() {
        // Γ₂(s+3/2) = (s+1/2) s Γ₂(s+1/2)
        let e = GammaExpr::gamma_shifted(2, HalfInteger::from_twice(3)).canonicalize();
        assert_eq!(e.shift(), &HalfInteger::half());
        assert_eq!(e.rat().num(), &(Poly::s_plus(sq(1, 2)) * Poly::s()));
    }

    #[test]
    fn canonical_expression_is_unchanged() {
        let e = GammaExpr::from_poly(2, Poly::s());
        let c = e.canonicalize();
        assert_eq!(c.rat(), e.rat());
        assert_eq!(c.shift(), e.shift());
    }

    #[test]
    fn negative_shift_becomes_denominator() {
        let e = GammaExpr::gamma_shifted(2, HalfInteger::from_int(-1)).canonicalize();
        assert!(!e.rat().is_polynomial());
        let v = e.eval_numeric(3.3).unwrap();
        let direct = multivariate_gamma(2, 2.3).unwrap();
        assert!((v - direct).abs() / direct < 1e-13);
    }

    #[test]
    fn add_same_class() {
        let a = GammaExpr::from_poly(2, Poly::s());
        let b = GammaExpr::from_poly(2, Poly::s_plus(int(1)));
        let sum = a.add(&b).unwrap();
        assert_eq!(sum, GammaExpr::from_poly(2, Poly::from_ints(&[1, 2])));
    }

    #[test]
    fn add_rejects_parity_mismatch_and_four_pi_mismatch() {
        let a = GammaExpr::from_poly(2, Poly::s());
        let b = GammaExpr::gamma_shifted(2, HalfInteger::half());
        assert!(matches!(a.add(&b), Err(Error::IncompatibleExpr(_))));
        let c = a.times_four_pi(&int(1), &int(0));
        assert!(matches!(a.add(&c), Err(Error::IncompatibleExpr(_))));
        assert!(a.add(&GammaExpr::zero(2).times_four_pi(&int(3), &int(0))).is_ok());
    }

    #[test]
    fn eval_gamma_two_at_two() {
        let v = GammaExpr::gamma(2).eval_numeric(2.0).unwrap();
        assert!((v - PI / 2.0).abs() < 1e-15);
    }

    #[test]
    fn eval_flags_pole() {
        let e = GammaExpr::from_poly(2, Poly::s());
        assert!(matches!(e.eval_numeric(0.0), Err(Error::PoleError(_))));
        let e = GammaExpr::new(2, RationalFunction::new(Poly::one(), Poly::s_plus(int(-3))), HalfInteger::zero(), FourPiExponent::default());
        assert!(matches!(e.eval_numeric(3.0), Err(Error::PoleError(_))));
    }

    #[test]
    fn eval_with_four_pi_power() {
        // (4π)^{-2s} Γ₂(s) at s = 3 equals (4π)^{-6} √π Γ(3) Γ(5/2)
        let e = GammaExpr::gamma(2).times_four_pi(&int(-2), &int(0));
        let expect = (4.0 * PI).powi(-6) * PI.sqrt() * 2.0 * (0.75 * PI.sqrt());
        let got = e.eval_numeric(3.0).unwrap();
        assert!((got - expect).abs() / expect < 1e-14);
    }

    fn b_rat(k: i64) -> RationalFunction {
        RationalFunction::new(Poly::from_coeffs(vec![int(0), sq(-1, 2), int(1)]), Poly::s_plus(int(k - 1)))
    }

    #[test]
    fn limits_of_the_phantom_factor() {
        let two = GammaExpr::new(2, b_rat(2), HalfInteger::from_twice(5), FourPiExponent::default());
        assert_eq!(two.limit_at(&int(0)).unwrap().0, int(0));
        let one = GammaExpr::new(2, b_rat(1), HalfInteger::from_twice(3), FourPiExponent::default());
        let (l, g) = one.limit_at(&int(0)).unwrap();
        assert_eq!(l, sq(-1, 2));
        assert_eq!(g.arg, sq(3, 2));
    }

    #[test]
    fn limit_of_s_over_s() {
        let e = GammaExpr::new(
            2,
            RationalFunction::new(Poly::s(), Poly::s()),
            HalfInteger::from_int(1),
            FourPiExponent::default(),
        );
        assert_eq!(e.limit_at(&int(0)).unwrap().0, int(1));
    }

    #[test]
    fn limit_diverges_and_pole() {
        let e = GammaExpr::new(
            2,
            RationalFunction::new(Poly::one(), Poly::s()),
            HalfInteger::from_int(3),
            FourPiExponent::default(),
        );
        assert!(matches!(e.limit_at(&int(0)), Err(Error::DivergesError(_))));
        assert!(matches!(GammaExpr::gamma(2).limit_at(&int(0)), Err(Error::PoleError(_))));
    }

    #[test]
    fn json_form() {
        let e = GammaExpr::new(
            2,
            RationalFunction::from(Poly::from_coeffs(vec![sq(-1, 2), int(1)])),
            HalfInteger::half(),
            FourPiExponent::new(int(-2), int(-4)),
        );
        let text = serde_json::to_string(&e).unwrap();
        assert_eq!(
            text,
            r#"{"m":2,"shift":"1/2","num":["-1/2","1"],"den":["1"],"four_pi":{"a":"-2","b":"-4"}}"#
        );
        let back: GammaExpr = serde_json::from_str(&text).unwrap();
        assert_eq!(back, e);
        assert!(serde_json::from_str::<GammaExpr>(r#"{"m":2,"shift":"1/3","num":["1"],"den":["1"],"four_pi":{"a":"0","b":"0"}}"#).is_err());
    }

    #[test]
    fn display_is_readable() {
        let e = GammaExpr::from_poly(2, Poly::from_coeffs(vec![int(0), sq(1, 2), int(1)]))
            .times_four_pi(&int(-2), &int(-2));
        assert_eq!(e.to_string(), "(s^2 + 1/2*s) * Gamma_2(s) * (4pi)^(-2*s - 2)");
    }
}
