//! The representation `ρ_r(g) P(z) = P(z·g)` of GL(2) on homogeneous
//! polynomials of degree `r`, its SO(2)-weight basis `V_k` and the
//! polynomials `P_k(ν, Y)`.
//!
//! Monomials are ordered `z1^{r-ν} z2^ν` with `ν` ascending.

use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, ToPrimitive, Zero};

use crate::combinatorics::c_k_nu;
use crate::error::{Error, Result};
use crate::exact_core::{big, binomial, ExactMatrix, GaussianRational};

/// Dominant weight `(l1, l2)`; the representation is `ρ_{l1-l2} ⊗ det^{l2}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct HighestWeight {
    pub l1: i64,
    pub l2: i64,
}

impl HighestWeight {
    pub fn new(l1: i64, l2: i64) -> Result<Self> {
        if l1 < l2 {
            return Err(Error::DomainError(format!("({l1},{l2}) is not dominant")));
        }
        Ok(HighestWeight { l1, l2 })
    }

    pub fn r(&self) -> u32 {
        (self.l1 - self.l2) as u32
    }

    /// The absolute weight `κ = l2`.
    pub fn kappa(&self) -> i64 {
        self.l2
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BasisTag {
    Monomial,
    Weight,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RepMatrix {
    pub basis: BasisTag,
    pub matrix: ExactMatrix,
}

/// Columns are the coordinates of `V_0, …, V_r` in the monomial basis.
#[derive(Clone, Debug, PartialEq)]
pub struct WeightBasis {
    pub r: u32,
    pub columns: ExactMatrix,
}

/// Scalars the representation can be evaluated over: Gaussian rationals,
/// complex floats, or polynomials in the entries of `Y`.
pub trait RepScalar:
    Clone + Zero + One + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> + Neg<Output = Self>
{
    fn imag_unit() -> Self;
    fn from_integer(n: &BigInt) -> Self;
}

impl RepScalar for GaussianRational {
    fn imag_unit() -> Self {
        GaussianRational::i()
    }
    fn from_integer(n: &BigInt) -> Self {
        GaussianRational::real(big(n))
    }
}

impl RepScalar for Complex64 {
    fn imag_unit() -> Self {
        Complex64::i()
    }
    fn from_integer(n: &BigInt) -> Self {
        Complex64::new(n.to_f64().unwrap_or(f64::NAN), 0.0)
    }
}

fn pow<T: Clone + One + Mul<Output = T>>(x: &T, e: usize) -> T {
    (0..e).fold(T::one(), |acc, _| acc * x.clone())
}

/// Coefficients in `z2` of `(a z1 + b z2)^p (c z1 + d z2)^q`, from `z2^0` up.
fn binary_form<T>(a: &T, b: &T, c: &T, d: &T, p: usize, q: usize) -> Vec<T>
where
    T: Clone + Zero + One + Add<Output = T> + Mul<Output = T>,
{
    let mut acc = vec![T::one()];
    let factors = std::iter::repeat_n((a, b), p).chain(std::iter::repeat_n((c, d), q));
    for (x, y) in factors {
        let mut next = vec![T::zero(); acc.len() + 1];
        for (i, v) in acc.iter().enumerate() {
            next[i] = next[i].clone() + v.clone() * x.clone();
            next[i + 1] = next[i + 1].clone() + v.clone() * y.clone();
        }
        acc = next;
    }
    acc
}

/// Entries `[row][column]` of `ρ_r(g)` in the monomial basis: column `ν`
/// holds the expansion of `((z·g)_1)^{r-ν} ((z·g)_2)^ν`.
pub fn rho_entries<T>(r: u32, g: &[[T; 2]; 2]) -> Vec<Vec<T>>
where
    T: Clone + Zero + One + Add<Output = T> + Mul<Output = T>,
{
    let r = r as usize;
    // (z·g)_1 = z1 g11 + z2 g21, (z·g)_2 = z1 g12 + z2 g22
    let cols: Vec<Vec<T>> = (0..=r)
        .map(|nu| binary_form(&g[0][0], &g[1][0], &g[0][1], &g[1][1], r - nu, nu))
        .collect();
    (0..=r)
        .map(|row| (0..=r).map(|col| cols[col][row].clone()).collect())
        .collect()
}

pub fn rho_matrix(r: u32, g: &[[GaussianRational; 2]; 2]) -> RepMatrix {
    let e = rho_entries(r, g);
    RepMatrix {
        basis: BasisTag::Monomial,
        matrix: ExactMatrix::from_fn(r as usize + 1, |i, j| e[i][j].clone()),
    }
}

/// `ρ_r(g)` for a rational matrix given by integer entries.
pub fn rho_matrix_int(r: u32, g: [[i64; 2]; 2]) -> RepMatrix {
    let g = g.map(|row| row.map(|x| GaussianRational::real(crate::exact_core::int(x))));
    rho_matrix(r, &g)
}

/// Coordinates of `V_k` in the monomial basis: `i^ν c_k(ν)`.
pub fn weight_vector<T: RepScalar>(r: u32, k: u32) -> Vec<T> {
    let i = T::imag_unit();
    (0..=r as i64)
        .map(|nu| pow(&i, nu as usize) * T::from_integer(&c_k_nu(r as i64, k as i64, nu)))
        .collect()
}

pub fn weight_basis(r: u32) -> WeightBasis {
    let columns: Vec<Vec<GaussianRational>> = (0..=r).map(|k| weight_vector(r, k)).collect();
    WeightBasis { r, columns: ExactMatrix::from_columns(&columns) }
}

impl WeightBasis {
    pub fn inverse(&self) -> ExactMatrix {
        self.columns.inverse().expect("weight basis is invertible")
    }

    /// `W^{-1} M W` for a monomial-basis matrix `M`.
    pub fn conjugate(&self, m: &RepMatrix) -> RepMatrix {
        match m.basis {
            BasisTag::Weight => m.clone(),
            BasisTag::Monomial => RepMatrix {
                basis: BasisTag::Weight,
                matrix: &(&self.inverse() * &m.matrix) * &self.columns,
            },
        }
    }
}

/// `P_k(ν, Y)` from the explicit sum over `j`. Generic so that `Y` may be
/// numeric or symbolic.
pub fn p_k_generic<T: RepScalar>(r: u32, k: u32, nu: u32, y11: &T, y22: &T, y12: &T) -> T {
    let (r, k, nu) = (r as i64, k as i64, nu as i64);
    let i = T::imag_unit();
    let iy = i * y12.clone();
    let a = y11.clone() - iy.clone(); // Y11 - iY12
    let b = y11.clone() + iy.clone(); // Y11 + iY12
    let c = y22.clone() + iy.clone(); // Y22 + iY12
    let d = y22.clone() - iy; // Y22 - iY12
    let mut acc = T::zero();
    for j in 0..=(r - k).min(nu) {
        let coeff = binomial(r - k, j) * binomial(k, nu - j);
        if coeff.is_zero() {
            continue;
        }
        let coeff = if j % 2 == 0 { coeff } else { -coeff };
        let term = T::from_integer(&coeff)
            * pow(&a, (r - k - j) as usize)
            * pow(&b, (k + j - nu) as usize)
            * pow(&c, j as usize)
            * pow(&d, (nu - j) as usize);
        acc = acc + term;
    }
    acc
}

pub fn p_k_value(r: u32, k: u32, nu: u32, y: &[[GaussianRational; 2]; 2]) -> GaussianRational {
    p_k_generic(r, k, nu, &y[0][0], &y[1][1], &y[0][1])
}

/// `P_k(ν, Y)` via the matrix route: coordinate `ν` of `ρ_r(Y) V_k`,
/// divided by `i^ν`.
pub fn p_k_via_matrix(r: u32, k: u32, nu: u32, y: &[[GaussianRational; 2]; 2]) -> GaussianRational {
    let m = rho_matrix(r, y);
    let v = weight_vector::<GaussianRational>(r, k);
    let w = m.matrix.mul_vec(&v);
    let i_nu = GaussianRational::i_pow(nu as i64);
    &w[nu as usize] / &i_nu
}

/// `ρ_r(k_θ)` with `k_θ = [[cos θ, -sin θ], [sin θ, cos θ]]`, in complex floats.
pub fn rho_rotation(r: u32, theta: f64) -> Vec<Vec<Complex64>> {
    let (s, c) = theta.sin_cos();
    let g = [[Complex64::new(c, 0.0), Complex64::new(-s, 0.0)], [Complex64::new(s, 0.0), Complex64::new(c, 0.0)]];
    rho_entries(r, &g)
}

/// Largest deviation `|ρ_r(k_θ) V_k - e^{iθ(r-2k)} V_k|` over all `k`.
pub fn so2_eigen_residual(r: u32, theta: f64) -> f64 {
    let m = rho_rotation(r, theta);
    let n = r as usize + 1;
    let mut worst: f64 = 0.0;
    for k in 0..=r {
        let v = weight_vector::<Complex64>(r, k);
        let phase = Complex64::from_polar(1.0, theta * (r as f64 - 2.0 * k as f64));
        for row in 0..n {
            let mv: Complex64 = (0..n).map(|col| m[row][col] * v[col]).sum();
            worst = worst.max((mv - phase * v[row]).norm());
        }
    }
    worst
}
