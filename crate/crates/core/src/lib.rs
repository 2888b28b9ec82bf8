//! Exact vector-valued matrix Gamma integrals over 2×2 positive definite
//! matrices, the combinatorics behind them, the Sturm-operator phantom-term
//! computation, and deterministic numeric oracles that cross-check every
//! closed form.
//!
//! The crate is organised bottom-up:
//!
//! - [`exact_core`]: big rationals, Gaussian rationals, univariate polynomials
//!   and rational functions in `s`, and the symbolic [`GammaExpr`].
//! - [`combinatorics`]: triangle numbers, `C_[q]`, `c_k(ν)` and the binomial
//!   identity relating the two closed forms of `Γ(r,0,s)`.
//! - [`gl2_rep`]: the degree-`r` polynomial model of GL(2) and its SO(2)
//!   weight basis.
//! - [`gamma_engine`]: alternating powers, derivatives of `det(T)^{-s}`,
//!   monomial integrals and the rank-two eigenvalues `Γ(r,k,s)`.
//! - [`sturm_phantom`]: the four Sturm integrals of the Maass-shifted
//!   Poincaré coefficient and their `s → 0` limit.
//! - [`numeric_oracle`]: Gauss–Laguerre quadrature in Weyl coordinates and
//!   Wirtinger finite differences.
//! - [`suite`]: named verification suites shared by the CLI and tests.

pub mod combinatorics;
pub mod error;
pub mod exact_core;
pub mod gamma_engine;
pub mod gl2_rep;
pub mod numeric_oracle;
pub mod report;
pub mod sturm_phantom;
pub mod suite;

pub use error::{Error, Result};
pub use report::{Check, Report};
pub use exact_core::{
    BigRational, ExactMatrix, GammaExpr, GammaValue, GaussianRational, HalfInteger, Poly,
    RationalFunction,
};
