//! Closed-form Gamma integrals over 2×2 positive definite matrices and the
//! scalar case of alternating powers in general rank.
//!
//! Integrals are against `det(Y)^s e^{-tr Y} dY_inv`, normalized so that the
//! trivial representation gives `Γ₂(s) = √π Γ(s) Γ(s - 1/2)`.

mod det_derivative;
mod monomial;
mod rank2;
mod ypoly;

pub use det_derivative::{det_derivative, DetDerivative, DetTerm, Direction};
pub use monomial::{monomial_integral, monomial_poly, monomial_poly_via_derivative};
pub use rank2::{
    gamma_alternating, gamma_operator, gamma_r0_first_form, gamma_r0_second_form, gamma_rk, gamma_rk_independence_check,
    gamma_rk_poly, invertibility_report, p_k_ypoly, rank2_identities, sandwich_integral, symmetric_matrix_form_check,
    trace_power_poly, GammaOperator, InvertibilityReport,
};
pub use ypoly::{YMonomial, YPoly};
