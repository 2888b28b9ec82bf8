use thiserror::Error;

/// Errors raised by the exact and numeric routines of this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("incompatible Gamma expressions: {0}")]
    IncompatibleExpr(String),
    #[error("pole at {0}")]
    PoleError(String),
    #[error("limit diverges at {0}")]
    DivergesError(String),
    #[error("argument outside domain: {0}")]
    DomainError(String),
    #[error("finite-difference step dominated by rounding noise: {0}")]
    StepSizeError(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
