//! Error types shared across the crate.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("grade {0} out of range (multivector grades are 0..=3)")]
    InvalidGrade(usize),

    #[error("axis is not unit length (|axis| = {norm})")]
    NonUnitAxis { norm: f64 },

    #[error("speed ratio {0} is not admissible; boosts require 0 <= |v|/c < 1")]
    Superluminal(f64),

    #[error("cannot invert the zero vector")]
    ZeroVector,

    #[error("non-finite coefficients in {context}")]
    NonFinite { context: &'static str },

    #[error("exponential series did not converge within {max_terms} terms")]
    Convergence { max_terms: usize },

    #[error("orthogonality violated: |u.v| = {dot:.3e} exceeds tolerance {tol:.3e}")]
    NonOrthogonal { dot: f64, tol: f64 },

    #[error("degenerate geometry: {0}")]
    DegenerateGeometry(String),

    #[error("invariant violated: {0}")]
    InvariantViolation(String),

    #[error("mixed unit systems: c = {left} vs c = {right}")]
    UnitMismatch { left: f64, right: f64 },

    #[error("requested accuracy unreachable: {0}")]
    Accuracy(String),
}
