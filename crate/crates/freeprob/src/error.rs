use num_complex::Complex64;
use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// Argument outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// Evaluation point coincides with (or is within 1e-12 of) a pole.
    #[error("pole at z = {location}")]
    Pole { location: Complex64 },

    /// An iterative scheme did not reach the requested tolerance.
    #[error("did not converge in {context}: achieved {achieved:.3e}, requested {requested:.3e}")]
    NonConvergence {
        context: &'static str,
        achieved: f64,
        requested: f64,
    },

    /// Division by a vanishing transform value.
    #[error("zero divisor: |G(z)| vanishes at z = {location}")]
    ZeroDivisor { location: Complex64 },

    /// Analytic-continuation recursion exceeded its depth cap.
    #[error("continuation depth {needed} exceeds cap {cap}")]
    DepthOverflow { needed: usize, cap: usize },

    /// Measure or sequence tag not recognized or not implemented.
    #[error("unsupported tag `{0}`")]
    UnsupportedTag(String),

    /// A moment/cumulant sequence is too short for the requested order.
    #[error("insufficient order: need {needed}, have {have}")]
    InsufficientOrder { needed: usize, have: usize },

    /// Malformed configuration file.
    #[error("config error at line {line}: {msg}")]
    Config { line: usize, msg: String },

    /// Malformed numeric or measure-tag input.
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
