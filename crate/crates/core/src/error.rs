use thiserror::Error;

/// Errors raised anywhere in the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("argument {value} is outside the domain of {what}")]
    Domain { what: &'static str, value: f64 },

    #[error("degenerate interval: m = M = {0}")]
    DegenerateInterval(f64),

    #[error("invalid spectral bounds: need 0 < m <= M, got m = {m}, M = {big_m}")]
    InvalidBounds { m: f64, big_m: f64 },

    #[error("invalid mean: {0}")]
    InvalidMean(String),

    #[error("invalid parameter {name} = {value}: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("unsupported dimension {dim} (max {max})")]
    UnsupportedDimension { dim: usize, max: usize },

    #[error("function undefined at eigenvalue {0}")]
    SpectralDomain(f64),

    #[error("matrix is not positive definite: smallest eigenvalue {min}, largest {max}")]
    NotPositiveDefinite { min: f64, max: f64 },

    #[error("numerical degeneracy: {0}")]
    NumericalDegeneracy(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("malformed matrix data: {0}")]
    Format(String),
}

pub type Result<T> = std::result::Result<T, Error>;
