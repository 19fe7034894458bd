use thiserror::Error;

/// Errors raised by state construction, analysis and protocol evaluation.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// The input matrix is not an admissible state for the requested operation
    /// (e.g. a mixed state where a pure one is required).
    #[error("invalid state: {0}")]
    InvalidState(String),

    #[error("numerical domain error: {0}")]
    NumericalDomain(String),

    /// The state lacks the symmetry a closed-form evaluation relies on.
    #[error("unsupported state: {0}")]
    UnsupportedState(String),

    #[error("no solution: {message} (best residual {residual:.3e})")]
    NoSolution { message: String, residual: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid_arg<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidArgument(msg.into()))
}
