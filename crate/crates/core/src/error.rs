use thiserror::Error;

/// Failure modes shared across the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Argument or order outside the supported envelope.
    #[error("domain error: {0}")]
    Domain(String),
    /// An iterative method did not reach its tolerance.
    #[error("no convergence: {0}")]
    Convergence(String),
    /// Input that cannot be processed at all (empty sample sets, bad configs).
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}

pub(crate) fn convergence(msg: impl Into<String>) -> Error {
    Error::Convergence(msg.into())
}
