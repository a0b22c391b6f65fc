use thiserror::Error;

/// Errors raised by the numerical routines.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// Malformed input: wrong shape, broken invariant, parameter out of range.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    /// A decomposition failed its own post-conditions.
    #[error("numerical failure: {0}")]
    NumericalFailure(String),
    /// The requested dense problem exceeds the configured size bound.
    #[error("resource limit: {0}")]
    ResourceLimit(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidArgument(msg.into())
}
