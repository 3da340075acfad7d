use thiserror::Error;

/// Errors raised by the library.
///
/// `InvalidInput` covers caller mistakes (bad parameters, violated
/// preconditions). `Invariant` is reserved for results that contradict a
/// proven property of the objects involved; callers should treat it as a
/// bug report, never as an expected outcome.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("{value} is not admissible: {reason}")]
    NotRepresentable { value: i64, reason: String },

    #[error("singular coefficient matrix")]
    Singular,

    #[error("lattice is not well-rounded")]
    NotWellRounded,

    #[error("conjecture check failed: {0}")]
    Conjecture(String),

    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidInput(msg.into())
}
