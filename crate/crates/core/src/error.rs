use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// An argument violates an operation's domain (wrong ground set, unknown id, ...).
    #[error("domain error: {0}")]
    Domain(String),
    /// A hypothesis required by a construction does not hold for the input.
    #[error("rejected at {stage}: {reason}")]
    Rejected { stage: &'static str, reason: String },
    /// An internal self-check failed. Indicates a bug.
    #[error("invariant violated: {0}")]
    Invariant(String),
    /// The improvement loop ran past its iteration cap.
    #[error("search exhausted after {0} iterations")]
    SearchExhausted(usize),
    /// Brute-force oracle size guard.
    #[error("instance too large for exhaustive oracle: {0}")]
    TooLarge(String),
    /// The input is valid but falls outside what the construction handles.
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("malformed input: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}

pub(crate) fn invariant<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Invariant(msg.into()))
}
