use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// Malformed input: bad files, out-of-range vertices, forbidden arguments.
    #[error("input error: {0}")]
    Input(String),
    /// The computation is mathematically undefined for this input (e.g. a pair that is not homology split).
    #[error("refused: {0}")]
    Refused(String),
    /// An internal consistency check failed. Carries enough context to reproduce.
    #[error("invariant violation: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn input<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Input(msg.into()))
}

pub(crate) fn invariant<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Invariant(msg.into()))
}
