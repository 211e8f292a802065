use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("invalid input: {0}")]
    Input(String),

    /// A structural guarantee of the theory did not hold for a computed
    /// object. These are never expected and must be surfaced.
    #[error("invariant violated: {0}")]
    Invariant(String),
}

impl Error {
    pub fn dim(msg: impl Into<String>) -> Self {
        Error::Dimension(msg.into())
    }

    pub fn pre(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }

    pub fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub fn invariant(msg: impl Into<String>) -> Self {
        Error::Invariant(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
