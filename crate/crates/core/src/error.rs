use thiserror::Error;

use crate::word::Letter;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("alphabet size {size} outside 1..={limit}")]
    AlphabetSize { size: usize, limit: usize },

    #[error("letter {letter} outside alphabet of size {size}")]
    LetterOutOfRange { letter: Letter, size: u8 },

    #[error("expected {expected} exponents, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("inflation exponents must be positive")]
    ZeroExponent,

    #[error("canonical inflation exponents overflow for length {0}")]
    ExponentOverflow(usize),

    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },

    /// Input is well formed but violates an operation's precondition.
    #[error("{0}")]
    Domain(String),

    #[error("resource limit: {0}")]
    ResourceLimit(String),
}

impl Error {
    pub(crate) fn parse(position: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            position,
            message: message.into(),
        }
    }

    pub(crate) fn domain(message: impl Into<String>) -> Self {
        Error::Domain(message.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
