//! Crate-wide error type.

use thiserror::Error;

/// Errors surfaced by the library.
///
/// The split mirrors what callers need to distinguish: bad arguments or
/// mismatched objects ([`Error::Usage`]), mathematical preconditions that
/// the caller failed to establish ([`Error::Precondition`]), operations
/// that are deliberately out of scope ([`Error::Unsupported`]), malformed
/// textual input ([`Error::Parse`]), and plain I/O failures.
#[derive(Debug, Error)]
pub enum Error {
    #[error("usage error: {0}")]
    Usage(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    pub fn usage(msg: impl Into<String>) -> Self {
        Error::Usage(msg.into())
    }

    pub fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }

    pub fn unsupported(msg: impl Into<String>) -> Self {
        Error::Unsupported(msg.into())
    }

    pub fn parse(msg: impl Into<String>) -> Self {
        Error::Parse(msg.into())
    }
}
