use std::fmt;

/// Errors produced by the gaitlab pipeline.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// A text document (ASF, AMC, dataset, report) could not be parsed.
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    /// Inputs violate an operation's precondition.
    #[error("{0}")]
    InvalidInput(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    /// The data is numerically degenerate (singular scatter, coincident centroids, ...).
    #[error("{0}")]
    Degenerate(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn parse(line: usize, message: impl fmt::Display) -> Self {
        Error::Parse {
            line,
            message: message.to_string(),
        }
    }

    pub(crate) fn invalid(message: impl fmt::Display) -> Self {
        Error::InvalidInput(message.to_string())
    }

    pub(crate) fn degenerate(message: impl fmt::Display) -> Self {
        Error::Degenerate(message.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
