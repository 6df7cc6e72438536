use thiserror::Error;

/// Errors produced while loading inputs or calling the enumeration engine.
#[derive(Debug, Error)]
pub enum Error {
    /// Malformed text input. `line` is 1-based.
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    /// The input parsed but does not describe a valid finite metric.
    #[error("invalid distance matrix: {0}")]
    InvalidMatrix(String),

    /// Duplicate, out-of-range or otherwise unusable simplex vertices.
    #[error("invalid simplex: {0}")]
    InvalidSimplex(String),

    /// An operation was called outside its precondition.
    #[error("contract violation: {0}")]
    Contract(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// True for errors caused by bad input data, as opposed to bad arguments.
    pub fn is_data_error(&self) -> bool {
        matches!(
            self,
            Error::Parse { .. } | Error::InvalidMatrix(_) | Error::Io(_)
        )
    }

    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
