use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Operands live on different strand counts or permutation degrees.
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("invalid argument: {0}")]
    Argument(String),

    /// Text input rejected; `line` and `column` are 1-based.
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("resource guard exceeded: {0}")]
    Resource(String),

    #[error("shape error: {0}")]
    Shape(String),

    /// An internal identity failed to hold. Always a bug.
    #[error("internal consistency check failed: {0}")]
    Consistency(String),

    #[error("zero-dimensional representation: {0}")]
    ZeroDimensional(String),
}

impl Error {
    pub(crate) fn parse(column: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line: 1,
            column,
            message: message.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
