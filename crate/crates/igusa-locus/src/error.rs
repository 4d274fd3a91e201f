use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    /// Input outside the mathematical domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A bounded search ran out of room without finding a witness.
    #[error("search exhausted: {0}")]
    SearchExhausted(String),

    /// An internal consistency check failed; indicates a bug, not bad input.
    #[error("internal error: {0}")]
    Internal(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("catalog error: {0}")]
    Catalog(String),

    #[error("serialization error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub fn internal(msg: impl Into<String>) -> Self {
        Error::Internal(msg.into())
    }

    /// Process exit code for the CLI: 2 bad input, 3 i/o, 4 search exhausted.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Domain(_) | Error::Catalog(_) => 2,
            Error::Io(_) | Error::Json(_) => 3,
            Error::SearchExhausted(_) => 4,
            Error::Internal(_) => 1,
        }
    }
}
