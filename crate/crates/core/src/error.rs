use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Input outside the domain of an operation (bad type, malformed data, failed precondition).
    #[error("domain error: {0}")]
    Domain(String),
    /// A numerical procedure could not produce a trustworthy value.
    #[error("numeric error: {0}")]
    Numeric(String),
    /// A computation would exceed its configured size budget.
    #[error("resource limit exceeded: {0}")]
    Resource(String),
    #[error("index {index} out of range 0..={max}")]
    IndexOutOfRange { index: usize, max: usize },
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
