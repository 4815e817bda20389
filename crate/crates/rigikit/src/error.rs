//! Crate-wide error type. Domain precondition failures map to CLI exit code 2,
//! I/O and parse failures to exit code 1.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("invalid construction: {0}")]
    InvalidConstruction(String),

    #[error("not a k-fold circuit: {0}")]
    NotKFoldCircuit(String),

    #[error("coloop gluing edge: {0}")]
    ColoopEdge(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("size guard exceeded: {0}")]
    SizeGuard(String),

    #[error("unknown check: {0}")]
    UnknownCheck(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("malformed JSON: {0}")]
    Json(String),
}

impl From<serde_json::Error> for Error {
    fn from(err: serde_json::Error) -> Self {
        Error::Json(err.to_string())
    }
}

impl Error {
    /// True for domain errors (exit code 2) as opposed to I/O failures (exit code 1).
    pub fn is_domain(&self) -> bool {
        !matches!(self, Error::Io(_) | Error::Json(_))
    }
}
