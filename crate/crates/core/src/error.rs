use thiserror::Error;

use crate::report::ValidationReport;

/// Failures that are not axiom violations: the input does not even have the
/// shape of the structure it claims to be, or an operation was asked to do
/// something it refuses to do.
#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed input: {0}")]
    Structure(String),

    #[error("axioms violated: {0}")]
    Axioms(ValidationReport),

    #[error("endpoint mismatch: {0}")]
    Mismatch(String),

    #[error("enumeration bound exceeded: requested size {requested}, limit {limit}")]
    BoundExceeded { requested: usize, limit: usize },

    #[error("refutation: {0}")]
    Refutation(String),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),

    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn structure<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Structure(msg.into()))
}
