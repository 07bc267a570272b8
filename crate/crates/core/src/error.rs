use thiserror::Error;

/// Errors raised by the engine.
///
/// The variants map onto the CLI exit codes: `Parse`/`Invalid` are input
/// validation failures (2), `Precondition`/`Criterion` are refused operations (3).
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("criterion fails: {0}")]
    Criterion(String),
    #[error("digest mismatch: certificate was issued for a different vector")]
    DigestMismatch,
    #[error("reduction step broke its contract: {0}")]
    Internal(String),
    #[error("step budget exceeded after {0} steps")]
    Budget(usize),
}

pub type Result<T> = std::result::Result<T, Error>;
