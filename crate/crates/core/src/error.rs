//! Error types shared across the crate.

use thiserror::Error;

/// Library-wide error type.
///
/// The variants are grouped by how a front end should treat them: parse
/// errors carry a source location, precondition errors mean the caller
/// violated a documented contract, and invariant violations mean internal
/// data that should have been consistent was not.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("parse error at line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },

    #[error("unknown generator: {0}")]
    UnknownGenerator(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("unsupported operation: {0}")]
    Unsupported(String),

    #[error("internal invariant violated: {0}")]
    Invariant(String),

    #[error("evaluation error: {0}")]
    Eval(String),

    #[error("domain error: {0}")]
    Domain(String),
}

impl Error {
    pub fn parse(line: usize, col: usize, msg: impl Into<String>) -> Self {
        Error::Parse { line, col, msg: msg.into() }
    }

    pub fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }
}

/// Failure produced when replaying a certificate or report.
///
/// Kept separate from [`Error`] so verification failures are not confused
/// with the errors of the operations that produced the artifact.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
#[error("verification failed: {0}")]
pub struct VerifyError(pub String);

impl VerifyError {
    pub fn new(msg: impl Into<String>) -> Self {
        VerifyError(msg.into())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
