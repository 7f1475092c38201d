//! Error type shared across the crate.
//!
//! Variants are split into two classes. Input errors describe problems with
//! user-supplied data (malformed polynomials, invalid graph documents,
//! violated germ preconditions) and map to exit code 2 in the CLI. Internal
//! errors signal that a structural invariant the algorithms guarantee has
//! failed, and map to exit code 3; they always indicate a bug, never bad
//! input.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    // ---- input errors ----
    #[error("parse error at {line}:{col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },

    #[error("graph document error at {pointer}: {msg}")]
    GraphDocument { pointer: String, msg: String },

    #[error("invalid germ pair: {0}")]
    GermPair(String),

    #[error("graph validation failed: {0}")]
    GraphValidation(String),

    #[error("multiplicity system has no positive integral solution at vertex {vertex}: {msg}")]
    MultiplicitySystem { vertex: i64, msg: String },

    #[error("tower depth cap {cap} exceeded while adjoining a degree-{degree} root")]
    TowerDepth { cap: usize, degree: usize },

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),

    // ---- internal errors ----
    #[error("blowup budget of {cap} exceeded; resolution should have terminated")]
    BlowupBudget { cap: u64 },

    #[error("internal consistency failure: {0}")]
    Internal(String),
}

impl Error {
    /// True for errors caused by user input, false for internal failures.
    pub fn is_input(&self) -> bool {
        !matches!(self, Error::BlowupBudget { .. } | Error::Internal(_))
    }

    pub fn internal(msg: impl Into<String>) -> Self {
        Error::Internal(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
