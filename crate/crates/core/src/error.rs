use thiserror::Error;

/// Errors raised across the bounds engine.
#[derive(Debug, Error)]
pub enum Error {
    #[error("length mismatch: {0} vs {1}")]
    LengthMismatch(usize, usize),

    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid enumerator: {0}")]
    InvalidEnumerator(String),

    #[error("table record {key}: {reason}")]
    InvalidRecord { key: String, reason: String },

    #[error("inconsistent bounds: lower {lower} ({lower_rule}) > upper {upper} ({upper_rule})")]
    Inconsistent {
        lower: u128,
        upper: u128,
        lower_rule: String,
        upper_rule: String,
    },

    #[error("precondition not certified: {0}")]
    NotCertified(String),

    #[error("solver failure: {0}")]
    Solver(String),

    #[error("asset verification failed for {name}: {reason}")]
    AssetMismatch { name: String, reason: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
