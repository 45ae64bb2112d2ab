use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("insufficient data: {0}")]
    InsufficientData(String),

    /// `k <= d`: the anticanonical bundle `O(k - d)` is not ample.
    #[error("not Fano: weight sum {weight_sum} does not exceed degree {degree}")]
    NotFano { weight_sum: u64, degree: u64 },

    /// An internal consistency check failed (two routes to the same value disagreed).
    #[error("internal assertion failed: {0}")]
    Internal(String),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
