use thiserror::Error;

/// Errors raised across the crate.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("vector length {0} is outside the supported range 1..=64")]
    UnsupportedLength(usize),

    #[error("enumerating 2^{log2_size} elements exceeds the cap of {cap}")]
    CapExceeded { log2_size: u32, cap: u64 },

    #[error("invalid code: {0}")]
    InvalidCode(String),

    #[error("invalid gate: {0}")]
    InvalidGate(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("precondition violated: {0}")]
    Precondition(String),
}

pub type Result<T> = std::result::Result<T, Error>;
