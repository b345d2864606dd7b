use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("support is empty")]
    EmptySupport,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("{what} {value} exceeds the configured cap {cap}")]
    ResourceCap {
        what: &'static str,
        value: u64,
        cap: u64,
    },
    #[error("validation failed: {0}")]
    Validation(String),
    #[error(transparent)]
    Parse(#[from] crate::parse::ParseError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
