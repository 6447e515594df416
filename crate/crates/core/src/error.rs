use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("argument out of range: {0}")]
    OutOfRange(String),
    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),
    #[error("truncation order too low: need at least {needed}, have {have}")]
    OrderTooLow { needed: usize, have: usize },
    #[error("no solution: {0}")]
    NoSolution(String),
    #[error("series not matched: first mismatch at q^{index}")]
    FitMismatch { index: usize },
    #[error("value requested beyond the evaluation bound {bound} (|lambda| = {size})")]
    BeyondBound { bound: usize, size: usize },
    #[error("parse error at byte {offset}: expected {expected}")]
    Parse { offset: usize, expected: String },
}

pub type Result<T> = std::result::Result<T, Error>;
