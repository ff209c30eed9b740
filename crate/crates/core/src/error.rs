use thiserror::Error;

/// Errors surfaced by the library. Internal invariant violations panic
/// instead; every variant here corresponds to bad input or an exhausted
/// budget that the caller can act on.
#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("field size {0} exceeds 2^16")]
    FieldTooLarge(u128),
    #[error("field mismatch: {0}")]
    FieldMismatch(String),
    #[error("dimension mismatch: {0}")]
    DimMismatch(String),
    #[error("enumeration cap {cap} exceeded")]
    CapExceeded { cap: usize },
    #[error("chop dimension {dim} exceeds cap {cap}")]
    ChopCapExceeded { dim: usize, cap: usize },
    #[error("search budget {budget} exceeded (search space {needed})")]
    BudgetExceeded { budget: u128, needed: u128 },
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
