use crate::field::FieldSpec;

/// Errors raised by the toolkit.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(FieldSpec, FieldSpec),
    #[error("space mismatch: {0}")]
    ContextMismatch(String),
    #[error("degree mismatch: {0}")]
    Degree(String),
    #[error("variance mismatch: {0}")]
    Variance(String),
    #[error("invalid index set {0:?}")]
    IndexSet(Vec<usize>),
    #[error("convention violation: {0}")]
    Convention(String),
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("zero input: {0}")]
    Zero(String),
    #[error("budget exhausted: {0}")]
    Budget(String),
    #[error("non-generic input: {0}")]
    NonGeneric(String),
    #[error("operation needs a prime field with p >= {0}")]
    NeedsPrimeField(u64),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("unknown name: {0}")]
    Unknown(String),
}

pub type Result<T> = std::result::Result<T, Error>;
