use thiserror::Error;

use crate::exactla::Field;

#[derive(Debug, Error)]
pub enum Error {
    #[error("field mismatch: expected {expected}, found {found}")]
    FieldMismatch { expected: Field, found: Field },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("invalid group: {0}")]
    InvalidGroup(String),
    #[error("invalid algebra: {0}")]
    InvalidAlgebra(String),
    #[error("invalid module: {0}")]
    InvalidModule(String),
    #[error("algebra mismatch: {0}")]
    AlgebraMismatch(String),
    #[error("grading group mismatch")]
    GroupMismatch,
    #[error("side mismatch: {0}")]
    SideMismatch(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("sequence is not exact: {0}")]
    NotExact(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
