use crate::scalar::FieldKind;
use thiserror::Error;

/// Errors shared by all modules of the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("modulus {0} is not prime")]
    NotPrime(u32),
    #[error("modulus {0} is out of range (need 2 <= p < 65536)")]
    ModulusOutOfRange(u32),
    #[error("field mismatch: {left} vs {right}")]
    FieldMismatch { left: FieldKind, right: FieldKind },
    #[error("dimension mismatch: expected {expected_rows}x{expected_cols}, got {rows}x{cols}")]
    DimensionMismatch {
        expected_rows: usize,
        expected_cols: usize,
        rows: usize,
        cols: usize,
    },
    #[error("matrix dimensions must be at least 1x1")]
    EmptyMatrix,
    #[error("matrix of {rows}x{cols} exceeds the entry cap of 2^24")]
    SizeCap { rows: usize, cols: usize },
    #[error("matrix is {rows}x{cols}, not square")]
    NotSquare { rows: usize, cols: usize },
    #[error("factor position {j} out of range 1..={k}")]
    FactorOutOfRange { j: usize, k: u32 },
    #[error("Kronecker order k must be at least 1")]
    OrderZero,
    #[error("division by zero")]
    DivisionByZero,
    #[error("cannot convert a {from} element to {to}")]
    UnsupportedConversion { from: FieldKind, to: FieldKind },
    #[error("field characteristic {characteristic} divides k = {k}")]
    CharacteristicObstruction { characteristic: u32, k: u32 },
    #[error("cannot parse {token:?} as a {kind} scalar: {reason}")]
    ParseScalar {
        token: String,
        kind: FieldKind,
        reason: String,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
