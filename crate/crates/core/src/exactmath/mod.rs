//! Exact scalars (prime fields and arbitrary-precision rationals) and dense
//! matrix algebra over them: reduced echelon form, rank, kernel, determinant.
//!
//! Values are immutable once built and every operation is a pure function.

mod field;
mod matrix;

pub use field::{
    format_rational, is_prime, parse_rational, rat, Field, PrimeField, Rational, RationalField,
    EXCLUDED_CHARACTERISTICS,
};
pub use matrix::{normalize_leading, rank_of_rows, Matrix, Rref};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MathError {
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("characteristic {0} is excluded (must not be 2, 3 or 5)")]
    ExcludedCharacteristic(u32),
    #[error("modulus {0} exceeds 2^31")]
    ModulusTooLarge(u32),
    #[error("{0} is not invertible")]
    NotInvertible(String),
    #[error("shape mismatch: expected {expected}, got {got}")]
    Shape { expected: usize, got: usize },
    #[error("matrix is {rows}x{cols}, not square")]
    NotSquare { rows: usize, cols: usize },
    #[error("entry {element} is not a canonical element of the field of characteristic {characteristic}")]
    ForeignElement { element: String, characteristic: u32 },
    #[error("malformed rational literal {0:?}")]
    BadRational(String),
}
