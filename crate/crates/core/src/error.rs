use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PcmError {
    #[error("matrix is not square: row {row} has {found} entries, expected {expected}")]
    NotSquare {
        row: usize,
        found: usize,
        expected: usize,
    },
    #[error("order {0} is too small, pairwise comparison matrices need n >= 3")]
    OrderTooSmall(usize),
    #[error("entry ({i}, {j}) = {value} is not a positive finite number")]
    NonPositiveEntry { i: usize, j: usize, value: f64 },
    #[error("entries ({i}, {j}) and ({j}, {i}) are not reciprocal: product {product}")]
    NotReciprocal { i: usize, j: usize, product: f64 },
    #[error("({0}, {0}) is a diagonal entry")]
    DiagonalEntry(usize),
    #[error("index {index} out of range for order {n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("permutation has length {found}, expected {expected}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("not a permutation of 0..{0}")]
    InvalidPermutation(usize),
    #[error("matrices have different orders ({expected} and {found})")]
    OrderMismatch { expected: usize, found: usize },
    #[error("invalid simplex weights: {0}")]
    InvalidWeights(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("power iteration did not converge after {0} iterations")]
    NoConvergence(usize),
    #[error("seed matrix is consistent, the construction needs an inconsistent one")]
    InputConsistent,
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, PcmError>;
