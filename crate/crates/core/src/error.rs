use thiserror::Error;

/// Errors reported by the exact and analytic kernels.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero: {numerator} / 0")]
    DivisionByZero { numerator: String },

    #[error("index {index} is not covered by the Bernoulli table (max index {max_index})")]
    IndexOutOfTable { index: usize, max_index: usize },

    #[error("matrix of size {size} is too small, row {needed} requested")]
    SizeTooSmall { needed: usize, size: usize },

    #[error("zero diagonal entry at row {row}; matrix is not invertible")]
    ZeroDiagonal { row: usize },

    #[error("row {row} mixes signs: column {column} disagrees with earlier entries")]
    MixedSigns { row: usize, column: usize },

    #[error("row {row} is not strictly decreasing at column {column}")]
    OrderingViolation { row: usize, column: usize },

    #[error("{what} out of range: {value}")]
    OutOfRange { what: &'static str, value: i64 },

    #[error("{name} must be positive, got {value}")]
    NonPositiveArgument { name: &'static str, value: String },

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
