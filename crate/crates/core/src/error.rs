use thiserror::Error;

use crate::kp::KpParams;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("factorial of negative argument {0}")]
    NegativeFactorial(i64),
    #[error("superfactorial argument {0} is below -1")]
    SuperfactorialDomain(i64),
    #[error("binomial C({0}, {1}) has a negative upper index")]
    NegativeBinomialTop(i64, i64),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatrixError {
    #[error("matrix has no rows")]
    Empty,
    #[error("matrix is not square: row {row} has {len} entries, expected {expected}")]
    NotSquare { row: usize, len: usize, expected: usize },
    #[error("connected minor A_{order}({row},{col}) does not fit in a matrix of order {size}")]
    MinorOutOfRange { order: usize, row: usize, col: usize, size: usize },
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KpError {
    #[error("parameters {params} are outside the validated domain: {reason}")]
    InvalidParams { params: KpParams, reason: &'static str },
    #[error("entry index ({i},{j}) out of range for m = {m}")]
    IndexOutOfRange { i: i64, j: i64, m: i64 },
    #[error("m = 0 has no proper corner minor")]
    NoCornerMinor,
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DetError {
    #[error("cofactor expansion refuses order {order} (limit {limit})")]
    OrderTooLarge { order: usize, limit: usize },
    #[error("recurrence divisor L_{m}({a},{b}) vanished")]
    ZeroDivisor { m: i64, a: i64, b: i64 },
    #[error("recurrence quotient at L_{m}({a},{b}) is not an integer")]
    InexactDivision { m: i64, a: i64, b: i64 },
    #[error(transparent)]
    Kp(#[from] KpError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClosedFormError {
    #[error("{factor} with argument {argument} is undefined")]
    Domain { factor: &'static str, argument: i64 },
    #[error("(2n+1)!^(n+1) / (2n+1)!! is not exact at n = {0}")]
    InexactSpecialCase(i64),
    #[error(transparent)]
    Kp(#[from] KpError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SymError {
    #[error("rewriting stalled: {0}")]
    Stalled(String),
    #[error("factor {0} has value zero under a negative exponent")]
    ZeroDenominator(String),
    #[error("cannot evaluate {0} at the given point")]
    OutOfDomain(String),
    #[error("invalid proof mode: {0}")]
    InvalidMode(String),
}
