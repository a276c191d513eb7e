use thiserror::Error;

/// Errors surfaced by exact-arithmetic operations and model evaluations.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AwError {
    /// Division by an identically-zero rational function.
    #[error("division by zero rational function")]
    DivisionByZero,

    /// A substitution sent a denominator factor (or a monomial with a
    /// negative exponent) to zero, so the specialized value does not exist.
    #[error("singular specialization: {0}")]
    SingularSpecialization(String),

    /// Exact polynomial division was requested but the divisor does not
    /// divide the dividend.
    #[error("inexact polynomial division: {0}")]
    InexactDivision(String),

    /// An exponent exceeded the configured safety bound.
    #[error("exponent overflow: |{0}| exceeds maximum {1}")]
    ExponentOverflow(i64, i64),

    /// Structurally invalid input to a combinatorial constructor
    /// (malformed partition, stripe outside the skew shape, ...).
    #[error("invalid structure: {0}")]
    InvalidStructure(String),

    /// A parameter combination outside a formula's domain of validity.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// An unknown name was passed to a registry lookup.
    #[error("unknown name: {0}")]
    UnknownName(String),
}

pub type Result<T> = std::result::Result<T, AwError>;
