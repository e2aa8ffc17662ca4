use thiserror::Error;

/// Errors raised by the algebra, certificate and numeric layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ring mismatch: operands live over F_{left} and F_{right}")]
    RingMismatch { left: u64, right: u64 },

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("{what} = {value} exceeds the configured limit {limit}")]
    ResourceLimit { what: &'static str, value: u64, limit: u64 },

    #[error("enumeration budget exceeded: {needed} > {budget}")]
    BudgetExceeded { needed: u64, budget: u64 },

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("inexact division: {0}")]
    InexactDivision(String),

    #[error("interpolation bound violated: {0}")]
    BoundViolation(String),

    #[error("numeric failure: {0}")]
    NumericFailure(String),

    #[error("invariant violated: {0}")]
    InvariantViolation(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
