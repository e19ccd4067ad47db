use thiserror::Error;

/// Errors raised by field constructors, element operations and kernels.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("prime {p} is outside the {repr} range (largest admissible prime is {max})")]
    PrimeOutOfRange {
        p: u64,
        max: u64,
        repr: &'static str,
    },

    #[error("division by zero")]
    DivisionByZero,

    #[error("domain error: {0}")]
    Domain(&'static str),

    #[error("{0}")]
    Unsupported(&'static str),

    #[error("vector length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("dimension {dim} exceeds the overflow-free bound {bound}; use a blocked kernel")]
    DimensionTooLarge { dim: usize, bound: u64 },

    #[error("kernel configuration mismatch: {0}")]
    ConfigMismatch(&'static str),

    #[error("tables need {needed} bytes but the budget is {budget} bytes")]
    TableBudget { needed: u64, budget: u64 },

    #[error("field construction failed: {0}")]
    Construction(&'static str),

    #[error("invalid table file: {0}")]
    Format(String),
}

pub type Result<T> = std::result::Result<T, Error>;
