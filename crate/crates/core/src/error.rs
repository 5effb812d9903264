use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("field mismatch: {0}")]
    FieldMismatch(String),
    #[error("not a prime: {0}")]
    NotPrime(u64),
    #[error("operation requires a finite field")]
    InfiniteField,
    #[error("enumeration budget exceeded: needs {required} but budget is {budget}")]
    BudgetExceeded { required: u128, budget: u64 },
    #[error("module is not finitely generated projective: {0}")]
    NotProjective(String),
    #[error("subspace is not closed under multiplication")]
    NotClosed,
    #[error("subspace does not contain the unit")]
    MissingUnit,
    #[error("map is not well defined on the tensor quotient: {0}")]
    IllDefined(String),
    #[error("map is not colinear: {0}")]
    NotColinear(String),
    #[error("no membership certificate: {0}")]
    NoCertificate(String),
    #[error("invalid construction: {0}")]
    Invalid(String),
    #[error("counterexample found: {0}")]
    Counterexample(String),
}

pub type Result<T> = std::result::Result<T, Error>;
