use thiserror::Error;

/// Errors surfaced by the algebra engine.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("characteristic {0} out of range [2, 2^31)")]
    CharacteristicOutOfRange(u64),
    #[error("ring descriptor mismatch: {0}")]
    RingMismatch(String),
    #[error("too many variables: {0} (at most 16 supported)")]
    TooManyVariables(usize),
    #[error("variable names must be unique and nonempty")]
    BadVariableNames,
    #[error("exponent overflow while multiplying monomials")]
    ExponentOverflow,
    #[error("division by zero polynomial")]
    DivisionByZero,
    #[error("input must be homogeneous: {0}")]
    Inhomogeneous(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("unsupported route: {0}")]
    UnsupportedRoute(String),
    #[error("witness search exhausted its budget after finding {found} of {target} elements")]
    WitnessSearchFailed { target: usize, found: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
