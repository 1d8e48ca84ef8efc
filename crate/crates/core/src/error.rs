use thiserror::Error;

/// Errors produced by the core library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid ball parameters: {0}")]
    InvalidBall(String),

    #[error("invalid group: {0}")]
    InvalidGroup(String),

    #[error("element has {found} components but the group has {expected}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("enumeration of {requested} items exceeds the cap of {cap}")]
    CapExceeded { requested: String, cap: u128 },

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("invalid code: {0}")]
    InvalidCode(String),

    #[error("invalid matrix: {0}")]
    InvalidMatrix(String),

    #[error("lattice is singular")]
    SingularLattice,

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("checkpoint error: {0}")]
    Checkpoint(String),

    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
