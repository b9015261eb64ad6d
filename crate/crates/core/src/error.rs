use thiserror::Error;

/// Errors raised by the norm, operator and index routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("invalid norm descriptor: {0}")]
    InvalidDescriptor(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("isometry index must be 1..=4, got {0}")]
    InvalidIsometry(usize),
    #[error("inconsistent contact vector: {0}")]
    InconsistentContact(String),
    #[error("out of scope: {0}")]
    OutOfScope(String),
    #[error("p = {0} is outside the certified range [3/2, 3]")]
    OutOfCertification(f64),
    #[error("internal inconsistency: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
