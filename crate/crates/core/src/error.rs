use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("form is not closed, d of it is {residual}")]
    NotClosed { residual: String },
    #[error("not a Hamiltonian field: {0}")]
    NotHamiltonian(String),
    #[error("incompatible horn: {0}")]
    IncompatibleHorn(String),
    #[error("{pointer}: {message}")]
    Schema { pointer: String, message: String },
    #[error("verification failed: {0}")]
    Verification(String),
}

pub type Result<T> = std::result::Result<T, Error>;
