//! Error type shared by all modules.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// The coupling `b` vanishes; diagonal Hamiltonians decouple and are out of scope.
    #[error("coupling b must be nonzero (diagonal matrices are rejected)")]
    DiagonalInput,
    /// An operation that only makes sense at an exceptional point was called away from one.
    #[error("not an exceptional point: |mu| exceeds the tolerance")]
    NotExceptional,
    /// A matrix that must be inverted or normalized is numerically singular.
    #[error("matrix is numerically singular")]
    SingularMatrix,
    /// `b*mu` is real and positive (elliptic): the polarisation oscillates forever
    /// and no eigenstate dominates.
    #[error("no dominant eigenstate: b*mu is real positive (elliptic)")]
    NoDominantState,
    /// The adaptive step size underflowed.
    #[error("integrator step size underflow near t = {t}")]
    IntegratorFailure { t: f64 },
    /// A parameter is NaN or infinite.
    #[error("non-finite parameter: {0}")]
    NonFinite(&'static str),
    /// A parameter is outside its documented range.
    #[error("invalid parameter: {0}")]
    InvalidParameter(&'static str),
}

pub type Result<V> = std::result::Result<V, Error>;
