use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not Hermitian (max |A - A^dagger| = {deviation:e})")]
    NotHermitian { deviation: f64 },

    #[error("Jacobi eigensolver did not converge after {sweeps} sweeps")]
    NoConvergence { sweeps: usize },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("parameter out of domain: {0}")]
    ParamDomain(String),

    #[error("invalid state: {0}")]
    InvalidState(String),

    #[error("observable is degenerate (eigenvalue gap {gap:e})")]
    DegenerateObservable { gap: f64 },

    #[error("curves share only {points} interpolation points (need at least {required})")]
    InsufficientOverlap { points: usize, required: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
