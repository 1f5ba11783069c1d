use thiserror::Error;

/// Errors for state validation and eigensolver failures.
///
/// Dimension mismatches between operands are caller bugs and panic via
/// assertions instead of returning a variant.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not Hermitian: max |M - M†| entry is {deviation:.3e}")]
    NotHermitian { deviation: f64 },
    #[error("trace must be 1: |tr - 1| is {deviation:.3e}")]
    TraceNotOne { deviation: f64 },
    #[error("matrix is not positive semidefinite: smallest eigenvalue is {min_eigenvalue:.3e}")]
    NotPositive { min_eigenvalue: f64 },
    #[error("eigensolver did not converge after {sweeps} sweeps (off-diagonal norm {off_norm:.3e})")]
    NoConvergence { sweeps: usize, off_norm: f64 },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T> = std::result::Result<T, Error>;
