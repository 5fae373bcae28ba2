use num_complex::Complex64;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("series did not converge after {terms} terms (spread {spread:.3e}, last partial sum {last})")]
    Convergence { last: Complex64, terms: usize, spread: f64 },

    #[error("singular evaluation: {0}")]
    Singular(String),

    #[error("insufficient data for fit: {0}")]
    Statistics(String),

    #[error("grid mismatch: {0}")]
    GridMismatch(String),

    #[error("resolution violation: {0}")]
    Resolution(String),

    #[error(
        "density matrix is not positive semidefinite: smallest eigenvalue {min_eigenvalue:.3e} (trace {trace:.3e})"
    )]
    NotPositive { min_eigenvalue: f64, trace: f64 },

    #[error("underflow: {0}")]
    Underflow(String),

    #[error("accuracy: {0}")]
    Accuracy(String),
}

pub type Result<T> = std::result::Result<T, Error>;
