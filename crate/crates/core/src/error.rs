use thiserror::Error;

use crate::decomposition::Spectrum;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("index {index} out of range 1..={n}")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("size {n} exceeds the cap of {cap}")]
    SizeCap { n: usize, cap: usize },

    #[error("outside the operation's domain: {0}")]
    Domain(String),

    #[error("LU breakdown at step {step}: no appreciable pivot")]
    SingularLu { step: usize },

    /// Eigenvalues were computed but eigenvectors are refused because a
    /// standard eigenvalue is repeated.
    #[error("eigenvectors unsupported for repeated standard eigenvalues")]
    MultiplicityUnsupported { spectrum: Box<Spectrum> },

    #[error("did not converge: {0}")]
    Convergence(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
