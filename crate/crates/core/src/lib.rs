//! Determinants and spectra of dual quaternion Hermitian matrices.
//!
//! Indices on the public surface are 1-based unless a function says
//! otherwise; matrix indexing with `m[(i, j)]` is 0-based.

pub mod decomposition;
pub mod determinant;
pub mod error;
pub mod matrix;
pub mod oracle;
pub mod permutation;
pub mod scalar;
pub mod verify;

pub use decomposition::{
    char_poly, hermitian_eig, lu_partial_pivot, quasi_char_poly_eval, singularity_classify,
    unitary_to_diagonal, DiagonalReduction, DualPolynomial, DualRoot, LuFactors, SingularityReport,
    Spectrum,
};
pub use determinant::{
    chen_det, cycle_value, determinant, kyrchei_det, moore_det, moore_det_dyson, quasi_det,
    DetDefinition, DetResult, DEFAULT_DET_CAP,
};
pub use error::{Error, Result};
pub use matrix::{classify, DQMatrix, Elementary, HermitianKind, HermitianTag, Line};
pub use permutation::{
    decompose, enumerate, enumerate_chen, enumerate_kyrchei, enumerate_moore, Convention,
    CycleDecomposition, KyrcheiMode, Permutation,
};
pub use scalar::{dual_compare, DualNumber, DualQuaternion, Quaternion};
pub use verify::{run_verify, VerifyReport};
