//! Dense complex linear algebra: matrices, the Hermitian eigensolver and
//! spectral functions built on it.

pub mod eig;
pub mod matrix;
pub mod spectral;
pub mod svd;

pub use eig::{
    hermitian_eig, hermitian_eigenvalues, hermitian_max_eigenvalue, HermitianEigenDecomposition, DEFAULT_EIG_TOL,
};
pub use matrix::{inner, vector_norm, ComplexMatrix, UnitVector};
pub use spectral::{
    apply_spectral_function, clamp_psd, hermitian_singular_values, matrix_abs, singular_values,
    top_eigenpair, weighted_power_sum_eigenvalues, GramSpectrum, SpectralFn,
};
pub use svd::graded_singular_values;

/// Conjugate transpose; see [`ComplexMatrix::adjoint`].
pub fn adjoint(m: &ComplexMatrix) -> ComplexMatrix {
    m.adjoint()
}

pub fn matmul(a: &ComplexMatrix, b: &ComplexMatrix) -> crate::Result<ComplexMatrix> {
    a.matmul(b)
}

pub fn real_part(m: &ComplexMatrix) -> ComplexMatrix {
    m.real_part()
}
