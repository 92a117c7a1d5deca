//! Small dense linear-algebra helpers shared across modules.

use nalgebra::DMatrix;
use num_complex::Complex64;

pub type CMatrix = DMatrix<Complex64>;

/// Kronecker product with the first factor as the most significant index,
/// i.e. `kron(a, b)[(i1*rb + i2), (j1*cb + j2)] = a[i1,j1] * b[i2,j2]`.
pub fn kron(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a.kronecker(b)
}

/// Identity matrix of the given size.
pub fn identity(dim: usize) -> CMatrix {
    CMatrix::identity(dim, dim)
}

/// Eigenvalues of a Hermitian matrix, ascending.
pub fn hermitian_eigenvalues(m: &CMatrix) -> Vec<f64> {
    // Symmetrize first so that tiny anti-Hermitian round-off cannot confuse
    // the solver.
    let herm = (m + m.adjoint()) * Complex64::new(0.5, 0.0);
    let mut evs: Vec<f64> = herm.symmetric_eigenvalues().iter().copied().collect();
    evs.sort_by(|a, b| a.partial_cmp(b).unwrap());
    evs
}

/// Singular values, descending (nalgebra's order).
pub fn singular_values(m: &CMatrix) -> Vec<f64> {
    m.singular_values().iter().copied().collect()
}

/// Max entrywise absolute difference.
pub fn max_abs_diff(a: &CMatrix, b: &CMatrix) -> f64 {
    (a - b).iter().map(|v| v.norm()).fold(0.0, f64::max)
}

/// `tr(m)`.
pub fn trace(m: &CMatrix) -> Complex64 {
    m.diagonal().iter().sum()
}
