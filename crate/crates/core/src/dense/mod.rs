//! Dense complex linear algebra: matrices, SVD, LU and the QZ algorithm.

mod lu;
mod matrix;
mod qz;
mod rotation;
mod svd;

use alloc::vec::Vec;

use num_traits::Float;

pub use lu::{LogDet, Lu};
pub use matrix::{inner, norm, normalize_with_phase, ComplexMatrix};
pub use qz::{generalized_eig, generalized_eig_with_cutoff, GeneralizedEigenDecomposition, DEFAULT_INFINITE_CUTOFF};
pub use svd::{nullspace_basis, rank_with_tol, svd, Svd};

use crate::{Error, Result};

/// `G^{-1/2}` for a Hermitian positive definite `G`.
pub fn hermitian_inverse_sqrt(g: &ComplexMatrix) -> Result<ComplexMatrix> {
    if !g.is_square() {
        return Err(Error::DimensionMismatch(alloc::format!(
            "inverse square root needs a square matrix, got {}x{}",
            g.rows(),
            g.cols()
        )));
    }
    let d = svd(g)?;
    let smax = d.singular_values.first().copied().unwrap_or(0.0);
    if d.singular_values.iter().any(|&s| s <= smax * 1e-14 || s == 0.0) {
        return Err(Error::Degenerate("Gram matrix is numerically singular"));
    }
    // for HPD input U = V, so V diag(s^{-1/2}) V^* is the principal root
    let mut vs = d.right_vectors.clone();
    let scales: Vec<f64> = d.singular_values.iter().map(|s| 1.0 / s.sqrt()).collect();
    for j in 0..vs.cols() {
        for i in 0..vs.rows() {
            vs[(i, j)] *= scales[j];
        }
    }
    Ok(vs.matmul(&d.right_vectors.adjoint()))
}
