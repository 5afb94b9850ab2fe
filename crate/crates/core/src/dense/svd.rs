//! One-sided (Hestenes) Jacobi SVD for complex matrices.

use alloc::vec::Vec;

use num_complex::Complex64;
use num_traits::{Float, Zero};

use super::matrix::{inner, norm, orthogonalize_against};
use super::ComplexMatrix;
use crate::{Error, Result};

const MAX_SWEEPS: usize = 80;

/// Economy-size singular value decomposition `M = U diag(s) V^*`.
///
/// With `k = min(rows, cols)`, `left_vectors` is `rows x k`, `right_vectors`
/// is `cols x k` and both have orthonormal columns. Singular values are sorted
/// nonincreasing.
#[derive(Debug, Clone, PartialEq)]
pub struct Svd {
    pub left_vectors: ComplexMatrix,
    pub singular_values: Vec<f64>,
    pub right_vectors: ComplexMatrix,
}

impl Svd {
    pub fn reconstruct(&self) -> ComplexMatrix {
        let mut us = self.left_vectors.clone();
        for (j, s) in self.singular_values.iter().enumerate() {
            for i in 0..us.rows() {
                us[(i, j)] *= s;
            }
        }
        us.matmul(&self.right_vectors.adjoint())
    }
}

pub fn svd(m: &ComplexMatrix) -> Result<Svd> {
    if m.rows() >= m.cols() {
        jacobi_tall(m)
    } else {
        // M^* = V S U^*
        let t = jacobi_tall(&m.adjoint())?;
        Ok(Svd {
            left_vectors: t.right_vectors,
            singular_values: t.singular_values,
            right_vectors: t.left_vectors,
        })
    }
}

/// Full set of right singular vectors (`cols x cols`) with the matching
/// singular values; missing ones (wide input) are reported as zero.
pub(crate) fn right_singular_system(m: &ComplexMatrix) -> Result<(Vec<f64>, ComplexMatrix)> {
    let square = if m.rows() < m.cols() {
        m.pad_to(m.cols(), m.cols())
    } else {
        m.clone()
    };
    let d = jacobi_tall(&square)?;
    Ok((d.singular_values, d.right_vectors))
}

fn jacobi_tall(m: &ComplexMatrix) -> Result<Svd> {
    let rows = m.rows();
    let n = m.cols();
    // work column-wise
    // entries are scaled to at most one so squared norms cannot overflow
    let scale = m.max_abs();
    let inv = if scale > 0.0 { 1.0 / scale } else { 1.0 };
    let mut a: Vec<Vec<Complex64>> = (0..n)
        .map(|j| m.col(j).into_iter().map(|z| z * inv).collect())
        .collect();
    let mut v: Vec<Vec<Complex64>> = (0..n)
        .map(|j| {
            let mut e = alloc::vec![Complex64::zero(); n];
            e[j] = Complex64::new(1.0, 0.0);
            e
        })
        .collect();
    let tol = f64::EPSILON * (rows.max(1) as f64).sqrt();
    let frob_sqr: f64 = a.iter().map(|c| norm_sqr(c)).sum();
    // columns below this are already at roundoff level of the whole matrix
    let negligible = (f64::EPSILON * f64::EPSILON) * frob_sqr;
    let mut converged = n < 2;
    for _ in 0..MAX_SWEEPS {
        if converged {
            break;
        }
        let mut rotated = false;
        for p in 0..n - 1 {
            for q in p + 1..n {
                let alpha = norm_sqr(&a[p]);
                let beta = norm_sqr(&a[q]);
                let gamma = inner(&a[p], &a[q]);
                let g = gamma.norm();
                if g == 0.0 || g <= tol * (alpha * beta).sqrt() || alpha.min(beta) <= negligible {
                    continue;
                }
                rotated = true;
                let zeta = (beta - alpha) / (2.0 * g);
                let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                let phase = gamma / g;
                rotate_pair(&mut a, p, q, c, s, phase);
                rotate_pair(&mut v, p, q, c, s, phase);
            }
        }
        if !rotated {
            converged = true;
        }
    }
    if !converged {
        return Err(Error::NoConvergence {
            routine: "jacobi svd",
            iterations: MAX_SWEEPS,
        });
    }

    let mut order: Vec<usize> = (0..n).collect();
    let sigmas: Vec<f64> = a.iter().map(|c| norm(c)).collect();
    order.sort_by(|&i, &j| sigmas[j].partial_cmp(&sigmas[i]).unwrap_or(core::cmp::Ordering::Equal));

    let mut u_cols: Vec<Vec<Complex64>> = Vec::with_capacity(n);
    let mut v_cols: Vec<Vec<Complex64>> = Vec::with_capacity(n);
    let mut s_sorted = Vec::with_capacity(n);
    let mut next_unit = 0usize;
    for &k in &order {
        let s = sigmas[k];
        let mut u: Vec<Complex64> = if s > 0.0 {
            a[k].iter().map(|z| z / s).collect()
        } else {
            alloc::vec![Complex64::zero(); rows]
        };
        // tiny singular values give inaccurate directions; re-orthogonalize
        let mut remaining = if s > 0.0 {
            orthogonalize_against(&mut u, &u_cols)
        } else {
            0.0
        };
        while remaining < 1e-3 {
            u = alloc::vec![Complex64::zero(); rows];
            u[next_unit] = Complex64::new(1.0, 0.0);
            next_unit += 1;
            remaining = orthogonalize_against(&mut u, &u_cols);
        }
        let nu = norm(&u);
        u.iter_mut().for_each(|z| *z /= nu);
        u_cols.push(u);
        v_cols.push(v[k].clone());
        s_sorted.push(if scale > 0.0 { s * scale } else { s });
    }
    Ok(Svd {
        left_vectors: ComplexMatrix::from_columns(rows, &u_cols),
        singular_values: s_sorted,
        right_vectors: ComplexMatrix::from_columns(n, &v_cols),
    })
}

fn norm_sqr(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum()
}

/// Real Jacobi rotation after rotating the phase of column `q` so that the
/// inner product `a_p^* a_q` becomes real and positive.
fn rotate_pair(cols: &mut [Vec<Complex64>], p: usize, q: usize, c: f64, s: f64, phase: Complex64) {
    let (lo, hi) = cols.split_at_mut(q);
    let xp = &mut lo[p];
    let xq = &mut hi[0];
    let pc = phase.conj();
    for (x, y) in xp.iter_mut().zip(xq.iter_mut()) {
        let yq = *y * pc;
        let xo = *x;
        *x = xo * c - yq * s;
        *y = xo * s + yq * c;
    }
}

/// Number of singular values strictly above `rel_tol * sigma_max`.
pub fn rank_with_tol(m: &ComplexMatrix, rel_tol: f64) -> Result<usize> {
    if !(rel_tol > 0.0) {
        return Err(Error::Domain(alloc::format!(
            "rank tolerance must be positive, got {rel_tol}"
        )));
    }
    if m.is_empty() {
        return Ok(0);
    }
    let d = svd(m)?;
    let smax = d.singular_values.first().copied().unwrap_or(0.0);
    if smax == 0.0 {
        return Ok(0);
    }
    Ok(d.singular_values.iter().filter(|&&s| s > rel_tol * smax).count())
}

/// Orthonormal basis of the right singular vectors whose singular values are
/// at most `rel_tol * sigma_max`. A zero matrix has the full space as kernel;
/// a full-rank matrix yields a `cols x 0` matrix.
pub fn nullspace_basis(m: &ComplexMatrix, rel_tol: f64) -> Result<ComplexMatrix> {
    if !(rel_tol > 0.0) {
        return Err(Error::Domain(alloc::format!(
            "rank tolerance must be positive, got {rel_tol}"
        )));
    }
    let (sv, v) = right_singular_system(m)?;
    let smax = sv.first().copied().unwrap_or(0.0);
    let cols: Vec<Vec<Complex64>> = sv
        .iter()
        .enumerate()
        .filter(|(_, &s)| s <= rel_tol * smax)
        .map(|(j, _)| v.col(j))
        .collect();
    Ok(ComplexMatrix::from_columns(m.cols(), &cols))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::{complex_gaussian_matrix, seeded};
    use crate::UNIT_ROUNDOFF;

    #[test]
    fn identity_singular_values() {
        let d = svd(&ComplexMatrix::identity(2)).unwrap();
        assert_eq!(d.singular_values, alloc::vec![1.0, 1.0]);
    }

    #[test]
    fn diagonal_singular_values() {
        let d = svd(&ComplexMatrix::from_real_rows(&[[3.0, 0.0], [0.0, 0.0]])).unwrap();
        assert_eq!(d.singular_values, alloc::vec![3.0, 0.0]);
        assert!(d.left_vectors.orthonormality_defect() < 1e-15);
    }

    #[test]
    fn random_five_by_three_reconstructs() {
        let mut rng = seeded(11);
        let m = complex_gaussian_matrix(5, 3, &mut rng);
        let d = svd(&m).unwrap();
        let res = (&m - &d.reconstruct()).frobenius_norm();
        assert!(res <= 1e3 * UNIT_ROUNDOFF * m.frobenius_norm(), "residual {res}");
        let w = svd(&m.adjoint()).unwrap();
        assert!((&m.adjoint() - &w.reconstruct()).frobenius_norm() <= 1e3 * UNIT_ROUNDOFF * m.frobenius_norm());
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank_with_tol(&ComplexMatrix::zeros(3, 3), 1e-10).unwrap(), 0);
        let d = ComplexMatrix::from_real_rows(&[[1.0, 0.0], [0.0, 1e-14]]);
        assert_eq!(rank_with_tol(&d, 1e-10).unwrap(), 1);
        let q1 = ComplexMatrix::from_real_rows(&[[2.0, 0.0], [1.0, 0.0]]);
        assert_eq!(rank_with_tol(&q1, 1e-10).unwrap(), 1);
        assert!(rank_with_tol(&q1, 0.0).is_err());
    }

    #[test]
    fn nullspace_examples() {
        assert_eq!(nullspace_basis(&ComplexMatrix::identity(3), 1e-10).unwrap().cols(), 0);
        let m = ComplexMatrix::from_real_rows(&[[1.0, 0.0], [0.0, 0.0]]);
        let k = nullspace_basis(&m, 1e-10).unwrap();
        assert_eq!(k.cols(), 1);
        assert!((k[(1, 0)].norm() - 1.0).abs() < 1e-15);
        // the 2x2 motivating example vanishes identically at lambda = 1
        let q1 = ComplexMatrix::zeros(2, 2);
        assert_eq!(nullspace_basis(&q1, 1e-10).unwrap().cols(), 2);
    }

    #[test]
    fn nullspace_of_wide_matrix() {
        let m = ComplexMatrix::from_real_rows(&[[1.0, 1.0, 0.0]]);
        let k = nullspace_basis(&m, 1e-10).unwrap();
        assert_eq!(k.cols(), 2);
        assert!(m.matmul(&k).frobenius_norm() < 1e-14);
        assert!(k.orthonormality_defect() < 1e-14);
    }
}
