//! Companion linearizations of quadratics and the matching eigenvector maps.
//!
//! With `Q(lambda) = lambda^2 M + lambda C + K` both pencils below satisfy
//! `L(lambda) [lambda x; x] = [Q(lambda) x; 0]`:
//!
//! * first companion form `C1(lambda) = lambda [[M, 0], [0, I]] + [[C, K], [-I, 0]]`,
//! * its variant `C1hat(lambda) = lambda [[M, C], [0, I]] + [[0, K], [-I, 0]]`.
//!
//! Pencils are stored as `A - lambda B`, so `B` is the negated leading block.

use alloc::vec::Vec;

use num_complex::Complex64;
use num_traits::Float;

use crate::dense::{
    generalized_eig_with_cutoff, hermitian_inverse_sqrt, norm, ComplexMatrix, GeneralizedEigenDecomposition,
};
use crate::matpoly::MatrixPolynomial;
use crate::{Error, Result};

/// Recovered blocks shorter than this fraction of the full vector are rejected.
pub const RECOVERY_DEGENERACY: f64 = 1e-8;

/// The pencil `A - lambda B`.
#[derive(Debug, Clone, PartialEq)]
pub struct Pencil {
    pub a: ComplexMatrix,
    pub b: ComplexMatrix,
}

impl Pencil {
    pub fn new(a: ComplexMatrix, b: ComplexMatrix) -> Result<Self> {
        if !a.is_square() || !b.is_square() || a.rows() != b.rows() {
            return Err(Error::DimensionMismatch(alloc::format!(
                "pencil needs square blocks of equal order, got {}x{} and {}x{}",
                a.rows(),
                a.cols(),
                b.rows(),
                b.cols()
            )));
        }
        Ok(Self { a, b })
    }

    pub fn order(&self) -> usize {
        self.a.rows()
    }

    pub fn evaluate(&self, lambda: Complex64) -> ComplexMatrix {
        &self.a - &self.b.scale(lambda)
    }

    pub fn to_polynomial(&self) -> MatrixPolynomial {
        MatrixPolynomial::pencil(self.a.clone(), self.b.clone()).expect("pencil blocks are square")
    }

    pub fn eig(&self, want_left: bool, infinite_cutoff: f64) -> Result<GeneralizedEigenDecomposition> {
        generalized_eig_with_cutoff(&self.a, &self.b, want_left, infinite_cutoff)
    }
}

fn check_quadratic(m: &ComplexMatrix, c: &ComplexMatrix, k: &ComplexMatrix) -> Result<usize> {
    let n = m.rows();
    for (name, x) in [("M", m), ("C", c), ("K", k)] {
        if x.rows() != n || x.cols() != n {
            return Err(Error::DimensionMismatch(alloc::format!(
                "{name} is {}x{}, expected {n}x{n}",
                x.rows(),
                x.cols()
            )));
        }
    }
    Ok(n)
}

pub fn c1(m: &ComplexMatrix, c: &ComplexMatrix, k: &ComplexMatrix) -> Result<Pencil> {
    let n = check_quadratic(m, c, k)?;
    let id = ComplexMatrix::identity(n);
    let zero = ComplexMatrix::zeros(n, n);
    let a = ComplexMatrix::block2x2(c, k, &-&id, &zero);
    let b = ComplexMatrix::block2x2(&-m, &zero, &zero, &-&id);
    Pencil::new(a, b)
}

pub fn c1hat(m: &ComplexMatrix, c: &ComplexMatrix, k: &ComplexMatrix) -> Result<Pencil> {
    let n = check_quadratic(m, c, k)?;
    let id = ComplexMatrix::identity(n);
    let zero = ComplexMatrix::zeros(n, n);
    let a = ComplexMatrix::block2x2(&zero, k, &-&id, &zero);
    let b = ComplexMatrix::block2x2(&-m, &-c, &zero, &-&id);
    Pencil::new(a, b)
}

fn unit_block(v: &[Complex64], range: core::ops::Range<usize>) -> Result<Vec<Complex64>> {
    let full = norm(v);
    let block = &v[range];
    let bn = norm(block);
    if !(bn > RECOVERY_DEGENERACY * full) {
        return Err(Error::Degenerate("recovered eigenvector block is numerically zero"));
    }
    Ok(block.iter().map(|z| z / bn).collect())
}

/// Quadratic eigenvectors `(x, y)` from an eigentriple of `C1`: both are the
/// leading `n` entries.
pub fn recover_vectors_c1(x_lin: &[Complex64], y_lin: &[Complex64]) -> Result<(Vec<Complex64>, Vec<Complex64>)> {
    let n = x_lin.len() / 2;
    Ok((unit_block(x_lin, 0..n)?, unit_block(y_lin, 0..n)?))
}

/// Quadratic eigenvectors `(x, y)` from an eigentriple of `C1hat`: `x` is the
/// trailing block of the right vector, `y` the leading block of the left one.
pub fn recover_vectors_c1hat(x_lin: &[Complex64], y_lin: &[Complex64]) -> Result<(Vec<Complex64>, Vec<Complex64>)> {
    let n = x_lin.len() / 2;
    Ok((unit_block(x_lin, n..2 * n)?, unit_block(y_lin, 0..n)?))
}

/// `[X_L x_L] = [[lambda0 X, lambda0 x], [X, x]] / sqrt(1 + |lambda0|^2)`,
/// an orthonormal basis of `ker C1(lambda0)` when `[X x]` is orthonormal.
///
/// The same basis spans `ker C1hat(lambda0)`. `X` may have zero columns.
pub fn right_kernel_basis_c1(x_sing: &ComplexMatrix, x: &[Complex64], lambda0: Complex64) -> ComplexMatrix {
    let n = x.len();
    let k = x_sing.cols();
    let s = 1.0 / (1.0 + lambda0.norm_sqr()).sqrt();
    ComplexMatrix::from_fn(2 * n, k + 1, |i, j| {
        let v = if j < k { x_sing[(i % n, j)] } else { x[i % n] };
        if i < n {
            v * lambda0 * s
        } else {
            v * s
        }
    })
}

/// Orthonormal basis `[Y_L y_L]` of the left kernel of a linearization at
/// `lambda0`, with `Y_L` spanning the left singular part.
#[derive(Debug, Clone, PartialEq)]
pub struct LeftKernelBasis {
    pub singular: ComplexMatrix,
    pub eigenvector: Vec<Complex64>,
    pub beta: f64,
}

/// Left kernel basis for `C1` built from `[Y; (lambda0 M + C)^* Y]`.
pub fn left_kernel_basis_c1(
    y_sing: &ComplexMatrix,
    y: &[Complex64],
    lambda0: Complex64,
    m: &ComplexMatrix,
    c: &ComplexMatrix,
) -> Result<LeftKernelBasis> {
    let lower = &m.scale(lambda0) + c;
    left_kernel_basis_with(y_sing, y, &lower)
}

/// Left kernel basis for `C1hat` built from `[Y; conj(lambda0) M^* Y]`.
pub fn left_kernel_basis_c1hat(
    y_sing: &ComplexMatrix,
    y: &[Complex64],
    lambda0: Complex64,
    m: &ComplexMatrix,
) -> Result<LeftKernelBasis> {
    left_kernel_basis_with(y_sing, y, &m.scale(lambda0))
}

fn left_kernel_basis_with(y_sing: &ComplexMatrix, y: &[Complex64], lower: &ComplexMatrix) -> Result<LeftKernelBasis> {
    let n = y.len();
    let k = y_sing.cols();
    let lh = lower.adjoint();
    let y_tilde = y_sing.vstack(&lh.matmul(y_sing));
    let mut ytl: Vec<Complex64> = y.to_vec();
    ytl.extend(lh.mul_vec(y));

    let y_l = if k == 0 {
        ComplexMatrix::zeros(2 * n, 0)
    } else {
        let gram = y_tilde.adjoint().matmul(&y_tilde);
        y_tilde.matmul(&hermitian_inverse_sqrt(&gram)?)
    };
    // Pi_perp y_tilde_L
    let coeffs = y_l.adjoint().mul_vec(&ytl);
    let proj = y_l.mul_vec(&coeffs);
    let perp: Vec<Complex64> = ytl.iter().zip(&proj).map(|(a, b)| a - b).collect();
    let beta = norm(&perp);
    if !(beta > 0.0) {
        return Err(Error::Degenerate("left eigenvector lies in the left singular space"));
    }
    Ok(LeftKernelBasis {
        singular: y_l,
        eigenvector: perp.iter().map(|z| z / beta).collect(),
        beta,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dense::Lu;
    use crate::rng::{complex_gaussian, complex_gaussian_matrix, seeded};

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn scalar_companion_forms() {
        let one = |v: f64| ComplexMatrix::from_real_rows(&[[v]]);
        let p = c1(&one(2.0), &one(3.0), &one(5.0)).unwrap();
        assert_eq!(p.a, ComplexMatrix::from_real_rows(&[[3.0, 5.0], [-1.0, 0.0]]));
        assert_eq!(p.b, ComplexMatrix::from_real_rows(&[[-2.0, 0.0], [0.0, -1.0]]));
        let h = c1hat(&one(2.0), &one(3.0), &one(5.0)).unwrap();
        assert_eq!(h.a, ComplexMatrix::from_real_rows(&[[0.0, 5.0], [-1.0, 0.0]]));
        assert_eq!(h.b, ComplexMatrix::from_real_rows(&[[-2.0, -3.0], [0.0, -1.0]]));
    }

    #[test]
    fn determinants_agree_with_quadratic() {
        let mut rng = seeded(21);
        let (m, cc, k) = (
            complex_gaussian_matrix(3, 3, &mut rng),
            complex_gaussian_matrix(3, 3, &mut rng),
            complex_gaussian_matrix(3, 3, &mut rng),
        );
        let q = MatrixPolynomial::quadratic(m.clone(), cc.clone(), k.clone()).unwrap();
        for lin in [c1(&m, &cc, &k).unwrap(), c1hat(&m, &cc, &k).unwrap()] {
            for _ in 0..5 {
                let lam = complex_gaussian(&mut rng);
                let dq = Lu::new(&q.evaluate(lam)).unwrap().log_det().value();
                let dl = Lu::new(&lin.evaluate(lam)).unwrap().log_det().value();
                assert!((dq - dl).norm() <= 1e-10 * dq.norm().max(1.0), "{dq} vs {dl}");
            }
        }
    }

    #[test]
    fn recovery_picks_the_right_blocks() {
        let lam = c(2.0);
        let x = [c(0.6), c(0.8)];
        let v: Vec<Complex64> = x.iter().map(|z| z * lam).chain(x.iter().copied()).collect();
        let (rx, ry) = recover_vectors_c1(&v, &v).unwrap();
        assert!(rx.iter().zip(&x).all(|(a, b)| (a - b).norm() < 1e-15));
        assert_eq!(rx, ry);
        let (hx, _) = recover_vectors_c1hat(&v, &v).unwrap();
        assert!(hx.iter().zip(&x).all(|(a, b)| (a - b).norm() < 1e-15));
        let zero_top = [c(0.0), c(0.0), c(1.0), c(0.0)];
        assert!(recover_vectors_c1(&zero_top, &zero_top).is_err());
    }

    #[test]
    fn right_kernel_basis_at_zero() {
        let xs = ComplexMatrix::from_real_rows(&[[1.0], [0.0]]);
        let b = right_kernel_basis_c1(&xs, &[c(0.0), c(1.0)], c(0.0));
        assert_eq!(
            b,
            ComplexMatrix::from_real_rows(&[[0.0, 0.0], [0.0, 0.0], [1.0, 0.0], [0.0, 1.0]])
        );
        let b = right_kernel_basis_c1(&xs, &[c(0.0), c(1.0)], Complex64::new(0.3, -2.0));
        assert!(b.orthonormality_defect() < 1e-15);
    }

    #[test]
    fn regular_left_basis_has_trivial_projector() {
        let mut rng = seeded(4);
        let m = complex_gaussian_matrix(2, 2, &mut rng);
        let cc = complex_gaussian_matrix(2, 2, &mut rng);
        let y = [c(0.6), Complex64::new(0.0, 0.8)];
        let lam = c(0.7);
        let basis = left_kernel_basis_c1(&ComplexMatrix::zeros(2, 0), &y, lam, &m, &cc).unwrap();
        let lower = (&m.scale(lam) + &cc).adjoint().mul_vec(&y);
        let expected = (1.0 + norm(&lower).powi(2)).sqrt();
        assert!((basis.beta - expected).abs() < 1e-14);
        assert_eq!(basis.singular.cols(), 0);
    }
}
