//! Complex QZ iteration for the generalized eigenproblem `A x = lambda B x`.
//!
//! The pencil is reduced to Hessenberg-triangular form with Givens rotations
//! and then to generalized Schur form `A = Q S Z^*`, `B = Q T Z^*` by
//! implicitly shifted single-shift QZ sweeps. Zero diagonal entries of `T`
//! (infinite eigenvalues) are chased to the bottom of the active block and
//! deflated. Eigenvectors are obtained by back substitution on the
//! triangular pair, as in LAPACK's `ztgevc`.

use alloc::vec::Vec;

use num_complex::Complex64;
use num_traits::Zero;

use super::matrix::normalize_with_phase;
use super::rotation::Givens;
use super::ComplexMatrix;
use crate::{Error, Result, UNIT_ROUNDOFF};

/// Relative `|beta|` threshold below which an eigenvalue counts as infinite.
pub const DEFAULT_INFINITE_CUTOFF: f64 = 1e-12;

const ITERATIONS_PER_EIGENVALUE: usize = 60;

/// Eigenvalues as `(alpha, beta)` pairs with unit right and left eigenvectors
/// of a regular pencil `A - lambda B`.
///
/// Entries are ordered: finite eigenvalues by decreasing modulus, then by
/// phase, and infinite eigenvalues last.
#[derive(Debug, Clone, PartialEq)]
pub struct GeneralizedEigenDecomposition {
    pub alphas: Vec<Complex64>,
    pub betas: Vec<Complex64>,
    pub right_vectors: Vec<Vec<Complex64>>,
    pub left_vectors: Vec<Vec<Complex64>>,
    pub infinite_cutoff: f64,
}

impl GeneralizedEigenDecomposition {
    pub fn len(&self) -> usize {
        self.alphas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.alphas.is_empty()
    }

    pub fn is_infinite(&self, j: usize) -> bool {
        is_infinite_pair(self.alphas[j], self.betas[j], self.infinite_cutoff)
    }

    /// `alpha / beta`, or `None` for an infinite eigenvalue.
    pub fn eigenvalue(&self, j: usize) -> Option<Complex64> {
        if self.is_infinite(j) {
            None
        } else {
            Some(self.alphas[j] / self.betas[j])
        }
    }

    pub fn finite_eigenvalues(&self) -> Vec<Complex64> {
        (0..self.len()).filter_map(|j| self.eigenvalue(j)).collect()
    }
}

fn is_infinite_pair(alpha: Complex64, beta: Complex64, cutoff: f64) -> bool {
    beta.norm() <= cutoff * (alpha.norm() + beta.norm())
}

/// Generalized eigenvalues and eigenvectors of `A - lambda B`.
///
/// `want_left = false` leaves `left_vectors` empty.
pub fn generalized_eig(a: &ComplexMatrix, b: &ComplexMatrix, want_left: bool) -> Result<GeneralizedEigenDecomposition> {
    generalized_eig_with_cutoff(a, b, want_left, DEFAULT_INFINITE_CUTOFF)
}

pub fn generalized_eig_with_cutoff(
    a: &ComplexMatrix,
    b: &ComplexMatrix,
    want_left: bool,
    infinite_cutoff: f64,
) -> Result<GeneralizedEigenDecomposition> {
    if !a.is_square() || !b.is_square() || a.rows() != b.rows() {
        return Err(Error::DimensionMismatch(alloc::format!(
            "pencil needs square matrices of equal order, got {}x{} and {}x{}",
            a.rows(),
            a.cols(),
            b.rows(),
            b.cols()
        )));
    }
    if !a.is_finite() || !b.is_finite() {
        return Err(Error::Degenerate("non-finite pencil entries"));
    }
    if !a.frobenius_norm().is_finite() || !b.frobenius_norm().is_finite() {
        return Err(Error::Degenerate("pencil norm overflows"));
    }
    let n = a.rows();
    let mut schur = GeneralizedSchur::new(a.clone(), b.clone());
    schur.reduce_hessenberg_triangular();
    schur.qz()?;

    let mut alphas = Vec::with_capacity(n);
    let mut betas = Vec::with_capacity(n);
    let mut right = Vec::with_capacity(n);
    let mut left = Vec::with_capacity(n);
    for k in 0..n {
        let (alpha, beta) = (schur.s[(k, k)], schur.t[(k, k)]);
        alphas.push(alpha);
        betas.push(beta);
        right.push(schur.right_eigenvector(k));
        if want_left {
            left.push(schur.left_eigenvector(k));
        }
    }

    let finite = |z: &Complex64| z.re.is_finite() && z.im.is_finite();
    if !alphas.iter().chain(&betas).all(finite) {
        return Err(Error::Degenerate("overflow in the QZ iteration"));
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| compare_eigenvalues(alphas[i], betas[i], alphas[j], betas[j], infinite_cutoff));
    Ok(GeneralizedEigenDecomposition {
        alphas: order.iter().map(|&k| alphas[k]).collect(),
        betas: order.iter().map(|&k| betas[k]).collect(),
        right_vectors: order.iter().map(|&k| right[k].clone()).collect(),
        left_vectors: if want_left {
            order.iter().map(|&k| left[k].clone()).collect()
        } else {
            Vec::new()
        },
        infinite_cutoff,
    })
}

/// Finite before infinite; finite by modulus descending, then by phase.
fn compare_eigenvalues(a1: Complex64, b1: Complex64, a2: Complex64, b2: Complex64, cutoff: f64) -> core::cmp::Ordering {
    use core::cmp::Ordering;
    match (is_infinite_pair(a1, b1, cutoff), is_infinite_pair(a2, b2, cutoff)) {
        (true, true) => Ordering::Equal,
        (true, false) => Ordering::Greater,
        (false, true) => Ordering::Less,
        (false, false) => {
            let l1 = a1 / b1;
            let l2 = a2 / b2;
            l2.norm()
                .partial_cmp(&l1.norm())
                .unwrap_or(Ordering::Equal)
                .then_with(|| l1.arg().partial_cmp(&l2.arg()).unwrap_or(Ordering::Equal))
        }
    }
}

struct GeneralizedSchur {
    s: ComplexMatrix,
    t: ComplexMatrix,
    q: ComplexMatrix,
    z: ComplexMatrix,
    n: usize,
}

impl GeneralizedSchur {
    fn new(a: ComplexMatrix, b: ComplexMatrix) -> Self {
        let n = a.rows();
        Self {
            s: a,
            t: b,
            q: ComplexMatrix::identity(n),
            z: ComplexMatrix::identity(n),
            n,
        }
    }

    fn left_rotation(&mut self, rot: &Givens, p: usize, q: usize, first_col: usize) {
        let n = self.n;
        rot.apply_rows(&mut self.s, p, q, first_col..n);
        rot.apply_rows(&mut self.t, p, q, first_col..n);
        rot.accumulate_left(&mut self.q, p, q);
    }

    fn right_rotation(&mut self, rot: &Givens, p: usize, q: usize, last_row: usize) {
        rot.apply_cols(&mut self.s, p, q, 0..last_row + 1);
        rot.apply_cols(&mut self.t, p, q, 0..last_row + 1);
        let n = self.n;
        rot.apply_cols(&mut self.z, p, q, 0..n);
    }

    fn reduce_hessenberg_triangular(&mut self) {
        let n = self.n;
        if n < 2 {
            return;
        }
        // triangularize T from the left
        for j in 0..n {
            for i in (j + 1..n).rev() {
                if self.t[(i, j)].is_zero() {
                    continue;
                }
                let (rot, r) = Givens::zeroing(self.t[(i - 1, j)], self.t[(i, j)]);
                self.left_rotation(&rot, i - 1, i, 0);
                self.t[(i - 1, j)] = r;
                self.t[(i, j)] = Complex64::zero();
            }
        }
        // Hessenberg S while keeping T triangular
        for j in 0..n.saturating_sub(2) {
            for i in (j + 2..n).rev() {
                if self.s[(i, j)].is_zero() {
                    continue;
                }
                let (rot, r) = Givens::zeroing(self.s[(i - 1, j)], self.s[(i, j)]);
                self.left_rotation(&rot, i - 1, i, 0);
                self.s[(i - 1, j)] = r;
                self.s[(i, j)] = Complex64::zero();
                // fill-in at T[i, i-1]
                let (rot, r) = Givens::zeroing_left_of_row(self.t[(i, i - 1)], self.t[(i, i)]);
                self.right_rotation(&rot, i - 1, i, n - 1);
                self.t[(i, i - 1)] = Complex64::zero();
                self.t[(i, i)] = r;
            }
        }
    }

    fn qz(&mut self) -> Result<()> {
        let n = self.n;
        if n == 0 {
            return Ok(());
        }
        let s_norm = self.s.frobenius_norm();
        let t_norm = self.t.frobenius_norm();
        let atol = f64::MIN_POSITIVE.max(UNIT_ROUNDOFF * s_norm);
        let btol = f64::MIN_POSITIVE.max(UNIT_ROUNDOFF * t_norm);
        let budget = ITERATIONS_PER_EIGENVALUE * n.max(1);
        let mut total = 0usize;
        let mut since_deflation = 0usize;
        let mut ilast = n - 1;
        loop {
            if ilast == 0 {
                break;
            }
            // active block [ifirst, ilast]
            let mut ifirst = 0;
            for k in (1..=ilast).rev() {
                let h = self.s[(k, k - 1)].norm();
                let local = self.s[(k, k)].norm() + self.s[(k - 1, k - 1)].norm();
                if h <= atol || h <= UNIT_ROUNDOFF * local {
                    self.s[(k, k - 1)] = Complex64::zero();
                    ifirst = k;
                    break;
                }
            }
            if ifirst == ilast {
                ilast -= 1;
                since_deflation = 0;
                continue;
            }
            if self.t[(ilast, ilast)].norm() <= btol {
                self.t[(ilast, ilast)] = Complex64::zero();
                self.deflate_bottom_infinite(ifirst, ilast);
                ilast -= 1;
                since_deflation = 0;
                continue;
            }
            if let Some(j) = (ifirst..ilast).find(|&j| self.t[(j, j)].norm() <= btol) {
                self.t[(j, j)] = Complex64::zero();
                if j == ifirst {
                    self.split_top_infinite(j, ilast, btol);
                } else {
                    self.chase_zero_down(j, ilast);
                }
                continue;
            }

            total += 1;
            since_deflation += 1;
            if total > budget {
                return Err(Error::NoConvergence {
                    routine: "complex QZ",
                    iterations: total,
                });
            }
            let shift = if since_deflation.is_multiple_of(10) {
                self.exceptional_shift(ilast)
            } else {
                self.wilkinson_shift(ilast)
            };
            self.qz_sweep(ifirst, ilast, shift);
        }
        // tidy the strictly lower part, which is zero up to roundoff
        for i in 0..n {
            for j in 0..i {
                self.s[(i, j)] = Complex64::zero();
                self.t[(i, j)] = Complex64::zero();
            }
        }
        Ok(())
    }

    /// `T[ilast, ilast] = 0`: zero `S[ilast, ilast-1]` from the right.
    fn deflate_bottom_infinite(&mut self, ifirst: usize, ilast: usize) {
        if ilast == ifirst {
            return;
        }
        let (rot, r) = Givens::zeroing_left_of_row(self.s[(ilast, ilast - 1)], self.s[(ilast, ilast)]);
        self.right_rotation(&rot, ilast - 1, ilast, ilast);
        self.s[(ilast, ilast - 1)] = Complex64::zero();
        self.s[(ilast, ilast)] = r;
        self.t[(ilast, ilast - 1)] = Complex64::zero();
    }

    /// `T[j, j] = 0` at the top of the active block: rotate from the left to
    /// split off a 1x1 infinite block at row `j`.
    fn split_top_infinite(&mut self, j: usize, ilast: usize, btol: f64) {
        for jch in j..ilast {
            let (rot, r) = Givens::zeroing(self.s[(jch, jch)], self.s[(jch + 1, jch)]);
            self.left_rotation(&rot, jch, jch + 1, jch);
            self.s[(jch, jch)] = r;
            self.s[(jch + 1, jch)] = Complex64::zero();
            self.t[(jch + 1, jch)] = Complex64::zero();
            if self.t[(jch + 1, jch + 1)].norm() > btol {
                return;
            }
            self.t[(jch + 1, jch + 1)] = Complex64::zero();
        }
    }

    /// Moves a zero at `T[j, j]` down to `T[ilast, ilast]`.
    fn chase_zero_down(&mut self, j: usize, ilast: usize) {
        for jch in j..ilast {
            let (rot, r) = Givens::zeroing(self.t[(jch, jch + 1)], self.t[(jch + 1, jch + 1)]);
            self.left_rotation(&rot, jch, jch + 1, jch - 1);
            self.t[(jch, jch + 1)] = r;
            self.t[(jch + 1, jch + 1)] = Complex64::zero();
            self.t[(jch + 1, jch)] = Complex64::zero();
            // fill at S[jch+1, jch-1]
            let (rot, r) = Givens::zeroing_left_of_row(self.s[(jch + 1, jch - 1)], self.s[(jch + 1, jch)]);
            self.right_rotation(&rot, jch - 1, jch, jch + 1);
            self.s[(jch + 1, jch - 1)] = Complex64::zero();
            self.s[(jch + 1, jch)] = r;
            self.t[(jch, jch - 1)] = Complex64::zero();
        }
    }

    fn wilkinson_shift(&self, ilast: usize) -> Complex64 {
        let k = ilast - 1;
        let (a11, a12, a21, a22) = (
            self.s[(k, k)],
            self.s[(k, ilast)],
            self.s[(ilast, k)],
            self.s[(ilast, ilast)],
        );
        let (b11, b12, b22) = (self.t[(k, k)], self.t[(k, ilast)], self.t[(ilast, ilast)]);
        // det([a11 - mu b11, a12 - mu b12; a21, a22 - mu b22]) = 0
        let qa = b11 * b22;
        let qb = -(a11 * b22 + a22 * b11 - a21 * b12);
        let qc = a11 * a22 - a12 * a21;
        let target = a22 / b22;
        let disc = (qb * qb - qa * qc * 4.0).sqrt();
        let (r1, r2) = {
            let d1 = -qb + disc;
            let d2 = -qb - disc;
            let den = if d1.norm() >= d2.norm() { d1 } else { d2 };
            if den.is_zero() {
                (target, target)
            } else {
                // stable pair: q = den/2, roots q/qa and qc/q
                let qq = den * 0.5;
                (qq / qa, qc / qq)
            }
        };
        let pick = if (r1 - target).norm() <= (r2 - target).norm() {
            r1
        } else {
            r2
        };
        if pick.re.is_finite() && pick.im.is_finite() {
            pick
        } else {
            target
        }
    }

    fn exceptional_shift(&self, ilast: usize) -> Complex64 {
        let base = self.s[(ilast, ilast)] / self.t[(ilast, ilast)];
        let kick = self.s[(ilast, ilast - 1)].norm() / self.t[(ilast - 1, ilast - 1)].norm().max(f64::MIN_POSITIVE);
        base + Complex64::new(0.75 * kick, 0.4 * kick)
    }

    fn qz_sweep(&mut self, ifirst: usize, ilast: usize, shift: Complex64) {
        let n = self.n;
        let f = self.s[(ifirst, ifirst)] - shift * self.t[(ifirst, ifirst)];
        let g = self.s[(ifirst + 1, ifirst)];
        let (rot, _) = Givens::zeroing(f, g);
        self.left_rotation(&rot, ifirst, ifirst + 1, ifirst);
        for k in ifirst..ilast {
            // T[k+1, k] bulge
            let (rot, r) = Givens::zeroing_left_of_row(self.t[(k + 1, k)], self.t[(k + 1, k + 1)]);
            let last_row = (k + 2).min(ilast);
            self.right_rotation(&rot, k, k + 1, last_row);
            self.t[(k + 1, k)] = Complex64::zero();
            self.t[(k + 1, k + 1)] = r;
            if k + 2 <= ilast {
                // S[k+2, k] bulge
                let (rot, r) = Givens::zeroing(self.s[(k + 1, k)], self.s[(k + 2, k)]);
                self.left_rotation(&rot, k + 1, k + 2, k);
                self.s[(k + 1, k)] = r;
                self.s[(k + 2, k)] = Complex64::zero();
            }
        }
        let _ = n;
    }

    /// Right eigenvector of the triangular pair for diagonal position `k`,
    /// mapped back with `Z`.
    fn right_eigenvector(&self, k: usize) -> Vec<Complex64> {
        let n = self.n;
        let (alpha, beta) = self.scaled_pair(k);
        let small = self.small_denominator(alpha, beta);
        let mut v = alloc::vec![Complex64::zero(); n];
        v[k] = Complex64::new(1.0, 0.0);
        for i in (0..k).rev() {
            let mut sum = Complex64::zero();
            for (j, vj) in v.iter().enumerate().take(k + 1).skip(i + 1) {
                sum += (beta * self.s[(i, j)] - alpha * self.t[(i, j)]) * vj;
            }
            let mut d = beta * self.s[(i, i)] - alpha * self.t[(i, i)];
            if d.norm() < small {
                d = Complex64::new(small, 0.0);
            }
            v[i] = -sum / d;
            rescale_if_large(&mut v[i..=k]);
        }
        let x = self.z.mul_vec(&v);
        normalize_with_phase(&x).unwrap_or(x)
    }

    /// Left eigenvector `y` with `y^* (beta A - alpha B) = 0`.
    fn left_eigenvector(&self, k: usize) -> Vec<Complex64> {
        let n = self.n;
        let (alpha, beta) = self.scaled_pair(k);
        let small = self.small_denominator(alpha, beta);
        // w^* (beta S - alpha T) = 0; store u = conj(w)
        let mut u = alloc::vec![Complex64::zero(); n];
        u[k] = Complex64::new(1.0, 0.0);
        for i in k + 1..n {
            let mut sum = Complex64::zero();
            for (j, uj) in u.iter().enumerate().take(i).skip(k) {
                sum += uj * (beta * self.s[(j, i)] - alpha * self.t[(j, i)]);
            }
            let mut d = beta * self.s[(i, i)] - alpha * self.t[(i, i)];
            if d.norm() < small {
                d = Complex64::new(small, 0.0);
            }
            u[i] = -sum / d;
            rescale_if_large(&mut u[k..=i]);
        }
        let w: Vec<Complex64> = u.iter().map(|z| z.conj()).collect();
        let y = self.q.mul_vec(&w);
        normalize_with_phase(&y).unwrap_or(y)
    }

    /// `(alpha, beta)` scaled so that `beta S - alpha T` has entries of unit order.
    fn scaled_pair(&self, k: usize) -> (Complex64, Complex64) {
        let alpha = self.s[(k, k)];
        let beta = self.t[(k, k)];
        let s_norm = self.s.frobenius_norm().max(f64::MIN_POSITIVE);
        let t_norm = self.t.frobenius_norm().max(f64::MIN_POSITIVE);
        let scale = (alpha.norm() / t_norm).max(beta.norm() / s_norm);
        if scale == 0.0 {
            return (alpha, beta);
        }
        (alpha / (scale * t_norm * s_norm), beta / (scale * t_norm * s_norm))
    }

    fn small_denominator(&self, alpha: Complex64, beta: Complex64) -> f64 {
        let s_norm = self.s.frobenius_norm();
        let t_norm = self.t.frobenius_norm();
        (UNIT_ROUNDOFF * (beta.norm() * s_norm + alpha.norm() * t_norm)).max(f64::MIN_POSITIVE)
    }
}

fn rescale_if_large(v: &mut [Complex64]) {
    let m = v.iter().map(|z| z.norm()).fold(0.0, f64::max);
    if m > 1e100 {
        v.iter_mut().for_each(|z| *z /= m);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dense::matrix::norm;
    use crate::rng::{complex_gaussian_matrix, seeded};

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn overflow_is_reported() {
        let big = ComplexMatrix::from_vec(2, 2, alloc::vec![c(1e308), c(1e308), c(1e308), c(-1e308)]).unwrap();
        let b = ComplexMatrix::from_diag(&[c(1e308), c(1e308)]);
        let err = generalized_eig(&big, &b, false).unwrap_err();
        assert!(matches!(err, Error::Degenerate(_)), "{err:?}");
    }

    #[test]
    fn diagonal_pencil() {
        let a = ComplexMatrix::from_diag(&[c(1.0), c(2.0)]);
        let d = generalized_eig(&a, &ComplexMatrix::identity(2), true).unwrap();
        let ev = d.finite_eigenvalues();
        assert!((ev[0] - c(2.0)).norm() < 1e-14);
        assert!((ev[1] - c(1.0)).norm() < 1e-14);
        assert!((d.right_vectors[0][1].norm() - 1.0).abs() < 1e-14);
        assert!((d.right_vectors[1][0].norm() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn one_infinite_eigenvalue() {
        let b = ComplexMatrix::from_diag(&[c(1.0), c(0.0)]);
        let d = generalized_eig(&ComplexMatrix::identity(2), &b, true).unwrap();
        assert!(!d.is_infinite(0));
        assert!(d.is_infinite(1));
        assert!((d.eigenvalue(0).unwrap() - c(1.0)).norm() < 1e-14);
        assert_eq!(d.eigenvalue(1), None);
    }

    #[test]
    fn random_pencil_residuals() {
        let mut rng = seeded(5);
        let n = 8;
        let a = complex_gaussian_matrix(n, n, &mut rng);
        let b = complex_gaussian_matrix(n, n, &mut rng);
        let d = generalized_eig(&a, &b, true).unwrap();
        let tol = 1e4 * UNIT_ROUNDOFF * n as f64;
        for j in 0..n {
            let lam = d.eigenvalue(j).unwrap();
            let x = &d.right_vectors[j];
            let y = &d.left_vectors[j];
            let r: Vec<Complex64> = a
                .mul_vec(x)
                .iter()
                .zip(b.mul_vec(x))
                .map(|(p, q)| p - lam * q)
                .collect();
            let bound = tol * (a.frobenius_norm() + lam.norm() * b.frobenius_norm());
            assert!(norm(&r) <= bound, "right residual {} > {}", norm(&r), bound);
            let l: Vec<Complex64> = a
                .adjoint()
                .mul_vec(y)
                .iter()
                .zip(b.adjoint().mul_vec(y))
                .map(|(p, q)| p - lam.conj() * q)
                .collect();
            assert!(norm(&l) <= bound, "left residual {} > {}", norm(&l), bound);
        }
    }

    #[test]
    fn rejects_dimension_mismatch() {
        let r = generalized_eig(&ComplexMatrix::identity(2), &ComplexMatrix::identity(3), false);
        assert!(matches!(r, Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn singular_b_with_zero_in_middle() {
        // infinite eigenvalue not at the bottom of T initially
        let a = ComplexMatrix::from_real_rows(&[[1.0, 2.0, 0.5], [0.3, 2.0, 1.0], [0.1, 0.7, 3.0]]);
        let b = ComplexMatrix::from_real_rows(&[[1.0, 0.0, 0.0], [0.0, 0.0, 0.0], [0.0, 0.0, 1.0]]);
        let d = generalized_eig(&a, &b, true).unwrap();
        assert_eq!(d.finite_eigenvalues().len(), 2);
        for j in 0..2 {
            let lam = d.eigenvalue(j).unwrap();
            let x = &d.right_vectors[j];
            let r: Vec<Complex64> = a
                .mul_vec(x)
                .iter()
                .zip(b.mul_vec(x))
                .map(|(p, q)| p - lam * q)
                .collect();
            assert!(norm(&r) < 1e-12);
        }
    }

    #[test]
    fn rank_deficient_b_many_sizes() {
        let mut rng = seeded(17);
        for n in 1usize..16 {
            for rank in [0, n / 2, n.saturating_sub(1)] {
                let a = complex_gaussian_matrix(n, n, &mut rng);
                let left = complex_gaussian_matrix(n, rank, &mut rng);
                let right = complex_gaussian_matrix(rank, n, &mut rng);
                let b = left.matmul(&right);
                let d = generalized_eig(&a, &b, true).unwrap();
                let finite = d.finite_eigenvalues();
                assert_eq!(finite.len(), rank, "n = {n}, rank = {rank}");
                for (j, &lam) in finite.iter().enumerate() {
                    let x = &d.right_vectors[j];
                    let r: Vec<Complex64> = a
                        .mul_vec(x)
                        .iter()
                        .zip(b.mul_vec(x))
                        .map(|(p, q)| p - lam * q)
                        .collect();
                    let bound = 1e4 * UNIT_ROUNDOFF * n as f64 * (a.frobenius_norm() + lam.norm() * b.frobenius_norm());
                    assert!(norm(&r) <= bound, "n = {n}, rank = {rank}: {} > {bound}", norm(&r));
                }
            }
        }
    }
}
