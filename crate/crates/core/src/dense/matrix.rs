use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_complex::Complex64;
use num_traits::{Float, Zero};

use crate::{Error, Result};

/// Dense complex matrix stored in row-major order.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Complex64::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    /// Builds a matrix from row-major entries, rejecting NaN and infinities.
    pub fn from_vec(rows: usize, cols: usize, data: Vec<Complex64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {}x{} matrix",
                data.len(),
                rows,
                cols
            )));
        }
        if let Some(k) = data.iter().position(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite {
                row: k / cols.max(1),
                col: k % cols.max(1),
            });
        }
        Ok(Self { rows, cols, data })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    /// Real matrix from nested rows. Panics on ragged input.
    pub fn from_real_rows<const C: usize>(rows: &[[f64; C]]) -> Self {
        Self::from_fn(rows.len(), C, |i, j| Complex64::new(rows[i][j], 0.0))
    }

    pub fn from_diag(diag: &[Complex64]) -> Self {
        let mut m = Self::zeros(diag.len(), diag.len());
        for (i, d) in diag.iter().enumerate() {
            m[(i, i)] = *d;
        }
        m
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(rows: usize, columns: &[Vec<Complex64>]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), rows, "column length");
            m.set_col(j, c);
        }
        m
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    pub fn col(&self, j: usize) -> Vec<Complex64> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn row(&self, i: usize) -> &[Complex64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn set_col(&mut self, j: usize, v: &[Complex64]) {
        for (i, z) in v.iter().enumerate() {
            self[(i, j)] = *z;
        }
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|z| z * s).collect(),
        }
    }

    pub fn scale_real(&self, s: f64) -> Self {
        self.scale(Complex64::new(s, 0.0))
    }

    pub fn frobenius_norm(&self) -> f64 {
        norm(&self.data)
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Spectral norm, computed from the singular values.
    pub fn norm2(&self) -> Result<f64> {
        if self.is_empty() {
            return Ok(0.0);
        }
        Ok(super::svd(self)?.singular_values.first().copied().unwrap_or(0.0))
    }

    pub fn matmul(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows, "matmul dimension mismatch");
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                let rrow = rhs.row(k);
                let orow = &mut out.data[i * rhs.cols..(i + 1) * rhs.cols];
                for (o, r) in orow.iter_mut().zip(rrow) {
                    *o += a * r;
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(self.cols, v.len(), "mul_vec dimension mismatch");
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// `y^* A x` for vectors of matching length.
    pub fn bilinear(&self, y: &[Complex64], x: &[Complex64]) -> Complex64 {
        inner(y, &self.mul_vec(x))
    }

    /// Copy of the block `rows r0..r1`, `cols c0..c1`.
    pub fn submatrix(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> Self {
        Self::from_fn(r1 - r0, c1 - c0, |i, j| self[(r0 + i, c0 + j)])
    }

    /// Writes `block` with its top-left corner at `(r0, c0)`.
    pub fn set_block(&mut self, r0: usize, c0: usize, block: &Self) {
        for i in 0..block.rows {
            for j in 0..block.cols {
                self[(r0 + i, c0 + j)] = block[(i, j)];
            }
        }
    }

    /// Assembles a 2x2 block matrix `[[a, b], [c, d]]`.
    pub fn block2x2(a: &Self, b: &Self, c: &Self, d: &Self) -> Self {
        assert_eq!(a.rows, b.rows);
        assert_eq!(c.rows, d.rows);
        assert_eq!(a.cols, c.cols);
        assert_eq!(b.cols, d.cols);
        let mut m = Self::zeros(a.rows + c.rows, a.cols + b.cols);
        m.set_block(0, 0, a);
        m.set_block(0, a.cols, b);
        m.set_block(a.rows, 0, c);
        m.set_block(a.rows, a.cols, d);
        m
    }

    /// Horizontal concatenation `[self other]`.
    pub fn hstack(&self, other: &Self) -> Self {
        assert_eq!(self.rows, other.rows);
        let mut m = Self::zeros(self.rows, self.cols + other.cols);
        m.set_block(0, 0, self);
        m.set_block(0, self.cols, other);
        m
    }

    /// Vertical concatenation `[self; other]`.
    pub fn vstack(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.cols);
        let mut m = Self::zeros(self.rows + other.rows, self.cols);
        m.set_block(0, 0, self);
        m.set_block(self.rows, 0, other);
        m
    }

    /// Zero-pads to a square matrix of order `max(rows, cols)`.
    pub fn pad_to_square(&self) -> Self {
        let n = self.rows.max(self.cols);
        self.pad_to(n, n)
    }

    pub fn pad_to(&self, rows: usize, cols: usize) -> Self {
        assert!(rows >= self.rows && cols >= self.cols);
        let mut m = Self::zeros(rows, cols);
        m.set_block(0, 0, self);
        m
    }

    /// `‖A^*A - I‖_F`, a unitarity defect for the columns.
    pub fn orthonormality_defect(&self) -> f64 {
        let g = self.adjoint().matmul(self);
        (&g - &Self::identity(self.cols)).frobenius_norm()
    }

    /// Column-pivot-free modified Gram-Schmidt, applied twice. Columns that
    /// collapse are replaced by the next standard basis vector that survives.
    pub fn orthonormalize_columns(&self) -> Self {
        let mut q: Vec<Vec<Complex64>> = Vec::with_capacity(self.cols);
        let mut next_unit = 0usize;
        for j in 0..self.cols {
            let original = self.col(j);
            let scale = norm(&original);
            let mut v = original;
            let mut ok = scale > 0.0 && orthogonalize_against(&mut v, &q) > 1e-8 * scale;
            while !ok {
                assert!(next_unit < self.rows, "cannot complete basis");
                v = vec![Complex64::zero(); self.rows];
                v[next_unit] = Complex64::new(1.0, 0.0);
                next_unit += 1;
                ok = orthogonalize_against(&mut v, &q) > 0.5;
            }
            let nv = norm(&v);
            v.iter_mut().for_each(|z| *z /= nv);
            q.push(v);
        }
        Self::from_columns(self.rows, &q)
    }
}

/// Two passes of modified Gram-Schmidt. Returns the remaining norm.
pub(crate) fn orthogonalize_against(v: &mut [Complex64], basis: &[Vec<Complex64>]) -> f64 {
    for _ in 0..2 {
        for b in basis {
            let p = inner(b, v);
            for (vi, bi) in v.iter_mut().zip(b) {
                *vi -= p * bi;
            }
        }
    }
    norm(v)
}

/// `a^* b`.
pub fn inner(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

pub fn norm(v: &[Complex64]) -> f64 {
    // scaled to avoid overflow for huge intermediate eigenvectors
    let m = v.iter().map(|z| z.norm()).fold(0.0, f64::max);
    if m == 0.0 || !m.is_finite() {
        return m;
    }
    m * v.iter().map(|z| (z / m).norm_sqr()).sum::<f64>().sqrt()
}

/// Unit 2-norm copy with the phase convention used across the crate: the
/// first entry of largest modulus is made real and positive.
pub fn normalize_with_phase(v: &[Complex64]) -> Option<Vec<Complex64>> {
    let nv = norm(v);
    if nv == 0.0 || !nv.is_finite() {
        return None;
    }
    let mut best = 0;
    let mut best_abs = -1.0;
    for (i, z) in v.iter().enumerate() {
        // strictly larger keeps the first maximizer; tiny relative ties are resolved the same way
        if z.norm() > best_abs * (1.0 + 1e-12) {
            best_abs = z.norm();
            best = i;
        }
    }
    let phase = v[best] / v[best].norm();
    Some(v.iter().map(|z| z / (phase * nv)).collect())
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;
    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn add(self, rhs: Self) -> ComplexMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn sub(self, rhs: Self) -> ComplexMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Neg for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn neg(self) -> ComplexMatrix {
        self.scale_real(-1.0)
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn mul(self, rhs: Self) -> ComplexMatrix {
        self.matmul(rhs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_non_finite_entries() {
        let data = vec![Complex64::new(1.0, 0.0), Complex64::new(f64::NAN, 0.0)];
        assert_eq!(
            ComplexMatrix::from_vec(1, 2, data),
            Err(Error::NonFinite { row: 0, col: 1 })
        );
    }

    #[test]
    fn rejects_wrong_length() {
        assert!(matches!(
            ComplexMatrix::from_vec(2, 2, vec![Complex64::zero(); 3]),
            Err(Error::DimensionMismatch(_))
        ));
    }

    #[test]
    fn block_assembly_and_padding() {
        let a = ComplexMatrix::identity(2);
        let z = ComplexMatrix::zeros(2, 2);
        let m = ComplexMatrix::block2x2(&a, &z, &z, &a);
        assert_eq!(m, ComplexMatrix::identity(4));
        let r = ComplexMatrix::from_real_rows(&[[1.0, 2.0, 3.0]]);
        let p = r.pad_to_square();
        assert_eq!((p.rows(), p.cols()), (3, 3));
        assert_eq!(p[(0, 2)], Complex64::new(3.0, 0.0));
        assert_eq!(p[(2, 2)], Complex64::zero());
    }

    #[test]
    fn phase_convention() {
        let v = [Complex64::new(0.0, 1.0), Complex64::new(0.0, -2.0)];
        let u = normalize_with_phase(&v).unwrap();
        assert!((u[1] - Complex64::new(1.0, 0.0) * (2.0 / 5f64.sqrt())).norm() < 1e-15);
        assert!(normalize_with_phase(&[Complex64::zero()]).is_none());
    }

    #[test]
    fn orthonormalize_completes_rank_deficient_input() {
        let m = ComplexMatrix::from_real_rows(&[[1.0, 2.0, 0.0], [0.0, 0.0, 0.0], [0.0, 0.0, 0.0]]);
        let q = m.orthonormalize_columns();
        assert!(q.orthonormality_defect() < 1e-14);
    }
}
