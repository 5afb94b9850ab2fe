//! Complex Givens rotations.
//!
//! A rotation is `G = [[c, s], [-conj(s), c]]` with real `c`. Applied from the
//! left to rows `(p, q)` it maps `(x, y)` to `(c x + s y, -conj(s) x + c y)`.
//! The right-hand variant acts on columns with `G^T`, which maps a row pair
//! `(x, y)` to `(c x - conj(s) y, s x + c y)`.

use num_complex::Complex64;
use num_traits::{Float, Zero};

use super::ComplexMatrix;

#[derive(Debug, Clone, Copy)]
pub(crate) struct Givens {
    pub c: f64,
    pub s: Complex64,
}

impl Givens {
    /// Rotation with `G [f; g] = [r; 0]`. Returns the rotation and `r`.
    pub fn zeroing(f: Complex64, g: Complex64) -> (Self, Complex64) {
        if g.is_zero() {
            return (
                Self {
                    c: 1.0,
                    s: Complex64::zero(),
                },
                f,
            );
        }
        if f.is_zero() {
            return (
                Self {
                    c: 0.0,
                    s: Complex64::new(1.0, 0.0),
                },
                g,
            );
        }
        let fa = f.norm();
        let ga = g.norm();
        let nrm = fa.hypot(ga);
        let phase = f / fa;
        let c = fa / nrm;
        let s = phase * g.conj() / nrm;
        (Self { c, s }, phase * nrm)
    }

    /// Rotation acting on columns `(p, q)` that zeroes the first entry of the
    /// row pair `(a, b)`: `[a b] G^T = [0 r]`.
    pub fn zeroing_left_of_row(a: Complex64, b: Complex64) -> (Self, Complex64) {
        Self::zeroing(b, a)
    }

    /// `G A` restricted to rows `p, q` and columns in `cols`.
    pub fn apply_rows(&self, m: &mut ComplexMatrix, p: usize, q: usize, cols: core::ops::Range<usize>) {
        for j in cols {
            let x = m[(p, j)];
            let y = m[(q, j)];
            m[(p, j)] = x * self.c + self.s * y;
            m[(q, j)] = -self.s.conj() * x + y * self.c;
        }
    }

    /// `A G^T` restricted to columns `p, q` and rows in `rows`.
    pub fn apply_cols(&self, m: &mut ComplexMatrix, p: usize, q: usize, rows: core::ops::Range<usize>) {
        for i in rows {
            let x = m[(i, p)];
            let y = m[(i, q)];
            m[(i, p)] = x * self.c - self.s.conj() * y;
            m[(i, q)] = self.s * x + y * self.c;
        }
    }

    /// `A G^*` on columns `p, q`; accumulates a left rotation into `Q` so that
    /// `Q_old A_old = Q_new A_new` keeps holding.
    pub fn accumulate_left(&self, q_mat: &mut ComplexMatrix, p: usize, q: usize) {
        for i in 0..q_mat.rows() {
            let x = q_mat[(i, p)];
            let y = q_mat[(i, q)];
            q_mat[(i, p)] = x * self.c + self.s.conj() * y;
            q_mat[(i, q)] = -self.s * x + y * self.c;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn zeroing_annihilates_second_component() {
        for (f, g) in [
            (c(1.0, 2.0), c(-3.0, 0.5)),
            (c(0.0, 0.0), c(2.0, -1.0)),
            (c(4.0, 0.0), c(0.0, 0.0)),
        ] {
            let (rot, r) = Givens::zeroing(f, g);
            let top = f * rot.c + rot.s * g;
            let bottom = -rot.s.conj() * f + g * rot.c;
            assert!((top - r).norm() < 1e-14);
            assert!(bottom.norm() < 1e-14);
            assert!((rot.c * rot.c + rot.s.norm_sqr() - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn column_rotation_zeroes_left_entry() {
        let mut m = ComplexMatrix::from_fn(1, 2, |_, j| if j == 0 { c(1.0, -1.0) } else { c(0.5, 2.0) });
        let (rot, _) = Givens::zeroing_left_of_row(m[(0, 0)], m[(0, 1)]);
        rot.apply_cols(&mut m, 0, 1, 0..1);
        assert!(m[(0, 0)].norm() < 1e-14);
    }

    #[test]
    fn accumulation_preserves_product() {
        let a = ComplexMatrix::from_fn(2, 2, |i, j| c(i as f64 + 1.0, j as f64 - 0.5));
        let mut g_a = a.clone();
        let mut q = ComplexMatrix::identity(2);
        let (rot, _) = Givens::zeroing(a[(0, 0)], a[(1, 0)]);
        rot.apply_rows(&mut g_a, 0, 1, 0..2);
        rot.accumulate_left(&mut q, 0, 1);
        let back = q.matmul(&g_a);
        assert!((&back - &a).frobenius_norm() < 1e-14);
        assert!(g_a[(1, 0)].norm() < 1e-14);
    }
}
