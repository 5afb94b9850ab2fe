use alloc::vec::Vec;

use num_complex::Complex64;
use num_traits::{Float, Zero};

use super::ComplexMatrix;
use crate::{Error, Result};

/// LU factorization with partial pivoting, `P A = L U`.
#[derive(Debug, Clone)]
pub struct Lu {
    lu: ComplexMatrix,
    perm: Vec<usize>,
    swaps: usize,
}

/// Determinant stored as `exp(log_abs) * phase` to survive large orders.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogDet {
    pub log_abs: f64,
    pub phase: Complex64,
}

impl LogDet {
    pub fn is_zero(&self) -> bool {
        self.log_abs == f64::NEG_INFINITY
    }

    pub fn value(&self) -> Complex64 {
        self.phase * self.log_abs.exp()
    }
}

impl Lu {
    pub fn new(a: &ComplexMatrix) -> Result<Self> {
        if !a.is_square() {
            return Err(Error::DimensionMismatch(alloc::format!(
                "LU needs a square matrix, got {}x{}",
                a.rows(),
                a.cols()
            )));
        }
        let n = a.rows();
        let mut lu = a.clone();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut swaps = 0;
        for k in 0..n {
            let mut p = k;
            let mut best = lu[(k, k)].norm();
            for i in k + 1..n {
                let v = lu[(i, k)].norm();
                if v > best {
                    best = v;
                    p = i;
                }
            }
            if p != k {
                for j in 0..n {
                    let t = lu[(k, j)];
                    lu[(k, j)] = lu[(p, j)];
                    lu[(p, j)] = t;
                }
                perm.swap(k, p);
                swaps += 1;
            }
            let pivot = lu[(k, k)];
            if pivot.is_zero() {
                continue;
            }
            for i in k + 1..n {
                let f = lu[(i, k)] / pivot;
                lu[(i, k)] = f;
                if f.is_zero() {
                    continue;
                }
                for j in k + 1..n {
                    let u = lu[(k, j)];
                    lu[(i, j)] -= f * u;
                }
            }
        }
        Ok(Self { lu, perm, swaps })
    }

    pub fn order(&self) -> usize {
        self.lu.rows()
    }

    pub fn log_det(&self) -> LogDet {
        let mut log_abs = 0.0;
        let mut phase = if self.swaps.is_multiple_of(2) {
            Complex64::new(1.0, 0.0)
        } else {
            Complex64::new(-1.0, 0.0)
        };
        for k in 0..self.order() {
            let d = self.lu[(k, k)];
            let a = d.norm();
            if a == 0.0 {
                return LogDet {
                    log_abs: f64::NEG_INFINITY,
                    phase: Complex64::zero(),
                };
            }
            log_abs += a.ln();
            phase *= d / a;
        }
        LogDet { log_abs, phase }
    }

    /// Ratio of largest to smallest pivot modulus; a cheap conditioning proxy.
    pub fn pivot_ratio(&self) -> f64 {
        let mut lo = f64::INFINITY;
        let mut hi: f64 = 0.0;
        for k in 0..self.order() {
            let a = self.lu[(k, k)].norm();
            lo = lo.min(a);
            hi = hi.max(a);
        }
        if self.order() == 0 {
            1.0
        } else if lo == 0.0 {
            f64::INFINITY
        } else {
            hi / lo
        }
    }

    /// Solves `A x = b`.
    pub fn solve(&self, b: &[Complex64]) -> Result<Vec<Complex64>> {
        let n = self.order();
        let mut x: Vec<Complex64> = self.perm.iter().map(|&p| b[p]).collect();
        for i in 0..n {
            for j in 0..i {
                let l = self.lu[(i, j)];
                let xj = x[j];
                x[i] -= l * xj;
            }
        }
        for i in (0..n).rev() {
            for j in i + 1..n {
                let u = self.lu[(i, j)];
                let xj = x[j];
                x[i] -= u * xj;
            }
            let d = self.lu[(i, i)];
            if d.is_zero() {
                return Err(Error::Degenerate("singular matrix in LU solve"));
            }
            x[i] /= d;
        }
        Ok(x)
    }

    /// Solves `A^* x = b`.
    pub fn solve_adjoint(&self, b: &[Complex64]) -> Result<Vec<Complex64>> {
        // A^* = U^* L^* P, so U^* w = b, L^* z = w, x = P^T z
        let n = self.order();
        let mut w = b.to_vec();
        for i in 0..n {
            for j in 0..i {
                let u = self.lu[(j, i)].conj();
                let wj = w[j];
                w[i] -= u * wj;
            }
            let d = self.lu[(i, i)].conj();
            if d.is_zero() {
                return Err(Error::Degenerate("singular matrix in LU solve"));
            }
            w[i] /= d;
        }
        for i in (0..n).rev() {
            for j in i + 1..n {
                let l = self.lu[(j, i)].conj();
                let wj = w[j];
                w[i] -= l * wj;
            }
        }
        let mut x = alloc::vec![Complex64::zero(); n];
        for (k, &p) in self.perm.iter().enumerate() {
            x[p] = w[k];
        }
        Ok(x)
    }
}
