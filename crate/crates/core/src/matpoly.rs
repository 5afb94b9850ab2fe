//! Matrix polynomials `P(lambda) = sum_i lambda^i A_i` and random perturbations.

use alloc::vec::Vec;

use num_complex::Complex64;
use num_traits::{Float, Zero};
use rand::Rng;

use crate::dense::{rank_with_tol, ComplexMatrix};
use crate::rng::{complex_gaussian_matrix, seeded};
use crate::{Error, Result};

/// Square matrix polynomial with coefficients `A_0, ..., A_m` in ascending
/// order of power.
///
/// Rectangular coefficients are accepted and zero-padded to square on
/// construction; the shape before padding is kept in [`original_shape`].
///
/// [`original_shape`]: MatrixPolynomial::original_shape
#[derive(Debug, Clone, PartialEq)]
pub struct MatrixPolynomial {
    coeffs: Vec<ComplexMatrix>,
    original_shape: (usize, usize),
}

impl MatrixPolynomial {
    pub fn new(coeffs: Vec<ComplexMatrix>) -> Result<Self> {
        let first = coeffs
            .first()
            .ok_or_else(|| Error::DimensionMismatch("a matrix polynomial needs at least one coefficient".into()))?;
        let shape = (first.rows(), first.cols());
        for (i, c) in coeffs.iter().enumerate() {
            if (c.rows(), c.cols()) != shape {
                return Err(Error::DimensionMismatch(alloc::format!(
                    "coefficient {i} is {}x{}, expected {}x{}",
                    c.rows(),
                    c.cols(),
                    shape.0,
                    shape.1
                )));
            }
            if !c.is_finite() {
                return Err(Error::Domain(alloc::format!("coefficient {i} has non-finite entries")));
            }
        }
        let coeffs = if shape.0 == shape.1 {
            coeffs
        } else {
            coeffs.iter().map(ComplexMatrix::pad_to_square).collect()
        };
        Ok(Self {
            coeffs,
            original_shape: shape,
        })
    }

    /// `lambda^2 M + lambda C + K`.
    pub fn quadratic(m: ComplexMatrix, c: ComplexMatrix, k: ComplexMatrix) -> Result<Self> {
        Self::new(alloc::vec![k, c, m])
    }

    /// The pencil `A - lambda B` as a degree-one polynomial.
    pub fn pencil(a: ComplexMatrix, b: ComplexMatrix) -> Result<Self> {
        let neg_b = -&b;
        Self::new(alloc::vec![a, neg_b])
    }

    pub fn order(&self) -> usize {
        self.coeffs[0].rows()
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn original_shape(&self) -> (usize, usize) {
        self.original_shape
    }

    pub fn coefficient(&self, i: usize) -> &ComplexMatrix {
        &self.coeffs[i]
    }

    pub fn coefficients(&self) -> &[ComplexMatrix] {
        &self.coeffs
    }

    /// `(M, C, K)` of a quadratic.
    pub fn quadratic_parts(&self) -> Option<(&ComplexMatrix, &ComplexMatrix, &ComplexMatrix)> {
        (self.degree() == 2).then(|| (&self.coeffs[2], &self.coeffs[1], &self.coeffs[0]))
    }

    /// `(A, B)` of a pencil `A - lambda B`.
    pub fn pencil_parts(&self) -> Option<(ComplexMatrix, ComplexMatrix)> {
        (self.degree() == 1).then(|| (self.coeffs[0].clone(), -&self.coeffs[1]))
    }

    pub fn evaluate(&self, lambda: Complex64) -> ComplexMatrix {
        let mut acc = self.coeffs[self.degree()].clone();
        for c in self.coeffs[..self.degree()].iter().rev() {
            acc = &acc.scale(lambda) + c;
        }
        acc
    }

    /// `P'(lambda)`; the zero matrix for a constant polynomial.
    pub fn derivative_at(&self, lambda: Complex64) -> ComplexMatrix {
        let n = self.order();
        let m = self.degree();
        if m == 0 {
            return ComplexMatrix::zeros(n, n);
        }
        let mut acc = self.coeffs[m].scale_real(m as f64);
        for i in (1..m).rev() {
            acc = &acc.scale(lambda) + &self.coeffs[i].scale_real(i as f64);
        }
        acc
    }

    pub fn reverse(&self) -> Self {
        Self {
            coeffs: self.coeffs.iter().rev().cloned().collect(),
            original_shape: self.original_shape,
        }
    }

    pub fn scaled(&self, s: Complex64) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|c| c.scale(s)).collect(),
            original_shape: self.original_shape,
        }
    }

    pub fn joint_norm(&self) -> f64 {
        joint_norm(&self.coeffs)
    }

    /// `P + epsilon E`.
    pub fn perturbed(&self, e: &PerturbationSample, epsilon: f64) -> Result<Self> {
        if e.coeffs.len() != self.coeffs.len() || e.coeffs[0].rows() != self.order() {
            return Err(Error::DimensionMismatch(
                "perturbation does not match the polynomial".into(),
            ));
        }
        Ok(Self {
            coeffs: self
                .coeffs
                .iter()
                .zip(&e.coeffs)
                .map(|(a, ei)| a + &ei.scale_real(epsilon))
                .collect(),
            original_shape: self.original_shape,
        })
    }

    /// Largest numerical rank of `P(mu)` over random points `mu` on the unit circle.
    pub fn normal_rank(&self, probe: &NormalRankProbe) -> Result<usize> {
        let mut rng = seeded(probe.seed);
        let mut best = 0;
        for _ in 0..probe.samples.max(1) {
            let theta = rng.random::<f64>() * core::f64::consts::TAU;
            let mu = Complex64::from_polar(1.0, theta);
            best = best.max(rank_with_tol(&self.evaluate(mu), probe.rank_tol)?);
        }
        Ok(best)
    }
}

/// Sampling plan for [`MatrixPolynomial::normal_rank`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormalRankProbe {
    pub samples: usize,
    pub rank_tol: f64,
    pub seed: u64,
}

impl Default for NormalRankProbe {
    fn default() -> Self {
        Self {
            samples: 3,
            rank_tol: 1e-10,
            seed: 0x6e_7261_6e6b,
        }
    }
}

/// `(sum_i ‖E_i‖_F^2)^(1/2)`.
pub fn joint_norm(coeffs: &[ComplexMatrix]) -> f64 {
    coeffs
        .iter()
        .map(|c| {
            let f = c.frobenius_norm();
            f * f
        })
        .sum::<f64>()
        .sqrt()
}

/// Coefficients `E_0, ..., E_m` of a random perturbation direction.
#[derive(Debug, Clone, PartialEq)]
pub struct PerturbationSample {
    pub coeffs: Vec<ComplexMatrix>,
}

impl PerturbationSample {
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn joint_norm(&self) -> f64 {
        joint_norm(&self.coeffs)
    }

    pub fn evaluate(&self, lambda: Complex64) -> ComplexMatrix {
        let mut acc = self.coeffs[self.degree()].clone();
        for c in self.coeffs[..self.degree()].iter().rev() {
            acc = &acc.scale(lambda) + c;
        }
        acc
    }
}

/// Uniform sample from the unit sphere of all `n^2 (m+1)` complex coefficients.
pub fn sample_perturbation<R: Rng + ?Sized>(n: usize, m: usize, rng: &mut R) -> PerturbationSample {
    let mut coeffs: Vec<ComplexMatrix> = (0..=m).map(|_| complex_gaussian_matrix(n, n, rng)).collect();
    let s = joint_norm(&coeffs);
    if s > 0.0 {
        coeffs = coeffs.iter().map(|c| c.scale_real(1.0 / s)).collect();
    }
    PerturbationSample { coeffs }
}

/// Gaussian coefficients, each normalized to unit Frobenius norm on its own.
pub fn sample_perturbation_per_coefficient<R: Rng + ?Sized>(n: usize, m: usize, rng: &mut R) -> PerturbationSample {
    let coeffs = (0..=m)
        .map(|_| {
            let c = complex_gaussian_matrix(n, n, rng);
            let f = c.frobenius_norm();
            if f > 0.0 {
                c.scale_real(1.0 / f)
            } else {
                c
            }
        })
        .collect();
    PerturbationSample { coeffs }
}

/// Scale factors with `lambda_original = gamma * lambda_scaled`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScalingInfo {
    pub gamma: f64,
    pub omega: f64,
}

/// Scaled quadratic with `‖M‖_2 = ‖K‖_2 = 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct ScaledQuadratic {
    pub m: ComplexMatrix,
    pub c: ComplexMatrix,
    pub k: ComplexMatrix,
    pub info: ScalingInfo,
}

pub fn scale_quadratic(m: &ComplexMatrix, c: &ComplexMatrix, k: &ComplexMatrix) -> Result<ScaledQuadratic> {
    let nm = m.norm2()?;
    let nk = k.norm2()?;
    if nm.is_zero() || nk.is_zero() {
        return Err(Error::Degenerate("quadratic scaling needs nonzero M and K"));
    }
    let gamma = (nk / nm).sqrt();
    let omega = 1.0 / nk;
    Ok(ScaledQuadratic {
        m: m.scale_real(omega * gamma * gamma),
        c: c.scale_real(omega * gamma),
        k: k.scale_real(omega),
        info: ScalingInfo { gamma, omega },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::builtin;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn evaluation_at_zero_and_one() {
        let ex2 = builtin("ex2").unwrap().polynomial;
        assert_eq!(ex2.evaluate(c(0.0)), *ex2.coefficient(0));
        let q1 = ex2.evaluate(c(1.0));
        assert_eq!(q1, ComplexMatrix::from_real_rows(&[[2.0, 0.0], [1.0, 0.0]]));
        let constant = MatrixPolynomial::new(alloc::vec![ComplexMatrix::identity(2)]).unwrap();
        assert_eq!(constant.evaluate(c(3.0)), ComplexMatrix::identity(2));
        assert_eq!(constant.derivative_at(c(3.0)), ComplexMatrix::zeros(2, 2));
    }

    #[test]
    fn derivative_of_quadratic_and_pencil() {
        let m = ComplexMatrix::from_real_rows(&[[1.0, 2.0], [0.0, 1.0]]);
        let cc = ComplexMatrix::from_real_rows(&[[0.0, 1.0], [3.0, 0.0]]);
        let k = ComplexMatrix::identity(2);
        let q = MatrixPolynomial::quadratic(m.clone(), cc.clone(), k).unwrap();
        let lam = Complex64::new(0.5, -1.0);
        let expected = &m.scale(lam * 2.0) + &cc;
        assert!((&q.derivative_at(lam) - &expected).frobenius_norm() < 1e-14);
        let p = MatrixPolynomial::pencil(ComplexMatrix::identity(2), m.clone()).unwrap();
        assert_eq!(p.derivative_at(lam), -&m);
    }

    #[test]
    fn reverse_is_involution() {
        let ex6 = builtin("ex6").unwrap().polynomial;
        let ex7 = builtin("ex7").unwrap().polynomial;
        assert_eq!(ex6.reverse(), ex7);
        assert_eq!(ex6.reverse().reverse(), ex6);
        let constant = MatrixPolynomial::new(alloc::vec![ComplexMatrix::identity(2)]).unwrap();
        assert_eq!(constant.reverse(), constant);
    }

    #[test]
    fn joint_norm_pythagoras() {
        let three = ComplexMatrix::from_real_rows(&[[3.0]]);
        assert!((joint_norm(&[three.clone(), three]) - 18f64.sqrt()).abs() < 1e-15);
        assert_eq!(joint_norm(&[ComplexMatrix::zeros(2, 2)]), 0.0);
        let e = sample_perturbation(3, 2, &mut seeded(1));
        assert!((e.joint_norm() - 1.0).abs() <= 10.0 * crate::UNIT_ROUNDOFF);
    }

    #[test]
    fn per_coefficient_normalization() {
        let e = sample_perturbation_per_coefficient(3, 2, &mut seeded(1));
        for c in &e.coeffs {
            assert!((c.frobenius_norm() - 1.0).abs() < 1e-14);
        }
        assert!((e.joint_norm() - 3f64.sqrt()).abs() < 1e-14);
    }

    #[test]
    fn normal_rank_examples() {
        let probe = NormalRankProbe::default();
        assert_eq!(builtin("ex1").unwrap().polynomial.normal_rank(&probe).unwrap(), 2);
        assert_eq!(builtin("ex2").unwrap().polynomial.normal_rank(&probe).unwrap(), 1);
        let id = MatrixPolynomial::pencil(ComplexMatrix::identity(4), ComplexMatrix::identity(4)).unwrap();
        assert_eq!(id.normal_rank(&probe).unwrap(), 4);
    }

    #[test]
    fn scaling_formulas() {
        let m = ComplexMatrix::from_diag(&[c(4.0), c(1.0)]);
        let k = ComplexMatrix::from_diag(&[c(1.0), c(0.5)]);
        let s = scale_quadratic(&m, &ComplexMatrix::zeros(2, 2), &k).unwrap();
        assert!((s.info.gamma - 0.5).abs() < 1e-15);
        assert!((s.info.omega - 1.0).abs() < 1e-15);
        let id = ComplexMatrix::identity(2);
        let s = scale_quadratic(&id, &id, &id).unwrap();
        assert_eq!((s.info.gamma, s.info.omega), (1.0, 1.0));
        assert!(scale_quadratic(&ComplexMatrix::zeros(2, 2), &id, &id).is_err());
    }

    #[test]
    fn scaled_example_one_has_unit_norms() {
        let ex1 = builtin("ex1").unwrap().polynomial;
        let (m, cc, k) = ex1.quadratic_parts().unwrap();
        let s = scale_quadratic(m, cc, k).unwrap();
        assert!((s.m.norm2().unwrap() - 1.0).abs() <= 10.0 * crate::UNIT_ROUNDOFF);
        assert!((s.k.norm2().unwrap() - 1.0).abs() <= 10.0 * crate::UNIT_ROUNDOFF);
    }

    #[test]
    fn rectangular_input_is_padded() {
        let a = ComplexMatrix::zeros(4, 5);
        let p = MatrixPolynomial::pencil(a.clone(), a).unwrap();
        assert_eq!(p.order(), 5);
        assert_eq!(p.original_shape(), (4, 5));
        assert!(MatrixPolynomial::new(Vec::new()).is_err());
    }
}
