//! Finite eigenvalues of singular pencils and quadratics by random
//! regularization and `kappa_bar` classification.
//!
//! Both solvers perturb the problem by `eps E` with a random direction `E`,
//! solve the resulting regular problem with QZ and keep every finite
//! eigenvalue whose `kappa_bar` (computed with the unperturbed coefficients)
//! stays below `tol`. Quadratics are first scaled to `‖M‖_2 = ‖K‖_2 = 1`;
//! candidates of modulus at least one are taken from the first companion
//! form `C1`, smaller ones from its variant `C1hat`.

use alloc::boxed::Box;
use alloc::vec::Vec;

use num_complex::Complex64;
use rand::Rng;

use crate::condition::{kappa_bar_pencil, kappa_bar_quadratic};
use crate::dense::{generalized_eig_with_cutoff, ComplexMatrix, DEFAULT_INFINITE_CUTOFF};
use crate::linearize::{c1, c1hat, recover_vectors_c1, recover_vectors_c1hat};
use crate::matpoly::{
    sample_perturbation, sample_perturbation_per_coefficient, scale_quadratic, MatrixPolynomial, PerturbationSample,
};
use crate::rng::seeded;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverConfig {
    /// Perturbation size; with joint normalization this is `eps ‖E‖`.
    pub epsilon: f64,
    /// Acceptance threshold on `kappa_bar`.
    pub tol: f64,
    pub seed: u64,
    pub rank_tol: f64,
    pub inf_cutoff: f64,
    /// Normalize each coefficient of `E` separately instead of jointly.
    pub per_coefficient_normalization: bool,
    /// Evaluate `kappa_bar` with the perturbed instead of the original coefficients.
    pub kappa_with_perturbed: bool,
    /// Failure probability used by the weak condition bounds.
    pub delta: f64,
    /// Number of Monte Carlo trials.
    pub runs: usize,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            epsilon: 1e-8,
            tol: 1e4,
            seed: 0,
            rank_tol: 1e-10,
            inf_cutoff: DEFAULT_INFINITE_CUTOFF,
            per_coefficient_normalization: false,
            kappa_with_perturbed: false,
            delta: 1e-2,
            runs: 1000,
        }
    }
}

impl SolverConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.epsilon >= 0.0) || !self.epsilon.is_finite() {
            return Err(Error::Domain(alloc::format!(
                "epsilon must be nonnegative, got {}",
                self.epsilon
            )));
        }
        if !(self.tol > 1.0) {
            return Err(Error::Domain(alloc::format!("tol must exceed 1, got {}", self.tol)));
        }
        if !(self.rank_tol > 0.0) || !(self.inf_cutoff > 0.0) {
            return Err(Error::Domain(
                "rank and infinite-eigenvalue tolerances must be positive".into(),
            ));
        }
        if !(self.delta > 0.0 && self.delta < 1.0) {
            return Err(Error::Domain(alloc::format!(
                "delta must lie in (0, 1), got {}",
                self.delta
            )));
        }
        Ok(())
    }

    pub fn sample_direction<R: Rng + ?Sized>(&self, n: usize, m: usize, rng: &mut R) -> PerturbationSample {
        if self.per_coefficient_normalization {
            sample_perturbation_per_coefficient(n, m, rng)
        } else {
            sample_perturbation(n, m, rng)
        }
    }
}

/// Which pencil produced an eigenvalue.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EigenSource {
    C1,
    C1Hat,
    Pencil,
}

impl EigenSource {
    pub fn as_str(self) -> &'static str {
        match self {
            EigenSource::C1 => "C1",
            EigenSource::C1Hat => "C1hat",
            EigenSource::Pencil => "pencil",
        }
    }
}

/// A finite eigenvalue of the regularized problem with its classification.
#[derive(Debug, Clone, PartialEq)]
pub struct ClassifiedEigenvalue {
    /// Eigenvalue in the coordinates of the original problem.
    pub value: Complex64,
    pub kappa_bar: f64,
    pub accepted: bool,
    pub source: EigenSource,
    /// Unit right eigenvector of the perturbed problem; empty when recovery failed.
    pub right_vector: Vec<Complex64>,
    pub left_vector: Vec<Complex64>,
}

impl ClassifiedEigenvalue {
    fn new(
        value: Complex64,
        kappa_bar: f64,
        tol: f64,
        source: EigenSource,
        x: Vec<Complex64>,
        y: Vec<Complex64>,
    ) -> Self {
        let finite = value.re.is_finite() && value.im.is_finite();
        Self {
            value,
            kappa_bar,
            accepted: finite && kappa_bar <= tol,
            source,
            right_vector: x,
            left_vector: y,
        }
    }
}

/// Values of the accepted eigenvalues.
pub fn accepted_values(list: &[ClassifiedEigenvalue]) -> Vec<Complex64> {
    list.iter().filter(|c| c.accepted).map(|c| c.value).collect()
}

/// Runs the pencil or quadratic algorithm depending on the degree.
pub fn solve(p: &MatrixPolynomial, cfg: &SolverConfig) -> Result<Vec<ClassifiedEigenvalue>> {
    let mut rng = seeded(cfg.seed);
    solve_with_rng(p, cfg, &mut rng)
}

pub fn solve_with_rng<R: Rng + ?Sized>(
    p: &MatrixPolynomial,
    cfg: &SolverConfig,
    rng: &mut R,
) -> Result<Vec<ClassifiedEigenvalue>> {
    cfg.validate()?;
    let e = cfg.sample_direction(p.order(), p.degree(), rng);
    solve_with_perturbation(p, &e, cfg)
}

/// The algorithms with a given perturbation direction `E`. For quadratics
/// `E` perturbs the scaled coefficients.
pub fn solve_with_perturbation(
    p: &MatrixPolynomial,
    e: &PerturbationSample,
    cfg: &SolverConfig,
) -> Result<Vec<ClassifiedEigenvalue>> {
    cfg.validate()?;
    let with_context = |err: Error| match err {
        Error::Solver { .. } | Error::Domain(_) | Error::DimensionMismatch(_) => err,
        other => Error::Solver {
            seed: cfg.seed,
            epsilon: cfg.epsilon,
            source: Box::new(other),
        },
    };
    let mut out = match p.degree() {
        1 => pencil_algorithm(p, e, cfg).map_err(with_context)?,
        2 => quadratic_algorithm(p, e, cfg).map_err(with_context)?,
        d => {
            return Err(Error::Domain(alloc::format!(
                "only pencils and quadratics are supported, got degree {d}"
            )))
        }
    };
    out.sort_by(|a, b| {
        b.value
            .norm()
            .partial_cmp(&a.value.norm())
            .unwrap_or(core::cmp::Ordering::Equal)
            .then_with(|| {
                a.value
                    .arg()
                    .partial_cmp(&b.value.arg())
                    .unwrap_or(core::cmp::Ordering::Equal)
            })
    });
    Ok(out)
}

/// Finite eigenvalues of the singular pencil `A - lambda B`.
pub fn solve_singular_pencil(
    a: &ComplexMatrix,
    b: &ComplexMatrix,
    cfg: &SolverConfig,
) -> Result<Vec<ClassifiedEigenvalue>> {
    solve(&MatrixPolynomial::pencil(a.clone(), b.clone())?, cfg)
}

/// Finite eigenvalues of the singular quadratic `lambda^2 M + lambda C + K`.
pub fn solve_singular_quadratic(
    m: &ComplexMatrix,
    c: &ComplexMatrix,
    k: &ComplexMatrix,
    cfg: &SolverConfig,
) -> Result<Vec<ClassifiedEigenvalue>> {
    solve(&MatrixPolynomial::quadratic(m.clone(), c.clone(), k.clone())?, cfg)
}

fn pencil_algorithm(
    p: &MatrixPolynomial,
    e: &PerturbationSample,
    cfg: &SolverConfig,
) -> Result<Vec<ClassifiedEigenvalue>> {
    let perturbed = p.perturbed(e, cfg.epsilon)?;
    let (_, b) = p.pencil_parts().expect("degree one");
    let (a1, b1) = perturbed.pencil_parts().expect("degree one");
    let dec = generalized_eig_with_cutoff(&a1, &b1, true, cfg.inf_cutoff)?;
    let b_kappa = if cfg.kappa_with_perturbed { &b1 } else { &b };
    let mut out = Vec::new();
    for j in 0..dec.len() {
        let Some(lambda) = dec.eigenvalue(j) else { continue };
        let x = dec.right_vectors[j].clone();
        let y = dec.left_vectors[j].clone();
        let kappa = kappa_bar_pencil(b_kappa, lambda, &x, &y);
        out.push(ClassifiedEigenvalue::new(
            lambda,
            kappa,
            cfg.tol,
            EigenSource::Pencil,
            x,
            y,
        ));
    }
    Ok(out)
}

fn quadratic_algorithm(
    p: &MatrixPolynomial,
    e: &PerturbationSample,
    cfg: &SolverConfig,
) -> Result<Vec<ClassifiedEigenvalue>> {
    let (m, c, k) = p.quadratic_parts().expect("degree two");
    let scaled = scale_quadratic(m, c, k)?;
    let gamma = scaled.info.gamma;
    let base = MatrixPolynomial::quadratic(scaled.m.clone(), scaled.c.clone(), scaled.k.clone())?;
    let perturbed = base.perturbed(e, cfg.epsilon)?;
    let (mt, ct, kt) = perturbed.quadratic_parts().expect("degree two");
    let (m_kappa, c_kappa) = if cfg.kappa_with_perturbed {
        (mt, ct)
    } else {
        (&scaled.m, &scaled.c)
    };

    let mut out = Vec::new();
    type Build = fn(&ComplexMatrix, &ComplexMatrix, &ComplexMatrix) -> Result<crate::linearize::Pencil>;
    let branches: [(EigenSource, Build); 2] = [(EigenSource::C1, c1), (EigenSource::C1Hat, c1hat)];
    for (source, build) in branches {
        let lin = build(mt, ct, kt)?;
        let dec = lin.eig(true, cfg.inf_cutoff)?;
        for j in 0..dec.len() {
            let Some(lambda) = dec.eigenvalue(j) else { continue };
            let keep = match source {
                EigenSource::C1 => lambda.norm() >= 1.0,
                _ => lambda.norm() < 1.0,
            };
            if !keep {
                continue;
            }
            let (xl, yl) = (&dec.right_vectors[j], &dec.left_vectors[j]);
            let recovered = match source {
                EigenSource::C1 => recover_vectors_c1(xl, yl),
                _ => recover_vectors_c1hat(xl, yl),
            };
            let (kappa, x, y) = match recovered {
                Ok((x, y)) => (kappa_bar_quadratic(m_kappa, c_kappa, lambda, &x, &y), x, y),
                Err(Error::Degenerate(_)) => (f64::INFINITY, Vec::new(), Vec::new()),
                Err(err) => return Err(err),
            };
            out.push(ClassifiedEigenvalue::new(lambda * gamma, kappa, cfg.tol, source, x, y));
        }
    }
    Ok(out)
}
