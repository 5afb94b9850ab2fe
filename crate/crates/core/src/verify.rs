//! Monte Carlo harness and numerical checks of the condition theory.
//!
//! Besides counting how often the solvers recover a known eigenvalue set,
//! this module builds singular problems whose kernels are known in closed
//! form. A constructed problem of order `n`, degree `m` and normal rank `r`
//! has, before a random unitary change of coordinates, the rows
//!
//! * row 0: `(lambda - lambda0) u(lambda)^T` with `u = e_0 + lambda^(m-1) e_1`
//!   for `m >= 2, r < n` and `u = e_0` otherwise,
//! * rows `1..r-1`: one random polynomial entry each, in distinct columns,
//! * rows `r..n-1`: zero.
//!
//! `lambda0` is then a simple eigenvalue whose singular spaces and
//! eigenvectors can be written down directly.

use alloc::vec::Vec;

use num_complex::Complex64;
use num_traits::Float;
use rand::Rng;

use crate::condition::{
    directional_sensitivity, first_order_coefficient, gamma_p, limit_pencil, spurious_lower_bound,
    spurious_lower_bound_first_order, weight, EigenBases,
};
use crate::dense::{generalized_eig, inner, norm, nullspace_basis, svd, ComplexMatrix};
use crate::linearize::{c1, c1hat, left_kernel_basis_c1, left_kernel_basis_c1hat, right_kernel_basis_c1, Pencil};
use crate::matpoly::{sample_perturbation, scale_quadratic, MatrixPolynomial, PerturbationSample};
use crate::rng::{complex_gaussian, haar_unitary, stream};
use crate::solver::{solve_with_perturbation, ClassifiedEigenvalue, SolverConfig};
use crate::stats::{ks_two_sample, sample_beta_one};
use crate::{Error, Result};

/// Default relative matching tolerance, about `eps * tol` for the default solver settings.
pub const DEFAULT_MATCH_TOL: f64 = 1e-4;

/// Known finite eigenvalues of a problem.
#[derive(Debug, Clone, PartialEq)]
pub struct TruthSpec {
    pub finite_eigenvalues: Vec<Complex64>,
    /// A computed value matches `lambda` when it is within
    /// `match_tol * max(1, |lambda|)`.
    pub match_tol: f64,
}

impl TruthSpec {
    pub fn new(finite_eigenvalues: Vec<Complex64>) -> Self {
        Self {
            finite_eigenvalues,
            match_tol: DEFAULT_MATCH_TOL,
        }
    }

    fn radius(&self, lambda: Complex64) -> f64 {
        self.match_tol * lambda.norm().max(1.0)
    }

    /// Greedy closest-pair matching of `computed` against the truth. Entry `i`
    /// of the result is the index into `computed` matched to truth value `i`.
    pub fn assign(&self, computed: &[Complex64]) -> Vec<Option<usize>> {
        let mut pairs: Vec<(f64, usize, usize)> = Vec::new();
        for (i, t) in self.finite_eigenvalues.iter().enumerate() {
            for (j, c) in computed.iter().enumerate() {
                let d = (c - t).norm();
                if d <= self.radius(*t) {
                    pairs.push((d, i, j));
                }
            }
        }
        pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
        let mut truth_used = alloc::vec![None; self.finite_eigenvalues.len()];
        let mut computed_used = alloc::vec![false; computed.len()];
        for (_, i, j) in pairs {
            if truth_used[i].is_none() && !computed_used[j] {
                truth_used[i] = Some(j);
                computed_used[j] = true;
            }
        }
        truth_used
    }

    /// Exact multiset match: every true value found and nothing extra.
    pub fn matches(&self, computed: &[Complex64]) -> bool {
        computed.len() == self.finite_eigenvalues.len() && self.assign(computed).iter().all(Option::is_some)
    }
}

/// `n_s` successes out of `n_t` trials.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrialReport {
    pub n_t: usize,
    pub n_s: usize,
    pub p: f64,
}

impl TrialReport {
    pub fn new(n_t: usize, n_s: usize) -> Self {
        assert!(n_s <= n_t);
        Self {
            n_t,
            n_s,
            p: if n_t == 0 { 0.0 } else { n_s as f64 / n_t as f64 },
        }
    }

    pub fn from_outcomes(outcomes: &[TrialOutcome]) -> Self {
        Self::new(outcomes.len(), outcomes.iter().filter(|o| o.success).count())
    }
}

/// Result of one solver run against a known eigenvalue set.
#[derive(Debug, Clone, PartialEq)]
pub struct TrialOutcome {
    pub index: u64,
    pub success: bool,
    pub accepted: Vec<ClassifiedEigenvalue>,
    /// Truth value and accepted index it was matched to.
    pub matched: Vec<(Complex64, Option<usize>)>,
    pub error: Option<Error>,
}

/// Trial `index` uses the independent stream `(cfg.seed, index)`.
pub fn run_trial(p: &MatrixPolynomial, truth: &TruthSpec, cfg: &SolverConfig, index: u64) -> TrialOutcome {
    let mut rng = stream(cfg.seed, index);
    let e = cfg.sample_direction(p.order(), p.degree(), &mut rng);
    match solve_with_perturbation(p, &e, cfg) {
        Ok(all) => {
            let accepted: Vec<ClassifiedEigenvalue> = all.into_iter().filter(|c| c.accepted).collect();
            let values: Vec<Complex64> = accepted.iter().map(|c| c.value).collect();
            let assignment = truth.assign(&values);
            let success = truth.matches(&values);
            TrialOutcome {
                index,
                success,
                accepted,
                matched: truth.finite_eigenvalues.iter().copied().zip(assignment).collect(),
                error: None,
            }
        }
        Err(err) => TrialOutcome {
            index,
            success: false,
            accepted: Vec::new(),
            matched: Vec::new(),
            error: Some(err),
        },
    }
}

/// Sequential Monte Carlo estimate of the detection probability.
pub fn empirical_probability(
    p: &MatrixPolynomial,
    truth: &TruthSpec,
    cfg: &SolverConfig,
    n_t: usize,
) -> Result<TrialReport> {
    if n_t == 0 {
        return Err(Error::Domain("need at least one trial".into()));
    }
    cfg.validate()?;
    let n_s = (0..n_t as u64).filter(|&i| run_trial(p, truth, cfg, i).success).count();
    Ok(TrialReport::new(n_t, n_s))
}

/// A singular polynomial with a known simple eigenvalue and kernel bases.
#[derive(Debug, Clone, PartialEq)]
pub struct ConstructedProblem {
    pub polynomial: MatrixPolynomial,
    pub normal_rank: usize,
    pub bases: EigenBases,
}

impl ConstructedProblem {
    pub fn order(&self) -> usize {
        self.polynomial.order()
    }

    pub fn degree(&self) -> usize {
        self.polynomial.degree()
    }

    pub fn lambda0(&self) -> Complex64 {
        self.bases.lambda0
    }

    /// `N = n^2 (m + 1)`.
    pub fn big_n(&self) -> usize {
        self.order() * self.order() * (self.degree() + 1)
    }

    pub fn gamma(&self) -> f64 {
        gamma_p(&self.polynomial, self.bases.lambda0, &self.bases.x, &self.bases.y)
    }

    /// The same quadratic scaled to `‖M‖_2 = ‖K‖_2 = 1`; the eigenvalue
    /// becomes `lambda0 / gamma` and the kernels are unchanged.
    pub fn normalized_quadratic(&self) -> Result<Self> {
        let (m, c, k) = self
            .polynomial
            .quadratic_parts()
            .ok_or_else(|| Error::Domain("normalization applies to quadratics".into()))?;
        let s = scale_quadratic(m, c, k)?;
        Ok(Self {
            polynomial: MatrixPolynomial::quadratic(s.m, s.c, s.k)?,
            normal_rank: self.normal_rank,
            bases: EigenBases {
                lambda0: self.bases.lambda0 / s.info.gamma,
                ..self.bases.clone()
            },
        })
    }
}

fn unit(i: usize, n: usize) -> Vec<Complex64> {
    let mut v = alloc::vec![Complex64::new(0.0, 0.0); n];
    v[i] = Complex64::new(1.0, 0.0);
    v
}

fn normalized(v: Vec<Complex64>) -> Vec<Complex64> {
    let nv = norm(&v);
    v.into_iter().map(|z| z / nv).collect()
}

/// Random singular problem of order `n`, degree `m >= 1` and normal rank
/// `1 <= r <= n` with simple eigenvalue `lambda0`.
pub fn constructed_problem<R: Rng + ?Sized>(
    n: usize,
    m: usize,
    r: usize,
    lambda0: Complex64,
    rng: &mut R,
) -> Result<ConstructedProblem> {
    if m == 0 || r == 0 || r > n {
        return Err(Error::Domain(alloc::format!(
            "need m >= 1 and 1 <= r <= n, got n = {n}, m = {m}, r = {r}"
        )));
    }
    let wide_row = m >= 2 && r < n;
    let mut coeffs = alloc::vec![ComplexMatrix::zeros(n, n); m + 1];
    let one = Complex64::new(1.0, 0.0);
    // (lambda - lambda0) in column 0 and (lambda - lambda0) lambda^(m-1) in column 1
    coeffs[0][(0, 0)] = -lambda0;
    coeffs[1][(0, 0)] = one;
    let mut next_col = 1;
    if wide_row {
        coeffs[m - 1][(0, 1)] = -lambda0;
        coeffs[m][(0, 1)] = one;
        next_col = 2;
    }
    for row in 1..r {
        let col = next_col + row - 1;
        loop {
            for c in coeffs.iter_mut() {
                c[(row, col)] = complex_gaussian(rng);
            }
            // keep lambda0 simple: the entry must not vanish there
            let at: Complex64 = coeffs
                .iter()
                .rev()
                .fold(Complex64::new(0.0, 0.0), |acc, c| acc * lambda0 + c[(row, col)]);
            if at.norm() > 0.1 {
                break;
            }
        }
    }
    let used = next_col + r - 1;

    let mut x_cols: Vec<Vec<Complex64>> = Vec::new();
    let x = if wide_row {
        let p = lambda0.powu(m as u32 - 1);
        let mut s = unit(0, n);
        s[1] = -one;
        s[0] = p;
        x_cols.push(normalized(s));
        let mut v = unit(0, n);
        v[1] = p.conj();
        normalized(v)
    } else {
        unit(0, n)
    };
    for j in used..n {
        x_cols.push(unit(j, n));
    }
    let y_cols: Vec<Vec<Complex64>> = (r..n).map(|i| unit(i, n)).collect();
    let y = unit(0, n);

    let u = haar_unitary(n, rng);
    let v = haar_unitary(n, rng);
    let uh = u.adjoint();
    let vh = v.adjoint();
    let rotated: Vec<ComplexMatrix> = coeffs.iter().map(|c| uh.matmul(c).matmul(&v)).collect();
    let x_sing = vh.matmul(&ComplexMatrix::from_columns(n, &x_cols));
    let y_sing = uh.matmul(&ComplexMatrix::from_columns(n, &y_cols));
    Ok(ConstructedProblem {
        polynomial: MatrixPolynomial::new(rotated)?,
        normal_rank: r,
        bases: EigenBases {
            lambda0,
            x_sing,
            x: vh.mul_vec(&x),
            y_sing,
            y: uh.mul_vec(&y),
        },
    })
}

/// Samples of `gamma_P sigma_E` against samples of the model `sqrt(Z_N / Z_{n-r+1})`.
#[derive(Debug, Clone, PartialEq)]
pub struct SigmaDistribution {
    pub empirical: Vec<f64>,
    pub model: Vec<f64>,
    pub ks: f64,
    /// Draws rejected because `Y^* E X` was numerically singular.
    pub bad_directions: usize,
}

/// Draws of `sqrt(Z_N / Z_ell)`.
pub fn sigma_model_samples<R: Rng + ?Sized>(big_n: usize, ell: usize, count: usize, rng: &mut R) -> Vec<f64> {
    (0..count)
        .map(|_| (sample_beta_one(big_n, rng) / sample_beta_one(ell, rng)).sqrt())
        .collect()
}

/// Directional sensitivities `sigma_E` for `samples` uniform directions.
pub fn sigma_samples<R: Rng + ?Sized>(
    problem: &ConstructedProblem,
    samples: usize,
    rng: &mut R,
) -> Result<(Vec<f64>, usize)> {
    let mut out = Vec::with_capacity(samples);
    let mut bad = 0;
    while out.len() < samples {
        let e = sample_perturbation(problem.order(), problem.degree(), rng);
        match directional_sensitivity(&problem.polynomial, &problem.bases, &e) {
            Ok(s) => out.push(s),
            Err(Error::BadDirection { .. }) => {
                bad += 1;
                if bad > samples {
                    return Err(Error::Degenerate("almost every direction is bad"));
                }
            }
            Err(err) => return Err(err),
        }
    }
    Ok((out, bad))
}

pub fn sigma_distribution_experiment<R: Rng + ?Sized>(
    problem: &ConstructedProblem,
    samples: usize,
    model_samples: usize,
    rng: &mut R,
) -> Result<SigmaDistribution> {
    let gamma = problem.gamma();
    let (sig, bad) = sigma_samples(problem, samples, rng)?;
    let empirical: Vec<f64> = sig.iter().map(|s| s * gamma).collect();
    let ell = problem.order() - problem.normal_rank + 1;
    let model = sigma_model_samples(problem.big_n(), ell, model_samples, rng);
    let ks = ks_two_sample(&empirical, &model);
    Ok(SigmaDistribution {
        empirical,
        model,
        ks,
        bad_directions: bad,
    })
}

/// Quantile of `gamma_P sigma_E` under the beta-ratio model, by bisection on
/// the tail probability.
pub fn sigma_model_quantile(q: f64, big_n: usize, n: usize, r: usize) -> f64 {
    let target = 1.0 - q;
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    while crate::condition::sigma_tail_model(hi, 1.0, big_n, n, r) > target {
        hi *= 2.0;
        if hi > 1e12 {
            return f64::INFINITY;
        }
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if crate::condition::sigma_tail_model(mid, 1.0, big_n, n, r) > target {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= 1e-12 * hi {
            break;
        }
    }
    0.5 * (lo + hi)
}

/// Eigenvalue of `P + eps E` closest to `target`.
pub fn perturbed_eigenvalue_near(
    p: &MatrixPolynomial,
    e: &PerturbationSample,
    epsilon: f64,
    target: Complex64,
) -> Result<Complex64> {
    let q = p.perturbed(e, epsilon)?;
    let pencil = match q.degree() {
        1 => {
            let (a, b) = q.pencil_parts().expect("degree one");
            Pencil::new(a, b)?
        }
        2 => {
            let (m, c, k) = q.quadratic_parts().expect("degree two");
            c1(m, c, k)?
        }
        d => return Err(Error::Domain(alloc::format!("unsupported degree {d}"))),
    };
    let dec = generalized_eig(&pencil.a, &pencil.b, false)?;
    dec.finite_eigenvalues()
        .into_iter()
        .min_by(|a, b| (a - target).norm().total_cmp(&(b - target).norm()))
        .ok_or(Error::Degenerate("perturbed problem has no finite eigenvalue"))
}

/// Log-log fit of the second-order remainder `|lambda(eps) - lambda0 - c1 eps|`.
#[derive(Debug, Clone, PartialEq)]
pub struct ExpansionFit {
    pub slope: f64,
    pub epsilons: Vec<f64>,
    pub remainders: Vec<f64>,
    pub first_order: Complex64,
}

pub fn expansion_order_check(
    p: &MatrixPolynomial,
    bases: &EigenBases,
    e: &PerturbationSample,
    epsilons: &[f64],
) -> Result<ExpansionFit> {
    if epsilons.len() < 2 {
        return Err(Error::Domain("need at least two perturbation sizes".into()));
    }
    let c1 = first_order_coefficient(p, bases, e)?;
    let mut remainders = Vec::with_capacity(epsilons.len());
    for &eps in epsilons {
        let predicted = bases.lambda0 + c1 * eps;
        let lam = perturbed_eigenvalue_near(p, e, eps, predicted)?;
        remainders.push((lam - predicted).norm());
    }
    let xs: Vec<f64> = epsilons.iter().map(|e| e.ln()).collect();
    let ys: Vec<f64> = remainders.iter().map(|r| r.max(f64::MIN_POSITIVE).ln()).collect();
    Ok(ExpansionFit {
        slope: least_squares_slope(&xs, &ys),
        epsilons: epsilons.to_vec(),
        remainders,
        first_order: c1,
    })
}

fn least_squares_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    sxy / sxx
}

/// `gamma_Q / gamma_L` for both companion forms at a constructed eigenvalue.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RatioSample {
    pub lambda0: Complex64,
    pub c_norm: f64,
    pub gamma_q: f64,
    pub gamma_c1: f64,
    pub gamma_c1hat: f64,
    pub beta_c1: f64,
    pub beta_c1hat: f64,
}

impl RatioSample {
    pub fn ratio_c1(&self) -> f64 {
        self.gamma_q / self.gamma_c1
    }

    pub fn ratio_c1hat(&self) -> f64 {
        self.gamma_q / self.gamma_c1hat
    }

    /// Applicable bound for `C1`: `2 sqrt(2/3)` for `|lambda0| >= 1`,
    /// `sqrt(2 (5 + sqrt 5) / 3)` for `|lambda0| <= 1` with `‖C‖_2 <= 1`.
    pub fn bound_c1(&self) -> Option<f64> {
        ratio_bound(self.lambda0.norm(), self.c_norm)
    }

    /// Mirror image of [`bound_c1`](Self::bound_c1) with `|lambda0|` inverted.
    pub fn bound_c1hat(&self) -> Option<f64> {
        ratio_bound(1.0 / self.lambda0.norm(), self.c_norm)
    }
}

/// Rounded-up constants of the linearization ratio bounds.
pub const RATIO_BOUND_LARGE: f64 = 1.64;
pub const RATIO_BOUND_SMALL: f64 = 2.21;

fn ratio_bound(modulus: f64, c_norm: f64) -> Option<f64> {
    if modulus >= 1.0 {
        Some(RATIO_BOUND_LARGE)
    } else if c_norm <= 1.0 {
        Some(RATIO_BOUND_SMALL)
    } else {
        None
    }
}

/// Ratio sample for a quadratic with `‖M‖_2 = ‖K‖_2 = 1`.
pub fn ratio_sample(problem: &ConstructedProblem) -> Result<RatioSample> {
    let (m, c, k) = problem
        .polynomial
        .quadratic_parts()
        .ok_or_else(|| Error::Domain("ratio experiment needs a quadratic".into()))?;
    let b = &problem.bases;
    let l0 = b.lambda0;
    let gamma_q = problem.gamma();
    let right = right_kernel_basis_c1(&b.x_sing, &b.x, l0);
    let x_l = right.col(right.cols() - 1);
    let left1 = left_kernel_basis_c1(&b.y_sing, &b.y, l0, m, c)?;
    let left2 = left_kernel_basis_c1hat(&b.y_sing, &b.y, l0, m)?;
    let p1 = c1(m, c, k)?.to_polynomial();
    let p2 = c1hat(m, c, k)?.to_polynomial();
    Ok(RatioSample {
        lambda0: l0,
        c_norm: c.norm2()?,
        gamma_q,
        gamma_c1: gamma_p(&p1, l0, &x_l, &left1.eigenvector),
        gamma_c1hat: gamma_p(&p2, l0, &x_l, &left2.eigenvector),
        beta_c1: left1.beta,
        beta_c1hat: left2.beta,
    })
}

/// Ratio samples for `count` random normalized singular quadratics of order
/// `n` and normal rank `r`; `|lambda0|` is log-uniform on `[1/spread, spread]`
/// before normalization.
pub fn ratio_experiment<R: Rng + ?Sized>(
    count: usize,
    n: usize,
    r: usize,
    spread: f64,
    rng: &mut R,
) -> Result<Vec<RatioSample>> {
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        let problem = random_normalized_quadratic(n, r, spread, rng)?;
        out.push(ratio_sample(&problem)?);
    }
    Ok(out)
}

pub fn random_normalized_quadratic<R: Rng + ?Sized>(
    n: usize,
    r: usize,
    spread: f64,
    rng: &mut R,
) -> Result<ConstructedProblem> {
    let modulus = spread.powf(2.0 * rng.random::<f64>() - 1.0);
    let phase = rng.random::<f64>() * core::f64::consts::TAU;
    constructed_problem(n, 2, r, Complex64::from_polar(modulus, phase), rng)?.normalized_quadratic()
}

/// `kappa_bar` of an accepted quadratic eigenvalue at the level of the
/// linearization it came from, next to the quadratic-level value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinearizationKappa {
    pub lambda: Complex64,
    pub kappa_quadratic: f64,
    pub kappa_linearization: f64,
    pub from_c1: bool,
}

/// Solves a normalized constructed quadratic once through `C1` (or `Ĉ1` when
/// `use_c1` is false) and reports both `kappa_bar` values for the computed
/// eigenvalue closest to `lambda0`, provided it passes the threshold.
pub fn linearization_kappa<R: Rng + ?Sized>(
    problem: &ConstructedProblem,
    cfg: &SolverConfig,
    use_c1: bool,
    rng: &mut R,
) -> Result<Option<LinearizationKappa>> {
    let (m, c, k) = problem
        .polynomial
        .quadratic_parts()
        .ok_or_else(|| Error::Domain("needs a quadratic".into()))?;
    let e = cfg.sample_direction(problem.order(), 2, rng);
    let perturbed = problem.polynomial.perturbed(&e, cfg.epsilon)?;
    let (mt, ct, kt) = perturbed.quadratic_parts().expect("degree two");
    let l0 = problem.lambda0();
    let lin = if use_c1 { c1(mt, ct, kt)? } else { c1hat(mt, ct, kt)? };
    let dec = lin.eig(true, cfg.inf_cutoff)?;
    let Some(j) = (0..dec.len())
        .filter(|&j| dec.eigenvalue(j).is_some())
        .min_by(|&i, &j| {
            let di = (dec.eigenvalue(i).unwrap() - l0).norm();
            let dj = (dec.eigenvalue(j).unwrap() - l0).norm();
            di.total_cmp(&dj)
        })
    else {
        return Ok(None);
    };
    let lambda = dec.eigenvalue(j).unwrap();
    let (xl, yl) = (&dec.right_vectors[j], &dec.left_vectors[j]);
    let (x, y) = if use_c1 {
        crate::linearize::recover_vectors_c1(xl, yl)?
    } else {
        crate::linearize::recover_vectors_c1hat(xl, yl)?
    };
    let kappa_quadratic = crate::condition::kappa_bar_quadratic(m, c, lambda, &x, &y);
    if kappa_quadratic > cfg.tol {
        return Ok(None);
    }
    let lin_exact = if use_c1 { c1(m, c, k)? } else { c1hat(m, c, k)? };
    let kappa_linearization = 1.0 / gamma_p(&lin_exact.to_polynomial(), lambda, xl, yl);
    Ok(Some(LinearizationKappa {
        lambda,
        kappa_quadratic,
        kappa_linearization,
        from_c1: use_c1,
    }))
}

/// Orthonormal basis of `ker P(lambda0 + h e^{i theta})`, a first-order
/// approximation of the right singular space at `lambda0`.
pub fn singular_space_estimate<R: Rng + ?Sized>(
    p: &MatrixPolynomial,
    lambda0: Complex64,
    h: f64,
    nullity: usize,
    rank_tol: f64,
    rng: &mut R,
) -> Result<ComplexMatrix> {
    if !(h > 0.0) {
        return Err(Error::Domain(alloc::format!(
            "probe distance must be positive, got {h}"
        )));
    }
    for _ in 0..4 {
        let theta = rng.random::<f64>() * core::f64::consts::TAU;
        let mu = lambda0 + Complex64::from_polar(h, theta);
        let basis = nullspace_basis(&p.evaluate(mu), rank_tol)?;
        if basis.cols() == nullity {
            return Ok(basis);
        }
    }
    Err(Error::Degenerate("probe point nullity differs from n - r"))
}

/// Sine of the largest principal angle between the column spaces of two
/// orthonormal bases of equal size.
pub fn subspace_distance(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<f64> {
    if a.cols() != b.cols() || a.rows() != b.rows() {
        return Err(Error::DimensionMismatch("subspaces of different shape".into()));
    }
    if a.cols() == 0 {
        return Ok(0.0);
    }
    let proj = a.matmul(&a.adjoint().matmul(b));
    (b - &proj).norm2()
}

/// Per-draw quantities behind the two propositions on `gamma_bar`.
#[derive(Debug, Clone, PartialEq)]
pub struct PropositionSamples {
    /// `|a_ell| |b_ell|`.
    pub alignments: Vec<f64>,
    /// `gamma_bar / gamma_P` computed from `y_bar^* P' x_bar` directly.
    pub gamma_ratios: Vec<f64>,
}

pub fn proposition_samples<R: Rng + ?Sized>(
    problem: &ConstructedProblem,
    samples: usize,
    rng: &mut R,
) -> Result<PropositionSamples> {
    let gamma = problem.gamma();
    let p = &problem.polynomial;
    let b = &problem.bases;
    let dp = p.derivative_at(b.lambda0);
    let w = weight(b.lambda0, p.degree());
    let (full_x, full_y) = (b.full_right(), b.full_left());
    let mut alignments = Vec::with_capacity(samples);
    let mut gamma_ratios = Vec::with_capacity(samples);
    while alignments.len() < samples {
        let e = sample_perturbation(problem.order(), problem.degree(), rng);
        let lp = match limit_pencil(p, b, &e) {
            Ok(lp) => lp,
            Err(Error::BadDirection { .. }) => continue,
            Err(err) => return Err(err),
        };
        let x_bar = full_x.mul_vec(&lp.b);
        let y_bar = full_y.mul_vec(&lp.a);
        let gamma_bar = dp.bilinear(&y_bar, &x_bar).norm() / w;
        alignments.push(lp.alignment());
        gamma_ratios.push(gamma_bar / gamma);
    }
    Ok(PropositionSamples {
        alignments,
        gamma_ratios,
    })
}

/// Outcome of checking the spurious-eigenvalue lower bound on solver runs.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct SpuriousCheck {
    /// Eigenvalues for which the precondition held.
    pub checked: usize,
    pub violations: usize,
    pub not_applicable: usize,
    /// Smallest `kappa_bar / bound` among the checked eigenvalues.
    pub min_margin: f64,
    /// Violations of the first-order bound `tau / (11.2 eps ‖E‖ ‖P'‖)`.
    pub first_order_violations: usize,
    pub first_order_min_margin: f64,
}

/// Runs the quadratic solver `trials` times and checks
/// `kappa_bar >= eps^-2 tau^2 / (16 c ‖E‖^2 ‖P'‖_2)` for every computed
/// eigenvalue with `tau = sigma_r(P(lambda_hat)) >= 5 c eps`, next to the
/// first-order bound of [`spurious_lower_bound_first_order`].
pub fn spurious_bound_check(
    p: &MatrixPolynomial,
    normal_rank: usize,
    cfg: &SolverConfig,
    trials: usize,
) -> Result<SpuriousCheck> {
    let (m, c, k) = p
        .quadratic_parts()
        .ok_or_else(|| Error::Domain("the spurious check runs the quadratic solver".into()))?;
    let scaled = scale_quadratic(m, c, k)?;
    let gamma = scaled.info.gamma;
    let base = MatrixPolynomial::quadratic(scaled.m, scaled.c, scaled.k)?;
    let mut out = SpuriousCheck {
        min_margin: f64::INFINITY,
        first_order_min_margin: f64::INFINITY,
        ..SpuriousCheck::default()
    };
    for t in 0..trials as u64 {
        let mut rng = stream(cfg.seed, t);
        let e = cfg.sample_direction(p.order(), 2, &mut rng);
        for ev in solve_with_perturbation(p, &e, cfg)? {
            let lam = ev.value / gamma;
            let sv = svd(&base.evaluate(lam))?.singular_values;
            let tau = if normal_rank == 0 { 0.0 } else { sv[normal_rank - 1] };
            let dnorm = base.derivative_at(lam).norm2()?;
            match spurious_lower_bound(tau, cfg.epsilon, lam, e.joint_norm(), dnorm, 2) {
                Ok(bound) => {
                    out.checked += 1;
                    let margin = ev.kappa_bar / bound;
                    out.min_margin = out.min_margin.min(margin);
                    if margin < 1.0 {
                        out.violations += 1;
                    }
                    let linear = spurious_lower_bound_first_order(tau, cfg.epsilon, lam, e.joint_norm(), dnorm, 2)?;
                    let margin = ev.kappa_bar / linear;
                    out.first_order_min_margin = out.first_order_min_margin.min(margin);
                    if margin < 1.0 {
                        out.first_order_violations += 1;
                    }
                }
                Err(Error::Domain(_)) => out.not_applicable += 1,
                Err(err) => return Err(err),
            }
        }
    }
    Ok(out)
}

/// `|y^* x|` style helper used by tests: cosine of the angle between vectors.
pub fn vector_alignment(a: &[Complex64], b: &[Complex64]) -> f64 {
    inner(a, b).norm() / (norm(a) * norm(b))
}
