//! Eigenvalue condition quantities for singular matrix polynomials.
//!
//! For a simple eigenvalue `lambda0` with right/left eigenvectors `x`, `y` the
//! central scalar is
//! `gamma_P = |y^* P'(lambda0) x| / sqrt(sum_j |lambda0|^(2j))`; its reciprocal
//! is the classification statistic `kappa_bar`. Under a random perturbation
//! direction `E` uniformly distributed on the unit sphere of all `N = n^2 (m+1)`
//! coefficients, `gamma_P^2 sigma_E^2` is distributed like `Z_N / Z_{n-r+1}`
//! with independent `Z_k ~ Beta(1, k-1)`.

use alloc::vec::Vec;

use num_complex::Complex64;
use num_traits::{Float, Zero};

use crate::dense::{inner, ComplexMatrix, Lu};
use crate::matpoly::{MatrixPolynomial, PerturbationSample};
use crate::stats::integrate;
use crate::{Error, Result};

/// Pivot growth above which the inner determinant `det(Y^* E X)` counts as singular.
pub const BAD_DIRECTION_CONDITION: f64 = 1e12;

const TAIL_QUADRATURE_TOL: f64 = 1e-10;

/// `sqrt(sum_{j=0}^m |lambda|^(2j))`.
pub fn weight(lambda: Complex64, m: usize) -> f64 {
    let a2 = lambda.norm_sqr();
    let mut s = 0.0;
    let mut p = 1.0;
    for _ in 0..=m {
        s += p;
        p *= a2;
    }
    s.sqrt()
}

/// `|y^* P'(lambda0) x| / sqrt(sum_j |lambda0|^(2j))`.
pub fn gamma_p(p: &MatrixPolynomial, lambda0: Complex64, x: &[Complex64], y: &[Complex64]) -> f64 {
    p.derivative_at(lambda0).bilinear(y, x).norm() / weight(lambda0, p.degree())
}

fn reciprocal(num: f64, den: f64) -> f64 {
    if den == 0.0 {
        f64::INFINITY
    } else {
        num / den
    }
}

/// `sqrt(1 + |lambda|^2) / |y^* B x|`, infinite when the inner product vanishes.
pub fn kappa_bar_pencil(b: &ComplexMatrix, lambda: Complex64, x: &[Complex64], y: &[Complex64]) -> f64 {
    reciprocal(weight(lambda, 1), b.bilinear(y, x).norm())
}

/// `sqrt(1 + |lambda|^2 + |lambda|^4) / |y^* (2 lambda M + C) x|`.
pub fn kappa_bar_quadratic(
    m: &ComplexMatrix,
    c: &ComplexMatrix,
    lambda: Complex64,
    x: &[Complex64],
    y: &[Complex64],
) -> f64 {
    let mx = m.mul_vec(x);
    let cx = c.mul_vec(x);
    let d: Vec<Complex64> = mx.iter().zip(&cx).map(|(a, b)| a * lambda * 2.0 + b).collect();
    reciprocal(weight(lambda, 2), inner(y, &d).norm())
}

/// `gamma_bar` together with `kappa_bar = 1 / gamma_bar`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConditionEstimate {
    pub lambda: Complex64,
    pub gamma_bar: f64,
    pub kappa_bar: f64,
}

impl ConditionEstimate {
    pub fn from_gamma(lambda: Complex64, gamma_bar: f64) -> Self {
        Self {
            lambda,
            gamma_bar,
            kappa_bar: reciprocal(1.0, gamma_bar),
        }
    }

    /// Estimate for eigenvectors `x`, `y` of `P` (or of a nearby problem).
    pub fn new(p: &MatrixPolynomial, lambda: Complex64, x: &[Complex64], y: &[Complex64]) -> Self {
        Self::from_gamma(lambda, gamma_p(p, lambda, x, y))
    }
}

/// Kernel bases at a simple eigenvalue: `[X x]` spans `ker P(lambda0)`,
/// `[Y y]` spans `ker P(lambda0)^*`, and `X`, `Y` span the singular parts.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenBases {
    pub lambda0: Complex64,
    pub x_sing: ComplexMatrix,
    pub x: Vec<Complex64>,
    pub y_sing: ComplexMatrix,
    pub y: Vec<Complex64>,
}

impl EigenBases {
    /// `n - r + 1`, the size of the full kernel bases.
    pub fn ell(&self) -> usize {
        self.x_sing.cols() + 1
    }

    pub fn full_right(&self) -> ComplexMatrix {
        let mut cols: Vec<Vec<Complex64>> = (0..self.x_sing.cols()).map(|j| self.x_sing.col(j)).collect();
        cols.push(self.x.clone());
        ComplexMatrix::from_columns(self.x.len(), &cols)
    }

    pub fn full_left(&self) -> ComplexMatrix {
        let mut cols: Vec<Vec<Complex64>> = (0..self.y_sing.cols()).map(|j| self.y_sing.col(j)).collect();
        cols.push(self.y.clone());
        ComplexMatrix::from_columns(self.y.len(), &cols)
    }
}

/// `G = [Y y]^* E(lambda0) [X x]`.
fn projected_perturbation(bases: &EigenBases, e: &PerturbationSample) -> ComplexMatrix {
    let el = e.evaluate(bases.lambda0);
    bases.full_left().adjoint().matmul(&el).matmul(&bases.full_right())
}

/// First-order coefficient `c1` in `lambda0(eps) = lambda0 + c1 eps + O(eps^2)`:
/// `-det([Y y]^* E [X x]) / (y^* P'(lambda0) x det(Y^* E X))`.
pub fn first_order_coefficient(p: &MatrixPolynomial, bases: &EigenBases, e: &PerturbationSample) -> Result<Complex64> {
    let g = projected_perturbation(bases, e);
    let ell = g.rows();
    let inner_block = g.submatrix(0, ell - 1, 0, ell - 1);
    let (inner_log, inner_phase) = if ell == 1 {
        (0.0, Complex64::new(1.0, 0.0))
    } else {
        let lu = Lu::new(&inner_block)?;
        let cond = lu.pivot_ratio();
        if !(cond <= BAD_DIRECTION_CONDITION) {
            return Err(Error::BadDirection { condition: cond });
        }
        let d = lu.log_det();
        (d.log_abs, d.phase)
    };
    let full = Lu::new(&g)?.log_det();
    let dp = p.derivative_at(bases.lambda0).bilinear(&bases.y, &bases.x);
    if dp.is_zero() {
        return Err(Error::Degenerate("y^* P'(lambda0) x vanishes"));
    }
    if full.is_zero() {
        return Ok(Complex64::zero());
    }
    let ratio = (full.phase / inner_phase) * (full.log_abs - inner_log).exp();
    Ok(-ratio / dp)
}

/// Directional sensitivity `sigma_E = |first-order coefficient| / ‖E‖`.
pub fn directional_sensitivity(p: &MatrixPolynomial, bases: &EigenBases, e: &PerturbationSample) -> Result<f64> {
    Ok(first_order_coefficient(p, bases, e)?.norm() / e.joint_norm())
}

/// `P(sigma_E >= t) = P(Z_N / Z_{n-r+1} >= gamma^2 t^2)`.
pub fn sigma_tail_model(t: f64, gamma: f64, big_n: usize, n: usize, r: usize) -> f64 {
    let s = (gamma * t).powi(2);
    let ell = n - r + 1;
    beta_ratio_tail(s, big_n, ell)
}

/// `P(Z_N >= s Z_ell)` for independent `Z_k ~ Beta(1, k - 1)`, `Z_1 = 1`.
pub fn beta_ratio_tail(s: f64, big_n: usize, ell: usize) -> f64 {
    if s <= 0.0 {
        return 1.0;
    }
    let e = (big_n - 1) as f64;
    if ell <= 1 {
        return if s >= 1.0 { 0.0 } else { (1.0 - s).powf(e) };
    }
    // E_y[(1 - s y)_+^(N-1)] with y ~ Beta(1, ell - 1)
    let l = (ell - 1) as f64;
    let f = |y: f64| l * (1.0 - y).powf(l - 1.0) * (1.0 - s * y).max(0.0).powf(e);
    let upper = (1.0 / s).min(1.0);
    integrate(&f, 0.0, upper, TAIL_QUADRATURE_TOL).clamp(0.0, 1.0)
}

fn check_delta(delta: f64) -> Result<()> {
    if !(delta > 0.0 && delta < 1.0) {
        return Err(Error::Domain(alloc::format!("delta must lie in (0, 1), got {delta}")));
    }
    Ok(())
}

fn check_gamma(gamma: f64) -> Result<()> {
    if !(gamma > 0.0) || !gamma.is_finite() {
        return Err(Error::Domain(alloc::format!(
            "gamma_P must be positive and finite, got {gamma}"
        )));
    }
    Ok(())
}

/// `(1/gamma) max{1, sqrt((n - r) / (delta N))}`.
pub fn weak_cond_upper(delta: f64, gamma: f64, big_n: usize, n: usize, r: usize) -> Result<f64> {
    check_delta(delta)?;
    check_gamma(gamma)?;
    let s = ((n - r) as f64 / (delta * big_n as f64)).sqrt();
    Ok(s.max(1.0) / gamma)
}

/// Largest `delta` for which [`weak_cond_lower`] holds.
pub fn lower_bound_delta_limit(big_n: usize, n: usize, r: usize) -> f64 {
    let big_n = big_n as f64;
    let d = (n - r) as f64;
    (big_n - 1.0) * d / ((big_n + d - 2.0) * (big_n + d - 1.0))
}

/// `sqrt((N-1)(n-r) / ((N+n-r-2)(N+n-r-1) delta)) / gamma`.
pub fn weak_cond_lower(delta: f64, gamma: f64, big_n: usize, n: usize, r: usize) -> Result<f64> {
    check_delta(delta)?;
    check_gamma(gamma)?;
    if r >= n {
        return Err(Error::Domain("the lower bound needs normal rank r < n".into()));
    }
    let limit = lower_bound_delta_limit(big_n, n, r);
    if delta > limit {
        return Err(Error::Domain(alloc::format!(
            "delta = {delta} exceeds the validity limit {limit} of the lower bound"
        )));
    }
    Ok((limit / delta).sqrt() / gamma)
}

/// `1 / (sqrt(N delta) gamma)`, never larger than [`weak_cond_lower`].
pub fn weak_cond_lower_simplified(delta: f64, gamma: f64, big_n: usize) -> Result<f64> {
    check_delta(delta)?;
    check_gamma(gamma)?;
    Ok(1.0 / ((big_n as f64 * delta).sqrt() * gamma))
}

/// Both bounds on the delta-weak condition number.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeakCondBounds {
    /// `None` when `delta` is outside the lower bound's validity range.
    pub lower: Option<f64>,
    pub upper: f64,
    pub delta: f64,
    pub n: usize,
    pub r: usize,
    pub m: usize,
    pub big_n: usize,
}

pub fn weak_cond_bounds(delta: f64, gamma: f64, n: usize, r: usize, m: usize) -> Result<WeakCondBounds> {
    let big_n = n * n * (m + 1);
    let upper = weak_cond_upper(delta, gamma, big_n, n, r)?;
    let lower = match weak_cond_lower(delta, gamma, big_n, n, r) {
        Ok(v) => Some(v),
        Err(Error::Domain(_)) => None,
        Err(e) => return Err(e),
    };
    Ok(WeakCondBounds {
        lower,
        upper,
        delta,
        n,
        r,
        m,
        big_n,
    })
}

/// Upper bound on `P((X/Y)^(1/k) < t)` for `X ~ Beta(a, b)`, `Y ~ Beta(c, d)`, `t >= 1`.
pub fn beta_quotient_tail_bound(a: f64, b: f64, c: f64, d: f64, k: f64, t: f64) -> Result<f64> {
    if !(a > 0.0 && b > 0.0 && c > 0.0 && d > 0.0 && k > 0.0) {
        return Err(Error::Domain("beta parameters and k must be positive".into()));
    }
    if !(t >= 1.0) {
        return Err(Error::Domain(alloc::format!(
            "the beta quotient tail bound needs t >= 1, got {t}"
        )));
    }
    let log_term = crate::stats::ln_beta(a + c, b + d - 1.0)
        - crate::stats::ln_beta(a, b)
        - crate::stats::ln_beta(c, d)
        - c.ln()
        - c * k * t.ln();
    Ok(1.0 - log_term.exp())
}

/// Lower bound on `kappa_bar` of a spurious eigenvalue `lambda_hat` of
/// `P + eps E`, where `tau = sigma_r(P(lambda_hat))`.
///
/// Returns a domain error when `tau < 5 c eps` with
/// `c = sqrt(sum_j |lambda_hat|^(2j)) ‖E‖`, where the bound does not apply.
pub fn spurious_lower_bound(
    tau: f64,
    epsilon: f64,
    lambda_hat: Complex64,
    e_norm: f64,
    derivative_norm: f64,
    m: usize,
) -> Result<f64> {
    let w = weight(lambda_hat, m);
    let c = w * e_norm;
    if !(tau >= 5.0 * c * epsilon) {
        return Err(Error::Domain(alloc::format!(
            "spurious bound needs tau >= 5 c eps = {}, got tau = {tau}",
            5.0 * c * epsilon
        )));
    }
    Ok(tau * tau / (epsilon * epsilon * 16.0 * w * e_norm * e_norm * derivative_norm))
}

/// First-order lower bound `tau / (11.2 eps ‖E‖ ‖P'‖_2)` on `kappa_bar` of a
/// spurious eigenvalue under the same precondition as [`spurious_lower_bound`].
///
/// It keeps the cross terms `a^* Y^* P' q_x` and `q_y^* P' X b` of the
/// eigenvector splitting, which are of order `eps` whenever the singular
/// spaces vary with `lambda`.
pub fn spurious_lower_bound_first_order(
    tau: f64,
    epsilon: f64,
    lambda_hat: Complex64,
    e_norm: f64,
    derivative_norm: f64,
    m: usize,
) -> Result<f64> {
    let c = weight(lambda_hat, m) * e_norm;
    if !(tau >= 5.0 * c * epsilon) {
        return Err(Error::Domain(alloc::format!(
            "spurious bound needs tau >= 5 c eps = {}, got tau = {tau}",
            5.0 * c * epsilon
        )));
    }
    // 8 c eps / tau (1 + 2 c eps / tau) <= 11.2 c eps / tau
    Ok(tau / (11.2 * epsilon * e_norm * derivative_norm))
}

/// The limit eigenvector pencil `G + zeta D` of a perturbed simple eigenvalue.
#[derive(Debug, Clone, PartialEq)]
pub struct LimitPencil {
    /// `[Y y]^* E(lambda0) [X x]`.
    pub g: ComplexMatrix,
    /// `[Y y]^* P'(lambda0) [X x]`.
    pub d: ComplexMatrix,
    /// Left eigenvector `G^{-*} e_ell` normalized.
    pub a: Vec<Complex64>,
    /// Right eigenvector `G^{-1} e_ell` normalized.
    pub b: Vec<Complex64>,
}

impl LimitPencil {
    /// `|a_ell| |b_ell|`, the factor between `gamma_bar` and `gamma_P`.
    pub fn alignment(&self) -> f64 {
        let l = self.a.len() - 1;
        self.a[l].norm() * self.b[l].norm()
    }
}

pub fn limit_pencil(p: &MatrixPolynomial, bases: &EigenBases, e: &PerturbationSample) -> Result<LimitPencil> {
    let g = projected_perturbation(bases, e);
    let d = bases
        .full_left()
        .adjoint()
        .matmul(&p.derivative_at(bases.lambda0))
        .matmul(&bases.full_right());
    let ell = g.rows();
    let lu = Lu::new(&g)?;
    let cond = lu.pivot_ratio();
    if !(cond <= BAD_DIRECTION_CONDITION) {
        return Err(Error::BadDirection { condition: cond });
    }
    let mut e_ell = alloc::vec![Complex64::zero(); ell];
    e_ell[ell - 1] = Complex64::new(1.0, 0.0);
    let unit = |v: Vec<Complex64>| {
        let nv = crate::dense::norm(&v);
        v.into_iter().map(|z| z / nv).collect::<Vec<_>>()
    };
    let a = unit(lu.solve_adjoint(&e_ell)?);
    let b = unit(lu.solve(&e_ell)?);
    Ok(LimitPencil { g, d, a, b })
}
