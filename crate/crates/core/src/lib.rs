//! Finite, well-conditioned eigenvalues of singular matrix pencils and
//! singular quadratic eigenvalue problems.
//!
//! The singular problem is regularized by a small random perturbation that is
//! uniformly distributed on the unit sphere of all coefficients, the resulting
//! regular problem is solved with a complex QZ iteration, and each computed
//! eigenvalue is classified by the condition statistic
//! `kappa_bar = sqrt(sum |lambda|^(2j)) / |y^* P'(lambda) x|`. Spurious
//! eigenvalues coming from the singular part have a huge `kappa_bar` with high
//! probability and are rejected.
//!
//! The crate also contains the machinery to check the underlying probabilistic
//! theory numerically: directional sensitivities, delta-weak condition number
//! bounds, companion linearization ratio bounds and a Monte Carlo harness.
//!
//! The crate is `no_std` and only needs `alloc`.
//!
//! ```
//! use singeig::{ComplexMatrix, SolverConfig};
//! use singeig::solver::{accepted_values, solve_singular_pencil};
//!
//! // A - lambda B with eigenvalues 1 and 2 and a singular 1x1 block
//! let a = ComplexMatrix::from_real_rows(&[[1.0, 0.0, 0.0], [0.0, 2.0, 0.0], [0.0, 0.0, 0.0]]);
//! let b = ComplexMatrix::from_real_rows(&[[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 0.0]]);
//! let found = solve_singular_pencil(&a, &b, &SolverConfig { seed: 3, ..SolverConfig::default() }).unwrap();
//! let mut values = accepted_values(&found);
//! values.sort_by(|x, y| x.re.total_cmp(&y.re));
//! assert_eq!(values.len(), 2);
//! assert!((values[0].re - 1.0).abs() < 1e-6 && (values[1].re - 2.0).abs() < 1e-6);
//! ```

#![no_std]
// once std is in the crate graph (dev builds) the `Float` imports look unused
#![allow(unused_imports)]
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod condition;
pub mod corpus;
pub mod dense;
mod error;
pub mod linearize;
pub mod matpoly;
pub mod rng;
pub mod solver;
pub mod stats;
pub mod verify;

pub use dense::{ComplexMatrix, GeneralizedEigenDecomposition, Svd};
pub use error::{Error, Result};
pub use matpoly::MatrixPolynomial;
pub use num_complex::Complex64;
pub use solver::{ClassifiedEigenvalue, EigenSource, SolverConfig};

/// Unit roundoff of IEEE double precision.
pub const UNIT_ROUNDOFF: f64 = f64::EPSILON / 2.0;
