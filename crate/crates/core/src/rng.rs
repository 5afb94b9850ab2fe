//! Seeded random streams and random matrix generators.
//!
//! Every random quantity in the crate is drawn from an explicit
//! [`ChaCha8Rng`]. Independent streams for parallel Monte Carlo are derived
//! from a master seed with [`stream`]: the generator is seeded with the master
//! seed and switched to ChaCha stream number `index`, so trial `i` sees the
//! same numbers regardless of how trials are scheduled.

use alloc::vec::Vec;

use num_complex::Complex64;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_distr::{Distribution, StandardNormal};

pub use rand_chacha::ChaCha8Rng;

use crate::dense::ComplexMatrix;

pub fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Independent stream `index` derived from `master_seed`.
pub fn stream(master_seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(master_seed);
    rng.set_stream(index);
    rng
}

/// `N(0,1) + i N(0,1)`.
pub fn complex_gaussian<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    let re: f64 = StandardNormal.sample(rng);
    let im: f64 = StandardNormal.sample(rng);
    Complex64::new(re, im)
}

pub fn complex_gaussian_matrix<R: Rng + ?Sized>(rows: usize, cols: usize, rng: &mut R) -> ComplexMatrix {
    ComplexMatrix::from_fn(rows, cols, |_, _| complex_gaussian(rng))
}

pub fn complex_gaussian_vector<R: Rng + ?Sized>(len: usize, rng: &mut R) -> Vec<Complex64> {
    (0..len).map(|_| complex_gaussian(rng)).collect()
}

/// Real matrix with i.i.d. entries uniform on `[0, 1)`.
pub fn uniform_real_matrix<R: Rng + ?Sized>(rows: usize, cols: usize, rng: &mut R) -> ComplexMatrix {
    ComplexMatrix::from_fn(rows, cols, |_, _| Complex64::new(rng.random::<f64>(), 0.0))
}

/// Real orthogonal factor of a uniform random matrix (`orth(rand(n,n))`).
pub fn random_orthogonal<R: Rng + ?Sized>(n: usize, rng: &mut R) -> ComplexMatrix {
    uniform_real_matrix(n, n, rng).orthonormalize_columns()
}

/// Unitary factor of a complex Gaussian matrix, with the phases of the
/// triangular factor removed so that the result is Haar distributed.
pub fn haar_unitary<R: Rng + ?Sized>(n: usize, rng: &mut R) -> ComplexMatrix {
    let g = complex_gaussian_matrix(n, n, rng);
    // Gram-Schmidt on columns yields the Q of a QR factorization with a
    // positive-diagonal R, which is already Haar distributed.
    g.orthonormalize_columns()
}
