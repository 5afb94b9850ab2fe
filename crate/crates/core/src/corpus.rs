//! Built-in singular problems with known finite eigenvalues.
//!
//! | name          | kind      | order | finite eigenvalues          |
//! |---------------|-----------|-------|-----------------------------|
//! | `kagstrom2x2` | quadratic | 2     | 1, 2                        |
//! | `ex1`         | quadratic | 3     | 1                           |
//! | `ex2`         | quadratic | 2     | none                        |
//! | `ex3`         | quadratic | 4     | 0                           |
//! | `ex4`         | quadratic | 3     | 1, 2                        |
//! | `ex5`         | quadratic | 8     | 1 + 1e-5 i, i = 1..5        |
//! | `ex6`         | quadratic | 11    | 0 and 1/i, i = 2..8         |
//! | `ex7`         | quadratic | 11    | 2, ..., 8 (reversal of ex6) |
//! | `ex8`         | quadratic | 11    | 2, ..., 8 (scaled ex7)      |
//! | `ex10`        | pencil    | 4x5   | 1, 2                        |
//!
//! The randomized examples draw their orthogonal factors from fixed seeds,
//! so every call returns bit-identical matrices.

use alloc::string::String;
use alloc::vec::Vec;

use num_complex::Complex64;
use num_traits::Float;

use crate::dense::ComplexMatrix;
use crate::matpoly::MatrixPolynomial;
use crate::rng::{random_orthogonal, seeded};
use crate::verify::TruthSpec;
use crate::{Error, Result};

pub const BUILTIN_NAMES: [&str; 10] = [
    "kagstrom2x2",
    "ex1",
    "ex2",
    "ex3",
    "ex4",
    "ex5",
    "ex6",
    "ex7",
    "ex8",
    "ex10",
];

const SEED_EX5: u64 = 5;
const SEED_EX6: u64 = 6;
const SEED_EX8: u64 = 8;

#[derive(Debug, Clone, PartialEq)]
pub struct BuiltinProblem {
    pub name: String,
    pub polynomial: MatrixPolynomial,
    pub truth: TruthSpec,
    pub note: Option<&'static str>,
}

pub fn builtin(name: &str) -> Result<BuiltinProblem> {
    let (polynomial, eigenvalues, note) = match name {
        "kagstrom2x2" => (kagstrom(), reals(&[1.0, 2.0]), None),
        "ex1" => (ex1(), reals(&[1.0]), None),
        "ex2" => (ex2(), Vec::new(), None),
        "ex3" => (ex3(), reals(&[0.0]), None),
        "ex4" => (ex4(), reals(&[1.0, 2.0]), None),
        "ex5" => {
            let lambdas: Vec<f64> = (1..=5).map(|i| 1.0 + 1e-5 * i as f64).collect();
            (shifted_family(8, &lambdas, SEED_EX5), reals(&lambdas), None)
        }
        "ex6" => (shifted_family(11, &ex6_eigenvalues(), SEED_EX6), reals(&ex6_eigenvalues()), None),
        "ex7" => (ex7(), reals(&ex7_eigenvalues()), None),
        "ex8" => (
            ex8(),
            reals(&ex7_eigenvalues()),
            Some("the source text asks for 8 detected eigenvalues, but the reversed family has 7 finite ones; 7 are used"),
        ),
        "ex10" => (ex10(), reals(&[1.0, 2.0]), None),
        _ => {
            return Err(Error::Domain(alloc::format!(
                "unknown builtin `{name}`; expected one of {}",
                BUILTIN_NAMES.join(", ")
            )))
        }
    };
    Ok(BuiltinProblem {
        name: name.into(),
        polynomial: polynomial?,
        truth: TruthSpec::new(eigenvalues),
        note,
    })
}

fn reals(values: &[f64]) -> Vec<Complex64> {
    values.iter().map(|&v| Complex64::new(v, 0.0)).collect()
}

fn kagstrom() -> Result<MatrixPolynomial> {
    MatrixPolynomial::quadratic(
        ComplexMatrix::from_real_rows(&[[1.0, 0.0], [0.0, 0.0]]),
        ComplexMatrix::from_real_rows(&[[-3.0, 0.0], [0.0, 0.0]]),
        ComplexMatrix::from_real_rows(&[[2.0, 0.0], [0.0, 0.0]]),
    )
}

fn ex1() -> Result<MatrixPolynomial> {
    MatrixPolynomial::quadratic(
        ComplexMatrix::from_real_rows(&[[1.0, 4.0, 2.0], [0.0, 0.0, 0.0], [1.0, 4.0, 2.0]]),
        ComplexMatrix::from_real_rows(&[[1.0, 3.0, 0.0], [1.0, 4.0, 2.0], [0.0, -1.0, -2.0]]),
        ComplexMatrix::from_real_rows(&[[1.0, 2.0, -2.0], [0.0, -1.0, -2.0], [0.0, 0.0, 0.0]]),
    )
}

fn ex2() -> Result<MatrixPolynomial> {
    MatrixPolynomial::quadratic(
        ComplexMatrix::from_real_rows(&[[1.0, 0.0], [0.0, 0.0]]),
        ComplexMatrix::from_real_rows(&[[1.0, 0.0], [0.0, 0.0]]),
        ComplexMatrix::from_real_rows(&[[0.0, 0.0], [1.0, 0.0]]),
    )
}

fn ex3() -> Result<MatrixPolynomial> {
    MatrixPolynomial::quadratic(
        ComplexMatrix::from_real_rows(&[
            [1.0, 0.0, 0.0, 0.0],
            [0.0, 1.0, 0.0, 0.0],
            [0.0, 0.0, 0.0, 0.0],
            [0.0, 0.0, 0.0, 0.0],
        ]),
        ComplexMatrix::from_real_rows(&[
            [0.0, 1.0, 1.0, 0.0],
            [1.0, 0.0, 0.0, 1.0],
            [1.0, 0.0, 0.0, 0.0],
            [0.0, 0.0, 0.0, 0.0],
        ]),
        ComplexMatrix::from_real_rows(&[
            [0.0, 0.0, 0.0, 0.0],
            [0.0, 0.0, 1.0, 0.0],
            [0.0, 1.0, 0.0, 1.0],
            [0.0, 0.0, 0.0, 0.0],
        ]),
    )
}

fn ex4() -> Result<MatrixPolynomial> {
    MatrixPolynomial::quadratic(
        ComplexMatrix::from_real_rows(&[[0.0, 1.0, 0.0], [0.0, 0.0, 1.0], [0.0, 1.0, 1.0]]),
        ComplexMatrix::from_real_rows(&[[1.0, -1.0, 0.0], [0.0, 1.0, -2.0], [1.0, 0.0, -2.0]]),
        ComplexMatrix::from_real_rows(&[[-1.0, 0.0, 0.0], [0.0, -2.0, 0.0], [-1.0, -2.0, 0.0]]),
    )
}

fn ex6_eigenvalues() -> Vec<f64> {
    let mut v = alloc::vec![0.0];
    v.extend((2..=8).map(|i| 1.0 / i as f64));
    v
}

fn ex7_eigenvalues() -> Vec<f64> {
    (2..=8).map(|i| i as f64).collect()
}

/// Unrotated coefficients of the shift-structured family: row `i` of `Q` is
/// `(lambda - lambda_i) (e_i + lambda e_{i+1})^T` for each listed eigenvalue,
/// the remaining rows are zero.
pub fn shifted_family_blocks(n: usize, lambdas: &[f64]) -> (ComplexMatrix, ComplexMatrix, ComplexMatrix) {
    assert!(lambdas.len() < n, "need room for the superdiagonal");
    let mut m = ComplexMatrix::zeros(n, n);
    let mut c = ComplexMatrix::zeros(n, n);
    let mut k = ComplexMatrix::zeros(n, n);
    for (i, &l) in lambdas.iter().enumerate() {
        m[(i, i + 1)] = Complex64::new(1.0, 0.0);
        c[(i, i)] = Complex64::new(1.0, 0.0);
        c[(i, i + 1)] = Complex64::new(-l, 0.0);
        k[(i, i)] = Complex64::new(-l, 0.0);
    }
    (m, c, k)
}

fn shifted_family(n: usize, lambdas: &[f64], seed: u64) -> Result<MatrixPolynomial> {
    let (m, c, k) = shifted_family_blocks(n, lambdas);
    let mut rng = seeded(seed);
    let u = random_orthogonal(n, &mut rng);
    let v = random_orthogonal(n, &mut rng);
    let rotate = |x: &ComplexMatrix| u.adjoint().matmul(x).matmul(&v);
    MatrixPolynomial::quadratic(rotate(&m), rotate(&c), rotate(&k))
}

fn ex7() -> Result<MatrixPolynomial> {
    Ok(shifted_family(11, &ex6_eigenvalues(), SEED_EX6)?.reverse())
}

fn ex8() -> Result<MatrixPolynomial> {
    let base = ex7()?;
    let a: f64 = 2.0;
    let d: Vec<Complex64> = [
        1.0,
        a * a,
        a,
        1.0,
        a.powi(3),
        1.0,
        a.powi(4),
        a.powi(5),
        a.powi(6),
        1.0,
        1.0,
    ]
    .iter()
    .map(|&x| Complex64::new(x, 0.0))
    .collect();
    let d = ComplexMatrix::from_diag(&d);
    let mut rng = seeded(SEED_EX8);
    let u = random_orthogonal(11, &mut rng);
    let v = random_orthogonal(11, &mut rng);
    let left = u.matmul(&d);
    let right = d.matmul(&v);
    let coeffs = base
        .coefficients()
        .iter()
        .map(|x| left.matmul(x).matmul(&right))
        .collect();
    MatrixPolynomial::new(coeffs)
}

fn ex10() -> Result<MatrixPolynomial> {
    let a = ComplexMatrix::from_real_rows(&[
        [1.0, -2.0, 100.0, 0.0, 0.0],
        [1.0, 0.0, -1.0, 0.0, 0.0],
        [0.0, 0.0, 0.0, 1.0, -75.0],
        [0.0, 0.0, 0.0, 0.0, 2.0],
    ]);
    let b = ComplexMatrix::from_real_rows(&[
        [0.0, 1.0, 0.0, 0.0, 0.0],
        [0.0, 0.0, 1.0, 0.0, 0.0],
        [0.0, 0.0, 0.0, 1.0, 0.0],
        [0.0, 0.0, 0.0, 0.0, 1.0],
    ]);
    MatrixPolynomial::pencil(a, b)
}

/// Singular pencil of order `size` and normal rank `rank` with a known
/// regular part.
///
/// The Kronecker structure is `p` blocks `L_1 ⊕ L_1^T`, `size - rank - p`
/// zero `1x1` blocks and a diagonal regular part with eigenvalues
/// `1/2, 1/3, ...`, mixed by random real orthogonal factors.
pub fn synth_pencil(size: usize, rank: usize, seed: u64) -> Result<BuiltinProblem> {
    if rank > size || size == 0 {
        return Err(Error::Domain(alloc::format!(
            "need 0 < size and rank <= size, got size {size}, rank {rank}"
        )));
    }
    let deficiency = size - rank;
    let pairs = deficiency.min(rank / 4);
    let zeros = deficiency - pairs;
    let regular = rank - 2 * pairs;
    let mut a = ComplexMatrix::zeros(size, size);
    let mut b = ComplexMatrix::zeros(size, size);
    let one = Complex64::new(1.0, 0.0);
    let mut eigenvalues = Vec::with_capacity(regular);
    for i in 0..regular {
        let l = 1.0 / (i as f64 + 2.0);
        a[(i, i)] = Complex64::new(l, 0.0);
        b[(i, i)] = one;
        eigenvalues.push(Complex64::new(l, 0.0));
    }
    let mut at = regular;
    for _ in 0..pairs {
        // L_1 = [lambda, 1] in row `at`, columns at, at+1
        a[(at, at + 1)] = one;
        b[(at, at)] = -one;
        // L_1^T in rows at+1, at+2, column at+2
        a[(at + 2, at + 2)] = one;
        b[(at + 1, at + 2)] = -one;
        at += 3;
    }
    debug_assert_eq!(at + zeros, size);
    let mut rng = seeded(seed);
    let u = random_orthogonal(size, &mut rng);
    let v = random_orthogonal(size, &mut rng);
    let polynomial = MatrixPolynomial::pencil(u.matmul(&a).matmul(&v), u.matmul(&b).matmul(&v))?;
    Ok(BuiltinProblem {
        name: alloc::format!("synth-pencil-{size}-{rank}"),
        polynomial,
        truth: TruthSpec::new(eigenvalues),
        note: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matpoly::NormalRankProbe;

    #[test]
    fn every_builtin_builds() {
        for name in BUILTIN_NAMES {
            let p = builtin(name).unwrap();
            assert!(p.polynomial.degree() >= 1, "{name}");
        }
        assert!(builtin("ex9").is_err());
    }

    #[test]
    fn truth_lists() {
        assert_eq!(builtin("ex2").unwrap().truth.finite_eigenvalues.len(), 0);
        let ex5 = builtin("ex5").unwrap().truth.finite_eigenvalues;
        assert_eq!(ex5.len(), 5);
        assert!((ex5[2].re - 1.00003).abs() < 1e-15);
        assert_eq!(builtin("ex7").unwrap().truth.finite_eigenvalues.len(), 7);
    }

    #[test]
    fn example_ten_is_padded() {
        let p = builtin("ex10").unwrap().polynomial;
        assert_eq!(p.original_shape(), (4, 5));
        assert_eq!(p.order(), 5);
        assert_eq!(p.coefficient(0).row(4), &[Complex64::new(0.0, 0.0); 5]);
    }

    #[test]
    fn shifted_family_vanishes_at_its_eigenvalues() {
        let p = builtin("ex6").unwrap().polynomial;
        let probe = NormalRankProbe::default();
        assert_eq!(p.normal_rank(&probe).unwrap(), 8);
        for l in ex6_eigenvalues() {
            let r = crate::dense::rank_with_tol(&p.evaluate(Complex64::new(l, 0.0)), 1e-10).unwrap();
            assert_eq!(r, 7, "lambda = {l}");
        }
    }

    #[test]
    fn synthetic_pencil_structure() {
        let p = synth_pencil(12, 9, 3).unwrap();
        assert_eq!(p.polynomial.normal_rank(&NormalRankProbe::default()).unwrap(), 9);
        assert_eq!(p.truth.finite_eigenvalues.len(), 9 - 2 * 2);
        assert!(synth_pencil(3, 4, 0).is_err());
    }
}
