use alloc::boxed::Box;
use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("matrix contains a non-finite entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },

    #[error("{routine} did not converge after {iterations} iterations")]
    NoConvergence { routine: &'static str, iterations: usize },

    #[error("degenerate input: {0}")]
    Degenerate(&'static str),

    /// The perturbation direction makes `Y^* E(lambda0) X` (numerically) singular.
    #[error("bad perturbation direction: inner matrix has condition estimate {condition:e}")]
    BadDirection { condition: f64 },

    #[error("argument out of domain: {0}")]
    Domain(String),

    #[error("solver failed (seed {seed}, epsilon {epsilon:e}): {source}")]
    Solver {
        seed: u64,
        epsilon: f64,
        source: Box<Error>,
    },
}
