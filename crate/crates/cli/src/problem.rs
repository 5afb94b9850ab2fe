//! JSON problem files.
//!
//! ```json
//! {
//!   "n": 2,
//!   "degree": 1,
//!   "coefficients": [
//!     [[[1, 0], [0, 0]], [[0, 0], [2, 0]]],
//!     [[[-1, 0], [0, 0]], [[0, 0], [-1, 0]]]
//!   ],
//!   "truth": [[1, 0], [2, 0]],
//!   "metadata": { "name": "diag", "source": "hand written" }
//! }
//! ```
//!
//! Coefficients are listed in ascending powers, rows first, entries as
//! `[re, im]`. Rectangular coefficients (`rows != cols`) are accepted when
//! every row has the same length and are zero-padded to a square problem.

use std::fmt;
use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use singeig::corpus::BuiltinProblem;
use singeig::verify::TruthSpec;
use singeig::{ComplexMatrix, MatrixPolynomial};

pub type Entry = [f64; 2];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    pub n: usize,
    pub degree: usize,
    pub coefficients: Vec<Vec<Vec<Entry>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub truth: Option<Vec<Entry>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub metadata: Option<Metadata>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Metadata {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub source: Option<String>,
}

/// Input problems, always reported with the location of the offending item.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ProblemError {
    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{path}: {message}")]
    Invalid { path: String, message: String },
}

fn invalid(path: impl fmt::Display, message: impl Into<String>) -> ProblemError {
    ProblemError::Invalid {
        path: path.to_string(),
        message: message.into(),
    }
}

impl ProblemFile {
    pub fn parse(text: &str) -> Result<Self, ProblemError> {
        let file: ProblemFile = serde_json::from_str(text).map_err(|e| ProblemError::Syntax {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })?;
        file.validate()?;
        Ok(file)
    }

    pub fn read(path: &Path) -> Result<Self, crate::CliError> {
        let text =
            std::fs::read_to_string(path).map_err(|e| crate::CliError::Usage(format!("{}: {e}", path.display())))?;
        Self::parse(&text).map_err(|e| crate::CliError::Usage(format!("{}: {e}", path.display())))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("problem files always serialize")
    }

    /// Checks shapes and finiteness; `n` is the order after padding.
    pub fn validate(&self) -> Result<(), ProblemError> {
        if self.coefficients.is_empty() {
            return Err(invalid("coefficients", "at least one coefficient is required"));
        }
        if self.coefficients.len() != self.degree + 1 {
            return Err(invalid(
                "coefficients",
                format!(
                    "degree {} needs {} coefficients, found {}",
                    self.degree,
                    self.degree + 1,
                    self.coefficients.len()
                ),
            ));
        }
        let rows = self.coefficients[0].len();
        let cols = self.coefficients[0].first().map_or(0, Vec::len);
        if rows == 0 || cols == 0 {
            return Err(invalid("coefficients[0]", "coefficients must not be empty"));
        }
        if rows.max(cols) != self.n {
            return Err(invalid(
                "n",
                format!(
                    "coefficients are {rows}x{cols}, so n must be {}, found {}",
                    rows.max(cols),
                    self.n
                ),
            ));
        }
        for (k, a) in self.coefficients.iter().enumerate() {
            if a.len() != rows {
                return Err(invalid(
                    format!("coefficients[{k}]"),
                    format!("expected {rows} rows, found {}", a.len()),
                ));
            }
            for (i, row) in a.iter().enumerate() {
                if row.len() != cols {
                    return Err(invalid(
                        format!("coefficients[{k}][{i}]"),
                        format!("expected {cols} entries, found {}", row.len()),
                    ));
                }
                for (j, z) in row.iter().enumerate() {
                    if !z[0].is_finite() || !z[1].is_finite() {
                        return Err(invalid(format!("coefficients[{k}][{i}][{j}]"), "entry is not finite"));
                    }
                }
            }
        }
        if let Some(truth) = &self.truth {
            for (i, z) in truth.iter().enumerate() {
                if !z[0].is_finite() || !z[1].is_finite() {
                    return Err(invalid(format!("truth[{i}]"), "entry is not finite"));
                }
                if truth[..i].iter().any(|w| w == z) {
                    return Err(invalid(format!("truth[{i}]"), "duplicate eigenvalue"));
                }
            }
        }
        Ok(())
    }

    pub fn polynomial(&self) -> Result<MatrixPolynomial, ProblemError> {
        self.validate()?;
        let coeffs = self
            .coefficients
            .iter()
            .map(|a| {
                let rows = a.len();
                let cols = a[0].len();
                let data = a.iter().flatten().map(|z| Complex64::new(z[0], z[1])).collect();
                ComplexMatrix::from_vec(rows, cols, data).expect("validated shape")
            })
            .collect();
        MatrixPolynomial::new(coeffs).map_err(|e| invalid("coefficients", e.to_string()))
    }

    pub fn truth_spec(&self) -> Option<TruthSpec> {
        self.truth
            .as_ref()
            .map(|t| TruthSpec::new(t.iter().map(|z| Complex64::new(z[0], z[1])).collect()))
    }

    pub fn name(&self) -> Option<&str> {
        self.metadata.as_ref().and_then(|m| m.name.as_deref())
    }

    /// File representation of a polynomial; rectangular originals keep their shape.
    pub fn from_polynomial(p: &MatrixPolynomial, truth: Option<&TruthSpec>, metadata: Option<Metadata>) -> Self {
        let (rows, cols) = p.original_shape();
        let coefficients = p
            .coefficients()
            .iter()
            .map(|a| {
                (0..rows)
                    .map(|i| (0..cols).map(|j| [a[(i, j)].re, a[(i, j)].im]).collect())
                    .collect()
            })
            .collect();
        ProblemFile {
            n: rows.max(cols),
            degree: p.degree(),
            coefficients,
            truth: truth.map(|t| t.finite_eigenvalues.iter().map(|z| [z.re, z.im]).collect()),
            metadata,
        }
    }

    pub fn from_builtin(b: &BuiltinProblem, source: &str) -> Self {
        Self::from_polynomial(
            &b.polynomial,
            Some(&b.truth),
            Some(Metadata {
                name: Some(b.name.clone()),
                source: Some(source.into()),
            }),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const EXAMPLE: &str = r#"{
        "n": 2, "degree": 1,
        "coefficients": [
            [[[1, 0], [0, 0]], [[0, 0], [2, 0]]],
            [[[-1, 0], [0, 0]], [[0, 0], [-1, 0]]]
        ],
        "truth": [[1, 0], [2, 0]],
        "metadata": {"name": "diag"}
    }"#;

    #[test]
    fn parses_pencil() {
        let f = ProblemFile::parse(EXAMPLE).unwrap();
        let p = f.polynomial().unwrap();
        assert_eq!(p.order(), 2);
        assert_eq!(p.coefficient(0)[(1, 1)], Complex64::new(2.0, 0.0));
        assert_eq!(f.truth_spec().unwrap().finite_eigenvalues.len(), 2);
        assert_eq!(f.name(), Some("diag"));
    }

    #[test]
    fn rejects_empty_coefficients() {
        let err = ProblemFile::parse(r#"{"n": 1, "degree": 0, "coefficients": []}"#).unwrap_err();
        assert!(
            matches!(err, ProblemError::Invalid { ref path, .. } if path == "coefficients"),
            "{err}"
        );
    }

    #[test]
    fn syntax_errors_carry_position() {
        let err = ProblemFile::parse("{\n  \"n\": 2,\n  \"degree\": oops\n}").unwrap_err();
        match err {
            ProblemError::Syntax { line, .. } => assert_eq!(line, 3),
            other => panic!("{other}"),
        }
    }

    #[test]
    fn rejects_overflowing_numbers() {
        let text = EXAMPLE.replace("[2, 0]]]", "[1e400, 0]]]");
        assert!(ProblemFile::parse(&text).is_err());
    }

    #[test]
    fn ragged_rows_are_reported_with_path() {
        let text = r#"{"n": 2, "degree": 0, "coefficients": [[[[1, 0], [0, 0]], [[1, 0]]]]}"#;
        let err = ProblemFile::parse(text).unwrap_err();
        assert_eq!(err.to_string(), "coefficients[0][1]: expected 2 entries, found 1");
    }

    #[test]
    fn rectangular_round_trip() {
        let b = singeig::corpus::builtin("ex10").unwrap();
        let f = ProblemFile::from_builtin(&b, "builtin");
        assert_eq!(f.coefficients[0].len(), 4);
        assert_eq!(f.coefficients[0][0].len(), 5);
        let back = ProblemFile::parse(&f.to_json()).unwrap();
        assert_eq!(back, f);
        assert_eq!(back.polynomial().unwrap(), b.polynomial);
    }
}
