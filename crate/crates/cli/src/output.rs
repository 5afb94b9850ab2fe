use num_complex::Complex64;
use serde::Serialize;
use singeig::{ClassifiedEigenvalue, SolverConfig};

/// Rounds to 15 significant decimal digits.
pub fn round15(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{x:.14e}").parse().expect("formatted float parses")
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EigenvalueRow {
    pub re: f64,
    pub im: f64,
    /// `None` stands for an infinite condition statistic.
    pub kappa_bar: Option<f64>,
    pub accepted: bool,
    pub source: &'static str,
}

impl EigenvalueRow {
    pub fn new(ev: &ClassifiedEigenvalue) -> Self {
        Self {
            re: round15(ev.value.re),
            im: round15(ev.value.im),
            kappa_bar: ev.kappa_bar.is_finite().then(|| round15(ev.kappa_bar)),
            accepted: ev.accepted,
            source: ev.source.as_str(),
        }
    }

    pub fn value(&self) -> Complex64 {
        Complex64::new(self.re, self.im)
    }

    fn kappa_text(&self) -> String {
        self.kappa_bar.map_or_else(|| "inf".to_string(), |k| k.to_string())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SolveReport {
    pub problem: Option<String>,
    pub order: usize,
    pub degree: usize,
    pub epsilon: f64,
    pub tol: f64,
    pub seed: u64,
    pub eigenvalues: Vec<EigenvalueRow>,
}

impl SolveReport {
    pub fn new(
        problem: Option<String>,
        order: usize,
        degree: usize,
        cfg: &SolverConfig,
        list: &[ClassifiedEigenvalue],
    ) -> Self {
        Self {
            problem,
            order,
            degree,
            epsilon: cfg.epsilon,
            tol: cfg.tol,
            seed: cfg.seed,
            eigenvalues: list.iter().map(EigenvalueRow::new).collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["re", "im", "kappa_bar", "accepted", "source"])
            .expect("in-memory write");
        for row in &self.eigenvalues {
            w.write_record([
                row.re.to_string(),
                row.im.to_string(),
                row.kappa_text(),
                row.accepted.to_string(),
                row.source.to_string(),
            ])
            .expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("csv output is utf-8")
    }

    pub fn to_table(&self) -> String {
        let mut s = format!(
            "{:>22} {:>22} {:>14} {:>8} {:>6}\n",
            "re", "im", "kappa_bar", "accepted", "source"
        );
        for row in &self.eigenvalues {
            s.push_str(&format!(
                "{:>22} {:>22} {:>14} {:>8} {:>6}\n",
                format!("{:.14e}", row.re),
                format!("{:.14e}", row.im),
                row.kappa_bar.map_or_else(|| "inf".to_string(), |k| format!("{k:.6e}")),
                if row.accepted { "yes" } else { "no" },
                row.source
            ));
        }
        s
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundsReport {
    pub n: usize,
    pub m: usize,
    pub r: usize,
    pub delta: f64,
    pub gamma: f64,
    pub upper: f64,
    pub lower: Option<f64>,
    /// Largest `delta` for which the lower bound holds.
    pub lower_valid_below: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}
