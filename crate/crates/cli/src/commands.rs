use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;
use serde::Serialize;
use singeig::condition::{lower_bound_delta_limit, weak_cond_bounds};
use singeig::corpus::{builtin, synth_pencil, BUILTIN_NAMES};
use singeig::rng::{complex_gaussian, seeded};
use singeig::solver::solve;
use singeig::stats::quantile_sorted;
use singeig::verify::{constructed_problem, run_trial, sigma_model_quantile, sigma_samples, TrialReport, TruthSpec};
use singeig::{MatrixPolynomial, SolverConfig};

use crate::output::{round15, BoundsReport, SolveReport};
use crate::problem::{Metadata, ProblemFile};
use crate::CliError;

#[derive(Debug, Parser)]
#[command(
    name = "singeig",
    version,
    about = "Finite eigenvalues of singular pencils and quadratic eigenvalue problems"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solve one problem and list every computed eigenvalue with its classification.
    Solve(SolveArgs),
    /// Estimate the probability that the accepted set equals the known eigenvalues.
    Montecarlo(MonteCarloArgs),
    /// Empirical against model quantiles of gamma * sigma_E for a random constructed problem.
    Dist(DistArgs),
    /// Lower and upper bounds on the delta-weak condition number.
    Bounds(BoundsArgs),
    /// Write a random singular pencil with known finite eigenvalues as a problem file.
    SynthPencil(SynthArgs),
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct ProblemSource {
    /// Problem file in JSON format.
    #[arg(long, value_name = "FILE")]
    pub input: Option<PathBuf>,
    /// Name of a built-in example.
    #[arg(long, value_name = "NAME", value_parser = clap::builder::PossibleValuesParser::new(BUILTIN_NAMES))]
    pub builtin: Option<String>,
}

#[derive(Debug, Args)]
pub struct SolverArgs {
    /// Perturbation size.
    #[arg(long, default_value_t = 1e-8)]
    pub eps: f64,
    /// Acceptance threshold on kappa_bar.
    #[arg(long, default_value_t = 1e4)]
    pub tol: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Normalize each perturbation coefficient separately.
    #[arg(long)]
    pub per_coefficient: bool,
}

impl SolverArgs {
    fn config(&self) -> Result<SolverConfig, CliError> {
        let cfg = SolverConfig {
            epsilon: self.eps,
            tol: self.tol,
            seed: self.seed,
            per_coefficient_normalization: self.per_coefficient,
            ..SolverConfig::default()
        };
        cfg.validate()?;
        Ok(cfg)
    }
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    #[command(flatten)]
    pub source: ProblemSource,
    #[command(flatten)]
    pub solver: SolverArgs,
    #[arg(long, conflicts_with = "csv")]
    pub json: bool,
    #[arg(long)]
    pub csv: bool,
}

#[derive(Debug, Args)]
pub struct MonteCarloArgs {
    #[command(flatten)]
    pub source: ProblemSource,
    #[command(flatten)]
    pub solver: SolverArgs,
    /// Number of independent trials.
    #[arg(long, default_value_t = 1000)]
    pub runs: usize,
}

#[derive(Debug, Args)]
pub struct DistArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub m: usize,
    #[arg(long)]
    pub r: usize,
    #[arg(long, default_value_t = 10_000)]
    pub samples: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Number of equally spaced quantile levels.
    #[arg(long, default_value_t = 19)]
    pub quantiles: usize,
}

#[derive(Debug, Args)]
pub struct BoundsArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub m: usize,
    #[arg(long)]
    pub r: usize,
    #[arg(long)]
    pub delta: f64,
    #[arg(long)]
    pub gamma: f64,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct SynthArgs {
    #[arg(long)]
    pub rank: usize,
    #[arg(long)]
    pub size: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Write to this file instead of standard output.
    #[arg(long, value_name = "FILE")]
    pub output: Option<PathBuf>,
}

struct LoadedProblem {
    name: Option<String>,
    polynomial: MatrixPolynomial,
    truth: Option<TruthSpec>,
}

fn load(source: &ProblemSource) -> Result<LoadedProblem, CliError> {
    if let Some(name) = &source.builtin {
        let b = builtin(name)?;
        return Ok(LoadedProblem {
            name: Some(b.name),
            polynomial: b.polynomial,
            truth: Some(b.truth),
        });
    }
    let path = source.input.as_ref().expect("clap enforces one source");
    let file = ProblemFile::read(path)?;
    let polynomial = file
        .polynomial()
        .map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
    Ok(LoadedProblem {
        name: file
            .name()
            .map(str::to_string)
            .or_else(|| Some(path.display().to_string())),
        polynomial,
        truth: file.truth_spec(),
    })
}

pub fn run(cli: &Cli, out: &mut dyn Write) -> Result<(), CliError> {
    match &cli.command {
        Command::Solve(a) => cmd_solve(a, out),
        Command::Montecarlo(a) => cmd_montecarlo(a, out),
        Command::Dist(a) => cmd_dist(a, out),
        Command::Bounds(a) => cmd_bounds(a, out),
        Command::SynthPencil(a) => cmd_synth(a, out),
    }
}

fn cmd_solve(a: &SolveArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let problem = load(&a.source)?;
    let cfg = a.solver.config()?;
    let list = solve(&problem.polynomial, &cfg)?;
    let report = SolveReport::new(
        problem.name,
        problem.polynomial.order(),
        problem.polynomial.degree(),
        &cfg,
        &list,
    );
    if a.json {
        writeln!(out, "{}", report.to_json())?;
    } else if a.csv {
        write!(out, "{}", report.to_csv())?;
    } else {
        write!(out, "{}", report.to_table())?;
    }
    Ok(())
}

#[derive(Debug, Serialize)]
struct MonteCarloReport {
    n_t: usize,
    n_s: usize,
    p: f64,
}

fn cmd_montecarlo(a: &MonteCarloArgs, out: &mut dyn Write) -> Result<(), CliError> {
    if a.runs == 0 {
        return Err(CliError::Usage("--runs must be at least 1".into()));
    }
    let problem = load(&a.source)?;
    let truth = problem
        .truth
        .ok_or_else(|| CliError::Usage("the problem has no `truth` list to compare against".into()))?;
    let cfg = a.solver.config()?;
    let outcomes: Vec<_> = (0..a.runs as u64)
        .into_par_iter()
        .map(|i| run_trial(&problem.polynomial, &truth, &cfg, i))
        .collect();
    let report = TrialReport::from_outcomes(&outcomes);
    let json = MonteCarloReport {
        n_t: report.n_t,
        n_s: report.n_s,
        p: round15(report.p),
    };
    writeln!(out, "{}", serde_json::to_string(&json).expect("report serializes"))?;
    Ok(())
}

fn cmd_dist(a: &DistArgs, out: &mut dyn Write) -> Result<(), CliError> {
    if a.m == 0 || a.r == 0 || a.r >= a.n {
        return Err(CliError::Usage(format!(
            "need m >= 1 and 1 <= r < n, got n = {}, m = {}, r = {}",
            a.n, a.m, a.r
        )));
    }
    if a.samples < 2 || a.quantiles == 0 {
        return Err(CliError::Usage(
            "need at least two samples and one quantile level".into(),
        ));
    }
    let mut rng = seeded(a.seed);
    let lambda0 = complex_gaussian(&mut rng);
    let problem = constructed_problem(a.n, a.m, a.r, lambda0, &mut rng)?;
    let gamma = problem.gamma();
    let (sigmas, _) = sigma_samples(&problem, a.samples, &mut rng)?;
    let mut scaled: Vec<f64> = sigmas.iter().map(|s| s * gamma).collect();
    scaled.sort_by(f64::total_cmp);
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["quantile", "empirical", "model"])
        .expect("in-memory write");
    for k in 1..=a.quantiles {
        let q = k as f64 / (a.quantiles + 1) as f64;
        let emp = quantile_sorted(&scaled, q);
        let model = sigma_model_quantile(q, problem.big_n(), a.n, a.r);
        w.write_record([
            round15(q).to_string(),
            round15(emp).to_string(),
            round15(model).to_string(),
        ])
        .expect("in-memory write");
    }
    out.write_all(&w.into_inner().expect("in-memory flush"))?;
    Ok(())
}

fn cmd_bounds(a: &BoundsArgs, out: &mut dyn Write) -> Result<(), CliError> {
    if a.r >= a.n || a.m == 0 {
        return Err(CliError::Usage(format!(
            "need m >= 1 and r < n, got n = {}, m = {}, r = {}",
            a.n, a.m, a.r
        )));
    }
    if a.gamma.is_nan() || a.gamma <= 0.0 || a.gamma.is_infinite() {
        return Err(CliError::Usage(format!("--gamma must be positive, got {}", a.gamma)));
    }
    let b = weak_cond_bounds(a.delta, a.gamma, a.n, a.r, a.m)?;
    let limit = lower_bound_delta_limit(b.big_n, a.n, a.r);
    let note = b.lower.is_none().then(|| {
        format!(
            "the lower bound only holds for delta < {}; only the upper bound applies",
            round15(limit)
        )
    });
    let report = BoundsReport {
        n: a.n,
        m: a.m,
        r: a.r,
        delta: a.delta,
        gamma: a.gamma,
        upper: round15(b.upper),
        lower: b.lower.map(round15),
        lower_valid_below: round15(limit),
        note,
    };
    if a.json {
        writeln!(
            out,
            "{}",
            serde_json::to_string_pretty(&report).expect("report serializes")
        )?;
    } else {
        writeln!(out, "upper: {}", report.upper)?;
        match (report.lower, &report.note) {
            (Some(l), _) => writeln!(out, "lower: {l}")?,
            (None, Some(note)) => writeln!(out, "lower: not valid\nnote: {note}")?,
            (None, None) => unreachable!("a missing lower bound always carries a note"),
        }
    }
    Ok(())
}

fn cmd_synth(a: &SynthArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let b = synth_pencil(a.size, a.rank, a.seed)?;
    let file = ProblemFile::from_polynomial(
        &b.polynomial,
        Some(&b.truth),
        Some(Metadata {
            name: Some(b.name.clone()),
            source: Some(format!(
                "synth-pencil --size {} --rank {} --seed {}",
                a.size, a.rank, a.seed
            )),
        }),
    );
    let text = file.to_json();
    match &a.output {
        Some(path) => {
            std::fs::write(path, text + "\n").map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?
        }
        None => writeln!(out, "{text}")?,
    }
    Ok(())
}
