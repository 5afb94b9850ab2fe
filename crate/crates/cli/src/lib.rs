//! Command-line front end for the `singeig` solver.

use std::io::Write;

pub mod commands;
pub mod output;
pub mod problem;

pub use commands::{run, Cli};

/// Exit status: 0 success, 1 usage or input error, 2 numerical failure.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("numerical failure: {0}")]
    Numerical(singeig::Error),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Io(_) => 1,
            CliError::Numerical(_) => 2,
        }
    }
}

impl From<singeig::Error> for CliError {
    fn from(e: singeig::Error) -> Self {
        use singeig::Error as E;
        match e {
            E::Domain(_) | E::DimensionMismatch(_) | E::NonFinite { .. } => CliError::Usage(e.to_string()),
            other => CliError::Numerical(other),
        }
    }
}

/// Parses `args` (including the program name), runs the command and returns
/// the exit code. Regular output goes to `out`, diagnostics to `err`.
pub fn main_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    use clap::Parser;
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 {
                write!(out, "{text}")
            } else {
                write!(err, "{text}")
            };
            return code;
        }
    };
    match run(&cli, out) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}
