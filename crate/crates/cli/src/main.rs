mod config;
mod input;
mod output;
mod run;

use std::fs::File;
use std::io::{self, BufWriter};
use std::process::ExitCode;

use clap::Parser;
use thiserror::Error;

use config::{Args, Format, RunConfig};

/// Environment variable capping the worker count.
const THREADS_VAR: &str = "MIXCDF_THREADS";

#[derive(Debug, Error)]
pub enum CliError {
    /// Bad flags, unreadable or malformed input, invalid data.
    #[error("{0}")]
    Usage(String),
    /// The atom enumeration requested by `--oracle` is too large.
    #[error("{0}")]
    Guard(String),
    #[error("writing output: {0}")]
    Io(#[from] io::Error),
}

impl CliError {
    pub fn usage(msg: impl Into<String>) -> Self {
        CliError::Usage(msg.into())
    }

    pub fn guard(msg: impl Into<String>) -> Self {
        CliError::Guard(msg.into())
    }

    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Guard(_) => 3,
            CliError::Io(_) => 1,
        }
    }
}

impl From<mixcdf::Error> for CliError {
    fn from(e: mixcdf::Error) -> Self {
        CliError::Usage(e.to_string())
    }
}

fn configure_threads() -> Result<(), CliError> {
    let Ok(raw) = std::env::var(THREADS_VAR) else {
        return Ok(());
    };
    let threads: usize = raw.trim().parse().ok().filter(|&n| n > 0).ok_or_else(|| {
        CliError::usage(format!(
            "{THREADS_VAR}: expected a positive integer, got {raw:?}"
        ))
    })?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| CliError::usage(format!("{THREADS_VAR}: {e}")))
}

fn execute(config: &RunConfig) -> Result<(), CliError> {
    let report = run::run(config)?;
    match &config.output_path {
        Some(path) => {
            let file = File::create(path).map_err(|e| {
                CliError::usage(format!("--output: cannot create {}: {e}", path.display()))
            })?;
            let out = BufWriter::new(file);
            match config.output_format {
                Format::Csv => output::write_csv(&report, out)?,
                Format::Json => output::write_json(&report, out)?,
            }
        }
        None => {
            let out = io::stdout().lock();
            match config.output_format {
                Format::Csv => output::write_csv(&report, out)?,
                Format::Json => output::write_json(&report, out)?,
            }
        }
    }
    if config.output_format == Format::Csv {
        output::write_summary(&report, io::stderr().lock())?;
    }
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let args = Args::parse();
    let result = configure_threads()
        .and_then(|()| RunConfig::try_from(args))
        .and_then(|config| execute(&config));
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
