//! Command-line front end for the `pcircle` library.
//!
//! Every subcommand renders a [`output::Report`] as CSV (default) or JSON.
//! Values come from flags, then from the `--config` file, then defaults.

pub mod args;
pub mod commands;
pub mod config;
pub mod error;
pub mod output;
pub mod verify;

use std::path::PathBuf;

use args::{Cli, Format, THREADS_ENV};
use config::ConfigFile;
use error::CliError;

fn thread_count(cli: &Cli, cfg: &ConfigFile) -> Result<Option<usize>, CliError> {
    let n = match cfg.pick(cli.threads, "threads")? {
        Some(n) => Some(n),
        None => match std::env::var(THREADS_ENV) {
            Ok(v) => Some(
                v.trim()
                    .parse()
                    .map_err(|e| CliError::Usage(format!("{THREADS_ENV}: {e}")))?,
            ),
            Err(_) => None,
        },
    };
    if n == Some(0) {
        return Err(CliError::Usage("thread count must be positive".into()));
    }
    Ok(n)
}

/// Runs a parsed command line and writes its report.
pub fn run(cli: &Cli) -> Result<(), CliError> {
    let cfg = match &cli.config {
        Some(path) => ConfigFile::load(path)?,
        None => ConfigFile::default(),
    };
    let format: Format = cfg.pick(cli.format, "format")?.unwrap_or_default();
    let out: Option<PathBuf> = cfg.pick(cli.out.clone(), "out")?;
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(n) = thread_count(cli, &cfg)? {
        pool = pool.num_threads(n);
    }
    let pool = pool
        .build()
        .map_err(|e| CliError::Usage(format!("cannot start worker threads: {e}")))?;
    let outcome = pool.install(|| commands::dispatch(&cli.command, &cfg))?;
    outcome.report.write(format, out.as_deref())?;
    match outcome.failed {
        0 => Ok(()),
        failed => Err(CliError::VerificationFailed { failed }),
    }
}
