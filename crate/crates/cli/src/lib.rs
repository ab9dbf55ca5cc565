//! Command-line front end for the openness equilibrium solver.
//!
//! `openness-eq <solve|sweep|indifference|pareto|baseline> [flags]
//! [--config FILE] [--out PATH] [--format csv|json]`
//!
//! Each run writes one artifact (a file, or standard output) and returns a
//! one-line summary. Exit codes: 0 success, 2 usage, 3 validation, 4 I/O.

pub mod commands;
pub mod config;
pub mod error;
pub mod output;

use std::fs;

pub use config::{parse_config, Command, CommandOptions, Format, RunConfig};
pub use error::{CliError, Result};

/// Renders the artifact for `config` without writing it anywhere.
pub fn render(config: &RunConfig) -> Result<(String, commands::Outcome)> {
    let outcome = commands::execute(config)?;
    let text = match config.format {
        Format::Csv => output::to_csv(&outcome.records)?,
        Format::Json => output::to_json(commands::spec_json(config), &outcome.records)?,
    };
    Ok((text, outcome))
}

/// Runs the configured command, writes its artifact and returns the
/// summary line.
pub fn run(config: &RunConfig) -> Result<String> {
    let (text, outcome) = render(config)?;
    let dest = match &config.output_path {
        Some(path) => {
            fs::write(path, &text)
                .map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display())))?;
            path.display().to_string()
        }
        None => {
            use std::io::Write;
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|e| CliError::Io(format!("cannot write to stdout: {e}")))?;
            "stdout".to_string()
        }
    };
    let n = outcome.records.len();
    let noun = if n == 1 { "record" } else { "records" };
    Ok(format!(
        "{}: {n} {noun} -> {dest} ({})",
        config.command, outcome.note
    ))
}

/// Loads the config file named by `--config`, if any, then parses `argv`.
pub fn load_config(argv: &[String]) -> Result<RunConfig> {
    let text = match config::config_path(argv)? {
        Some(path) => Some(
            fs::read_to_string(&path)
                .map_err(|e| CliError::Io(format!("cannot read {}: {e}", path.display())))?,
        ),
        None => None,
    };
    parse_config(argv, text.as_deref())
}

/// Full invocation: `argv` excludes the program name.
pub fn main_with(argv: &[String]) -> Result<String> {
    run(&load_config(argv)?)
}
