// Negated float comparisons are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;

use vdwshock_cli::{parse_overrides, run, CliError, Command, Result, RunConfig};

/// Tabulate and verify weak-shock reflection-diffraction results for a
/// covolume gas.
#[derive(Debug, Parser)]
#[command(name = "vdwshock", version)]
struct Cli {
    command: Command,
    /// JSON configuration file; missing keys take their defaults.
    #[arg(long, value_name = "FILE")]
    config: Option<PathBuf>,
    /// Write to this path instead of stdout.
    #[arg(long, value_name = "PATH")]
    output: Option<PathBuf>,
    /// Configuration overrides as `--key value` or `--key=value`.
    #[arg(
        trailing_var_arg = true,
        allow_hyphen_values = true,
        value_name = "OVERRIDES"
    )]
    overrides: Vec<String>,
}

fn execute(cli: &Cli) -> Result<usize> {
    let text = cli
        .config
        .as_ref()
        .map(std::fs::read_to_string)
        .transpose()?;
    let cfg = RunConfig::from_sources(text.as_deref(), parse_overrides(&cli.overrides)?)?;
    let out = run(cli.command, &cfg)?;
    match cli
        .output
        .clone()
        .or(cfg.output.as_ref().map(PathBuf::from))
    {
        Some(path) => std::fs::write(path, &out.bytes)?,
        None => std::io::stdout().lock().write_all(&out.bytes)?,
    }
    Ok(out.failures)
}

fn fail(err: &CliError) -> ExitCode {
    eprintln!("{}", err.to_json());
    ExitCode::from(err.exit_code() as u8)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(&cli) {
        Ok(0) => ExitCode::SUCCESS,
        Ok(n) => fail(&CliError::ChecksFailed(n)),
        Err(e) => fail(&e),
    }
}
