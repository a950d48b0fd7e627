use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use pseudospin_cli::{run, Kind, Options};

/// Pseudo-Hermitian two-level spin toolkit.
#[derive(Debug, Parser)]
#[command(name = "pseudospin", version)]
struct Args {
    command: Kind,
    /// Scenario JSON file.
    #[arg(long)]
    scenario: PathBuf,
    /// Output directory (created if missing).
    #[arg(long)]
    out: PathBuf,
    /// Tolerance for reality and regime tests.
    #[arg(long)]
    tol: Option<f64>,
    /// Time step, overriding the scenario's.
    #[arg(long)]
    step: Option<f64>,
}

fn main() -> ExitCode {
    let args = Args::parse();
    let opts = Options { tol: args.tol, step: args.step };
    let (code, err) = run(args.command, &args.scenario, &args.out, opts);
    if let Some(e) = err {
        eprintln!("pseudospin {}: {e}", args.command);
    }
    ExitCode::from(code as u8)
}
