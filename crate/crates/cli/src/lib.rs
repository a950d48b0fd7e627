//! Scenario-driven runs of the pseudospin toolkit.
//!
//! A run reads a JSON scenario, performs one subcommand, and writes its
//! results into an output directory. Failures are written there as
//! `error.json` and mapped to exit codes: 2 for malformed input, 3 when the
//! input is valid but the requested condition has no solution.

pub mod commands;
pub mod error;
pub mod output;
pub mod scenario;

use std::path::Path;

pub use commands::{Options, DEFAULT_TOL};
pub use error::{CliError, Result, EXIT_NUMERICAL, EXIT_VALIDATION};
pub use scenario::{Kind, Scenario};

/// Runs `kind` on the scenario file and returns the process exit status.
/// On failure an `error.json` record is written to `out` when possible.
pub fn run(kind: Kind, scenario_file: &Path, out: &Path, opts: Options) -> (i32, Option<CliError>) {
    match try_run(kind, scenario_file, out, opts) {
        Ok(()) => (0, None),
        Err(e) => {
            if std::fs::create_dir_all(out).is_ok() {
                // best effort: the original error matters more than this one
                let _ = output::write_json(&e.record(), &out.join("error.json"));
            }
            (e.exit_code(), Some(e))
        }
    }
}

fn try_run(kind: Kind, scenario_file: &Path, out: &Path, opts: Options) -> Result<()> {
    let scenario = Scenario::load(scenario_file)?;
    std::fs::create_dir_all(out).map_err(|e| CliError::io(out, e))?;
    let stale = out.join("error.json");
    if stale.exists() {
        std::fs::remove_file(&stale).map_err(|e| CliError::io(&stale, e))?;
    }
    commands::execute(kind, &scenario, out, opts)
}
