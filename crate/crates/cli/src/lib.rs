//! Experiment harness for the `mdl` binary: instance generation, single
//! runs, seeded sweeps and epsilon-optimality audits.
//!
//! CSV output has the fixed header [`report::CSV_COLUMNS`]. Exit codes are
//! 0 on success, 2 for configuration errors, 3 for size-guard violations
//! and 4 for I/O errors.

pub mod args;
pub mod commands;
pub mod config;
pub mod report;

use std::io::Write;

pub use args::{Cli, Command};
pub use config::{ExperimentConfig, InstanceSource};
pub use report::{AuditSummary, CsvRow, CSV_COLUMNS};

use mdl_core::MdlError;

pub fn run(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> anyhow::Result<()> {
    match &cli.command {
        Command::Gen(a) => commands::cmd_gen(a, out, err),
        Command::Solve(a) => commands::cmd_solve(a, out),
        Command::Sweep(a) => commands::cmd_sweep(a, out),
        Command::Audit(a) => commands::cmd_audit(a, out),
    }
}

/// Process exit code for a failed command.
pub fn exit_code(err: &anyhow::Error) -> u8 {
    for cause in err.chain() {
        if cause.is::<std::io::Error>() {
            return 4;
        }
        if let Some(e) = cause.downcast_ref::<serde_json::Error>() {
            if e.is_io() {
                return 4;
            }
        }
        if let Some(e) = cause.downcast_ref::<MdlError>() {
            return match e {
                MdlError::SizeLimit(_) => 3,
                _ => 2,
            };
        }
    }
    2
}
