//! Command-line front end for `radext-core`.
//!
//! Exit codes: 0 success, 1 usage error, 2 curve validation failure,
//! 3 degenerate differential, 4 numerical failure (including failed
//! verification checks and I/O errors). Errors are also printed to
//! standard error as a single-line JSON object.

pub mod args;
pub mod commands;
pub mod config;
pub mod error;
pub mod output;
pub mod report;

use std::ffi::OsString;
use std::io::Write;

use clap::error::ErrorKind;
use clap::Parser;

use crate::args::{Cli, Command, CurvesCommand};
use crate::config::RunConfig;
use crate::error::{CliError, Exit};

fn dispatch(cli: Cli, stdout: &mut dyn Write) -> Result<(), CliError> {
    match cli.command {
        Command::Analyze(a) => commands::cmd_analyze(&RunConfig::from_args(&a)?, stdout),
        Command::Verify(a) => commands::cmd_verify(&RunConfig::from_args(&a)?, stdout),
        Command::Grid(g) => commands::cmd_grid(&RunConfig::from_args(&g.run)?, g.radial_n, g.angular_n, stdout),
        Command::Curves { command: CurvesCommand::List { format } } => commands::cmd_curves_list(format, stdout),
        Command::ParseCheck { expr } => commands::cmd_parse_check(&expr, stdout),
    }
}

/// Parse `args` (including the program name), run the command and return
/// the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            let _ = write!(stdout, "{}", e.render());
            return Exit::Success.code();
        }
        Err(e) => {
            let err = CliError::Usage(e.render().to_string().trim_end().to_string());
            let _ = writeln!(stderr, "{}", err.to_json());
            return err.exit().code();
        }
    };
    match dispatch(cli, stdout) {
        Ok(()) => Exit::Success.code(),
        Err(e) => {
            let _ = writeln!(stderr, "{}", e.to_json());
            e.exit().code()
        }
    }
}
