//! Command-line front end: argument definitions, commands and exit codes.

pub mod args;
pub mod commands;
pub mod error;

pub use args::{Cli, Command};
pub use error::{CliError, Result};

/// Execute one parsed command.
pub fn dispatch(command: &Command) -> Result<()> {
    match command {
        Command::Compile(a) => commands::compile(a),
        Command::Run(a) => commands::run_cmd(a),
        Command::Sweep(a) => commands::sweep(a),
        Command::Estimate(a) => commands::estimate(a),
        Command::Dualrail(a) => commands::dualrail(a),
    }
}
