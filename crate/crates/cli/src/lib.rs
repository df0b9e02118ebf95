//! Command-line front end: scenario and codebook files, subcommands and
//! CSV output.

pub mod brange;
pub mod codebook_file;
pub mod commands;
pub mod error;
pub mod output;
pub mod scenario_file;
pub mod units;

pub use brange::parse_b_range;
pub use codebook_file::{parse_codebook_str, read_codebook, write_codebook, CodebookFile};
pub use commands::{run, Cli, Command};
pub use error::{exit, CliError, Result};
pub use scenario_file::{parse_scenario, parse_scenario_str, ResolvedScenario, ScenarioFile};

use clap::Parser;

/// Parses arguments, runs the command and returns the process exit code.
pub fn main_with<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { exit::USAGE } else { exit::OK };
        }
    };
    match run(&cli) {
        Ok(()) => exit::OK,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
