//! Command-line front end for `rmgen-core`: sample matrices, rerun the
//! eigenphase density and spacing experiments, verify group membership.
//!
//! Exit codes: 0 success, 1 failed verification or numerical check, 2 I/O
//! failure, 64 usage error.

pub mod commands;
pub mod config;
pub mod error;
pub mod output;

use std::ffi::OsString;
use std::io::Write;

use clap::error::ErrorKind;
use clap::Parser;

pub use config::{Cli, Command, CommandArgs, Format, RunConfig};
pub use error::{CliError, EXIT_IO, EXIT_OK, EXIT_USAGE, EXIT_VERIFY_FAILED};
use output::Sinks;

/// Runs a resolved configuration, optionally on a dedicated thread pool.
pub fn execute(
    config: &RunConfig,
    threads: Option<usize>,
    stdout: &mut (dyn Write + Send),
    stderr: &mut (dyn Write + Send),
) -> Result<i32, CliError> {
    let mut sinks = Sinks { stdout, stderr };
    let go = |sinks: &mut Sinks| match config.command {
        Command::Sample => commands::cmd_sample(config, sinks),
        Command::ExperimentDensity => commands::cmd_experiment_density(config, sinks),
        Command::ExperimentSpacing => commands::cmd_experiment_spacing(config, sinks),
        Command::Verify => commands::cmd_verify(config, sinks),
    };
    match threads {
        Some(t) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(t)
                .build()
                .map_err(|e| CliError::Usage(e.to_string()))?;
            pool.install(|| go(&mut sinks))
        }
        None => go(&mut sinks),
    }
}

/// Parses `args` (program name first), runs the command and returns the
/// process exit code. Diagnostics go to `stderr`.
pub fn run<I, T>(args: I, stdout: &mut (dyn Write + Send), stderr: &mut (dyn Write + Send)) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(stdout, "{}", e.render());
                    return EXIT_OK;
                }
                _ => EXIT_USAGE,
            };
            let _ = write!(stderr, "{}", e.render());
            return code;
        }
    };
    let result = cli.command.resolve().and_then(|(config, threads)| execute(&config, threads, stdout, stderr));
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "rmgen: {e}");
            e.exit_code()
        }
    }
}
