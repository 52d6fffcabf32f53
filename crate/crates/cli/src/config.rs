//! Command-line grammar and the resolved, serializable run configuration.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rmgen_core::{Algorithm, EnsembleKind, EnsembleSpec};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

pub const DEFAULT_DENSITY_BINS: usize = 60;
pub const DEFAULT_SPACING_BINS: usize = 50;

#[derive(Parser, Debug)]
#[command(name = "rmgen", version, about = "Sample Haar random matrices and check their spectra")]
pub struct Cli {
    #[command(subcommand)]
    pub command: CommandArgs,
}

#[derive(Subcommand, Debug)]
pub enum CommandArgs {
    /// Write sampled matrices, one JSON document per line.
    Sample(CommonArgs),
    /// Histogram of eigenphases against the flat density 1/2π.
    ExperimentDensity(CommonArgs),
    /// Histogram of nearest-neighbour spacings against the Wigner surmise.
    ExperimentSpacing(CommonArgs),
    /// Check group-membership residuals of fresh samples.
    Verify(CommonArgs),
}

#[derive(Args, Debug, Clone)]
pub struct CommonArgs {
    /// cue, coe, cse, orthogonal, usp, sp_quaternion, ginibre_real,
    /// ginibre_complex, ginibre_quaternion or cue_wrong
    #[arg(long)]
    pub ensemble: EnsembleKind,
    /// Matrix dimension N (2N×2N output for cse and usp).
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub dim: u64,
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    pub count: u64,
    #[arg(long, env = "RMGEN_SEED", default_value_t = 0)]
    pub seed: u64,
    /// qr or householder (householder only for cue and orthogonal).
    #[arg(long, default_value = "qr")]
    pub algorithm: Algorithm,
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub bins: Option<u64>,
    /// Output path; `-` writes to stdout.
    #[arg(long, default_value = "-")]
    pub out: PathBuf,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Worker threads; results do not depend on it.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub threads: Option<u64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    Sample,
    ExperimentDensity,
    ExperimentSpacing,
    Verify,
}

/// Everything that determines a run's output. Thread count is deliberately
/// absent: it never changes the bytes written.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub command: Command,
    pub ensemble: EnsembleKind,
    pub n: usize,
    pub seed: u64,
    pub algorithm: Algorithm,
    pub count: u64,
    pub bins: Option<usize>,
    pub out_path: String,
    pub format: Format,
}

impl RunConfig {
    pub fn spec(&self) -> Result<EnsembleSpec, CliError> {
        EnsembleSpec::new(self.ensemble, self.n, self.seed, self.algorithm).map_err(CliError::usage)
    }

    pub fn writes_stdout(&self) -> bool {
        self.out_path == "-"
    }
}

impl CommandArgs {
    /// Resolves defaults and validates the combination of flags.
    pub fn resolve(&self) -> Result<(RunConfig, Option<usize>), CliError> {
        let (command, args) = match self {
            CommandArgs::Sample(a) => (Command::Sample, a),
            CommandArgs::ExperimentDensity(a) => (Command::ExperimentDensity, a),
            CommandArgs::ExperimentSpacing(a) => (Command::ExperimentSpacing, a),
            CommandArgs::Verify(a) => (Command::Verify, a),
        };
        let bins = match command {
            Command::ExperimentDensity => Some(args.bins.map_or(DEFAULT_DENSITY_BINS, |b| b as usize)),
            Command::ExperimentSpacing => Some(args.bins.map_or(DEFAULT_SPACING_BINS, |b| b as usize)),
            _ => None,
        };
        let format = args.format.unwrap_or(match command {
            Command::Sample | Command::Verify => Format::Json,
            _ => Format::Csv,
        });
        let config = RunConfig {
            command,
            ensemble: args.ensemble,
            n: usize::try_from(args.dim).map_err(|_| CliError::Usage("--dim too large".into()))?,
            seed: args.seed,
            algorithm: args.algorithm,
            count: args.count,
            bins,
            out_path: args.out.to_string_lossy().into_owned(),
            format,
        };
        config.spec()?;
        Ok((config, args.threads.map(|t| t as usize)))
    }
}
