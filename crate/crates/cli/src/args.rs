//! Command-line arguments and the optional JSON config they override.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use patterned::limits::LimitMethod;
use patterned::sampler::InputDistribution;
use patterned::spectra::EigenSolver;
use patterned::LinkKind;
use serde::Deserialize;

#[derive(Debug, Parser)]
#[command(
    name = "patterned",
    version,
    about = "Limiting joint moments of patterned random matrices"
)]
pub struct Cli {
    /// Master seed for every random stream.
    #[arg(long, global = true)]
    pub seed: Option<u64>,

    /// Work budget for exact circuit counting.
    #[arg(long, global = true)]
    pub budget: Option<u64>,

    /// Size of the worker thread pool.
    #[arg(long, global = true)]
    pub workers: Option<usize>,

    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,

    /// JSON file of defaults; command-line flags take precedence.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List the pair-matched words of a monomial, Catalan words first.
    Words(WordsArgs),
    /// Recompute the reference tables of word limits.
    Tables(TablesArgs),
    /// Limit of one colored word.
    Pcw(PcwArgs),
    /// Limiting joint moment of a monomial.
    Alpha(AlphaArgs),
    /// Simulated normalized trace of a monomial.
    Moments(MomentsArgs),
    /// Empirical spectral distribution of a sum or polynomial.
    Lsd(LsdArgs),
    /// Compare a Wigner-mixed moment with its freeness prediction.
    Freeness(FreenessArgs),
}

#[derive(Debug, Args)]
pub struct WordsArgs {
    #[arg(long)]
    pub q: String,
    /// Let equal colors with different indices match.
    #[arg(long)]
    pub ignore_indices: bool,
}

#[derive(Debug, Args, Default)]
pub struct LimitArgs {
    #[arg(long)]
    pub method: Option<LimitMethod>,
    /// Monte Carlo draws per constraint system.
    #[arg(long)]
    pub samples: Option<u64>,
    /// Extrapolation sizes `N,2N` for the exact method.
    #[arg(long, value_parser = parse_sizes)]
    pub sizes: Option<(usize, usize)>,
}

#[derive(Debug, Args)]
pub struct TablesArgs {
    #[command(flatten)]
    pub limit: LimitArgs,
}

#[derive(Debug, Args)]
pub struct PcwArgs {
    #[arg(long)]
    pub q: String,
    #[arg(long)]
    pub word: String,
    #[command(flatten)]
    pub limit: LimitArgs,
}

#[derive(Debug, Args)]
pub struct AlphaArgs {
    #[arg(long)]
    pub q: String,
    #[command(flatten)]
    pub limit: LimitArgs,
}

#[derive(Debug, Args)]
pub struct SimArgs {
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub reps: Option<usize>,
    #[arg(long)]
    pub dist: Option<InputDistribution>,
}

#[derive(Debug, Args)]
pub struct MomentsArgs {
    #[arg(long)]
    pub q: String,
    #[command(flatten)]
    pub sim: SimArgs,
    /// Also report the limit of the moment.
    #[arg(long)]
    pub limit: bool,
    #[command(flatten)]
    pub limit_args: LimitArgs,
}

#[derive(Debug, Args)]
pub struct LsdArgs {
    /// First summand kind.
    #[arg(long, requires = "b", conflicts_with = "poly")]
    pub a: Option<LinkKind>,
    /// Second summand kind.
    #[arg(long, requires = "a")]
    pub b: Option<LinkKind>,
    /// A symmetric polynomial such as `TH + HT` instead of a sum.
    #[arg(long, required_unless_present = "a")]
    pub poly: Option<String>,
    #[command(flatten)]
    pub sim: SimArgs,
    #[arg(long)]
    pub bins: Option<usize>,
    /// Histogram range `LO,HI`.
    #[arg(long, value_parser = parse_range, allow_hyphen_values = true)]
    pub range: Option<(f64, f64)>,
    /// Highest moment order reported.
    #[arg(long)]
    pub kmax: Option<usize>,
    #[arg(long)]
    pub solver: Option<EigenSolver>,
    /// Largest matrix order the eigensolver accepts.
    #[arg(long)]
    pub cap: Option<usize>,
    /// Histogram only the first replicate.
    #[arg(long)]
    pub single_replicate: bool,
    /// Add limit moments up to this order (sums only).
    #[arg(long)]
    pub limit_order: Option<usize>,
    /// Write PREFIX.csv and PREFIX.json instead of stdout and stderr.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[command(flatten)]
    pub limit: LimitArgs,
}

#[derive(Debug, Args)]
pub struct FreenessArgs {
    #[arg(long)]
    pub q: String,
    #[command(flatten)]
    pub sim: SimArgs,
    /// Kind playing the separating role.
    #[arg(long)]
    pub role: Option<LinkKind>,
    #[command(flatten)]
    pub limit: LimitArgs,
}

fn parse_sizes(s: &str) -> Result<(usize, usize), String> {
    let (a, b) = s.split_once(',').ok_or_else(|| format!("expected N,M, got '{s}'"))?;
    let a = a.trim().parse().map_err(|e| format!("{e}"))?;
    let b = b.trim().parse().map_err(|e| format!("{e}"))?;
    Ok((a, b))
}

fn parse_range(s: &str) -> Result<(f64, f64), String> {
    let (a, b) = s.split_once(',').ok_or_else(|| format!("expected LO,HI, got '{s}'"))?;
    let a = a.trim().parse().map_err(|e| format!("{e}"))?;
    let b = b.trim().parse().map_err(|e| format!("{e}"))?;
    Ok((a, b))
}

/// Defaults read from `--config`. Every key is optional.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub seed: Option<u64>,
    pub budget: Option<u64>,
    pub workers: Option<usize>,
    pub format: Option<Format>,
    pub method: Option<String>,
    pub samples: Option<u64>,
    pub sizes: Option<(usize, usize)>,
    pub n: Option<usize>,
    pub reps: Option<usize>,
    pub dist: Option<String>,
    pub bins: Option<usize>,
    pub kmax: Option<usize>,
    pub solver: Option<String>,
    pub cap: Option<usize>,
}

impl FileConfig {
    pub fn load(path: &std::path::Path) -> Result<FileConfig, String> {
        let text = std::fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
        serde_json::from_str(&text).map_err(|e| format!("bad config {}: {e}", path.display()))
    }

    pub fn method(&self) -> patterned::Result<Option<LimitMethod>> {
        self.method.as_deref().map(str::parse).transpose()
    }

    pub fn dist(&self) -> patterned::Result<Option<InputDistribution>> {
        self.dist.as_deref().map(str::parse).transpose()
    }

    pub fn solver(&self) -> patterned::Result<Option<EigenSolver>> {
        self.solver.as_deref().map(str::parse).transpose()
    }
}
