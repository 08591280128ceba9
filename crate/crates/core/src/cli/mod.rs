//! Command-line interface: `extract`, `fit-select`, `validate`, `omega`
//! and `sample`.

mod analysis;
mod corpus;
mod extract;
mod fit_select;
mod omega_cmd;
mod sample_cmd;
mod table;
mod validate;

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;

pub use table::Table;

use crate::estimation::Criterion;
use crate::models::ModelId;
use crate::treebank::SampleMode;

pub const EXIT_OK: i32 = 0;
pub const EXIT_OUTPUT: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INGESTION: i32 = 3;
pub const EXIT_VALIDATION: i32 = 4;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("ingestion failed: {0}")]
    Ingestion(String),
    #[error("validation failed: {0}")]
    Validation(String),
    #[error("cannot write output: {0}")]
    Output(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Ingestion(_) => EXIT_INGESTION,
            CliError::Validation(_) => EXIT_VALIDATION,
            CliError::Output(_) => EXIT_OUTPUT,
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "depdist",
    version,
    about = "Dependency distance distributions: extraction, model fitting and selection, validation, Ω"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Extract distance samples and a corpus summary from CoNLL-U files.
    Extract(ExtractArgs),
    /// Fit every model and select the best one per sample.
    FitSelect(FitSelectArgs),
    /// Generate the artificial suite, fit it and check recovery.
    Validate(ValidateArgs),
    /// Per-length mean Ω joined with the best model of each length.
    Omega(OmegaArgs),
    /// Draw a sample from one model.
    Sample(SampleArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Csv,
    Json,
}

impl OutputFormat {
    pub fn extension(self) -> &'static str {
        match self {
            OutputFormat::Csv => "csv",
            OutputFormat::Json => "json",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Fixed,
    Mixed,
    Both,
}

impl From<ModeArg> for SampleMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Fixed => SampleMode::Fixed,
            ModeArg::Mixed => SampleMode::Mixed,
            ModeArg::Both => SampleMode::Both,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CriterionArg {
    Aic,
    Bic,
}

impl From<CriterionArg> for Criterion {
    fn from(c: CriterionArg) -> Self {
        match c {
            CriterionArg::Aic => Criterion::Aic,
            CriterionArg::Bic => Criterion::Bic,
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct CorpusArgs {
    /// Manifest listing `path collection language` per line.
    #[arg(long)]
    pub manifest: Option<PathBuf>,
    /// Only use these collections (comma separated or repeated).
    #[arg(long, value_delimiter = ',')]
    pub collection: Vec<String>,
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    #[arg(long, default_value = "out")]
    pub out: PathBuf,
    #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
    pub format: OutputFormat,
}

#[derive(Debug, Clone, Args)]
pub struct SelectionArgs {
    /// Minimum number of distinct distances for two-regime models and for
    /// fixed-length samples to enter selection.
    #[arg(long, default_value_t = 3)]
    pub min_distinct_d: usize,
    /// Fixed-length samples from shorter sentences are not selected on.
    #[arg(long, default_value_t = 4)]
    pub exclude_n_below: u32,
}

#[derive(Debug, Clone, Args)]
pub struct ExtractArgs {
    #[command(flatten)]
    pub corpus: CorpusArgs,
    #[arg(long, value_enum, default_value_t = ModeArg::Both)]
    pub mode: ModeArg,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct FitSelectArgs {
    #[command(flatten)]
    pub corpus: CorpusArgs,
    /// Sample files (`d,count` with `# key=value` headers) to fit instead
    /// of, or in addition to, a manifest.
    #[arg(long)]
    pub sample: Vec<PathBuf>,
    #[arg(long, value_enum, default_value_t = CriterionArg::Aic)]
    pub criterion: CriterionArg,
    #[arg(long, value_enum, default_value_t = ModeArg::Both)]
    pub mode: ModeArg,
    /// Minimum sentence counts for the most-voted-family scan, strictly
    /// increasing.
    #[arg(long, value_delimiter = ',', default_value = "1")]
    pub threshold: Vec<u64>,
    #[command(flatten)]
    pub selection: SelectionArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct ValidateArgs {
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t = CriterionArg::Bic)]
    pub criterion: CriterionArg,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct OmegaArgs {
    #[command(flatten)]
    pub corpus: CorpusArgs,
    #[arg(long, value_enum, default_value_t = CriterionArg::Aic)]
    pub criterion: CriterionArg,
    #[command(flatten)]
    pub selection: SelectionArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct SampleArgs {
    /// Model id: 0 (or 0.0) and 1 to 7.
    #[arg(long, value_parser = parse_model)]
    pub model: ModelId,
    #[arg(long)]
    pub q: Option<f64>,
    #[arg(long)]
    pub q1: Option<f64>,
    #[arg(long)]
    pub q2: Option<f64>,
    #[arg(long)]
    pub gamma: Option<f64>,
    #[arg(long)]
    pub d_star: Option<u32>,
    #[arg(long)]
    pub d_max: Option<u32>,
    /// Sample size.
    #[arg(long, short = 'n', default_value_t = 10_000)]
    pub n: u64,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Largest value drawn from models without right truncation.
    #[arg(long, default_value_t = crate::sampling::DEFAULT_CUTOFF)]
    pub cutoff: u32,
    #[command(flatten)]
    pub output: OutputArgs,
}

fn parse_model(s: &str) -> Result<ModelId, String> {
    s.parse()
}

pub fn ensure_dir(dir: &Path) -> Result<(), CliError> {
    std::fs::create_dir_all(dir).map_err(|e| CliError::Output(format!("{}: {e}", dir.display())))
}

pub fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Extract(a) => extract::run(&a),
        Command::FitSelect(a) => fit_select::run(&a),
        Command::Validate(a) => validate::run(&a),
        Command::Omega(a) => omega_cmd::run(&a),
        Command::Sample(a) => sample_cmd::run(&a),
    }
}

/// Parses `args` (program name first), runs the command and returns the
/// process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    match run(cli) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            eprintln!("depdist: {e}");
            e.exit_code()
        }
    }
}
