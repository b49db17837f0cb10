//! Library half of the `khlap` binary: argument parsing, the result cache
//! and the subcommands.

pub mod cache;
pub mod commands;
pub mod error;
pub mod format;
pub mod record;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

pub use cache::{Cache, CacheStatus};
pub use error::CliError;
pub use format::Precision;
pub use record::{diagram_hash, CellRecord, ResultRecord};

#[derive(Debug, Parser)]
#[command(name = "khlap", version, about = "Khovanov Laplacian and Dirac spectra of PD codes")]
pub struct Cli {
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,

    /// Directory for cached results, keyed by diagram hash.
    #[arg(long, global = true)]
    pub cache_dir: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Spectra, Betti numbers and least nonzero eigenvalues per (r, q).
    Spectra(SpectraArgs),
    /// Heatmap data of least nonzero eigenvalues.
    Heatmap(HeatmapArgs),
    /// Compares S^{r,q} with S^{-r,-q} cell by cell.
    Symmetry(ReportArgs),
    /// Compares a diagram with its mirror.
    Mirror(ReportArgs),
    /// Processes every entry of a knot table.
    Batch(BatchArgs),
}

/// Where a diagram comes from.
#[derive(Debug, Clone, Args)]
pub struct InputArgs {
    /// PD file, inline PD code, or `-` for stdin.
    #[arg(required_unless_present = "knot", conflicts_with = "knot")]
    pub input: Option<String>,

    /// A knot from the bundled table, e.g. `8_12`.
    #[arg(long)]
    pub knot: Option<String>,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    #[default]
    Json,
    Csv,
}

#[derive(Debug, Args)]
pub struct SpectraArgs {
    #[command(flatten)]
    pub input: InputArgs,

    /// Homological degree of a single cell to print.
    #[arg(long, requires = "q", allow_negative_numbers = true)]
    pub r: Option<i32>,

    /// Quantum degree of a single cell to print.
    #[arg(long, requires = "r", allow_negative_numbers = true)]
    pub q: Option<i32>,

    #[arg(long, value_enum, default_value_t)]
    pub format: OutputFormat,

    /// Significant figures, or `full`.
    #[arg(long, default_value_t)]
    pub precision: Precision,
}

#[derive(Debug, Args)]
pub struct HeatmapArgs {
    #[command(flatten)]
    pub input: InputArgs,

    /// Write the CSV here instead of stdout.
    #[arg(long, short)]
    pub output: Option<PathBuf>,

    /// Also write an SVG rendering of the grid.
    #[arg(long)]
    pub svg: Option<PathBuf>,

    #[arg(long, default_value_t)]
    pub precision: Precision,
}

#[derive(Debug, Args)]
pub struct ReportArgs {
    #[command(flatten)]
    pub input: InputArgs,

    /// Name recorded in the report (defaults to the knot name or `input`).
    #[arg(long)]
    pub name: Option<String>,

    /// Absolute tolerance when comparing spectra.
    #[arg(long, default_value_t = khlap::analysis::DEFAULT_TOLERANCE)]
    pub tol: f64,
}

#[derive(Debug, Args)]
pub struct BatchArgs {
    /// Knot table file (`name: <pd-code>` per line).
    #[arg(required_unless_present = "bundled", conflicts_with = "bundled")]
    pub table: Option<PathBuf>,

    /// Use the bundled table of prime knots.
    #[arg(long)]
    pub bundled: bool,

    /// Skip entries with more crossings than this.
    #[arg(long)]
    pub max_crossings: Option<usize>,

    /// Output directory.
    #[arg(long, short)]
    pub out: PathBuf,

    /// Absolute tolerance when comparing spectra.
    #[arg(long, default_value_t = khlap::analysis::DEFAULT_TOLERANCE)]
    pub tol: f64,
}

/// Runs a parsed command line, writing primary output to `out`.
pub fn run(cli: Cli, out: &mut dyn std::io::Write) -> Result<(), CliError> {
    if let Some(jobs) = cli.jobs {
        if jobs == 0 {
            return Err(CliError::Usage("--jobs must be at least 1".into()));
        }
        // a second call in the same process (tests) keeps the first pool
        let _ = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global();
    }
    let cache = Cache::new(cli.cache_dir);
    match cli.command {
        Command::Spectra(args) => commands::spectra(&args, &cache, out),
        Command::Heatmap(args) => commands::heatmap(&args, &cache, out),
        Command::Symmetry(args) => commands::symmetry(&args, &cache, out),
        Command::Mirror(args) => commands::mirror(&args, &cache, out),
        Command::Batch(args) => commands::batch(&args, &cache, out),
    }
}
