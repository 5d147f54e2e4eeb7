use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use mcap::generate::{BoundsMode, SuppressionFamily};
use mcap::learning::DEFAULT_NEIGHBORS;
use mcap::solvers::{DEFAULT_BRUTE_FORCE_CELLS, DEFAULT_DP_STATES};

#[derive(Debug, Parser)]
#[command(name = "mcap", version, about = "Multicampaign assignment solver and toolkit")]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,

    /// Report format on stdout.
    #[arg(long, value_enum, default_value_t = Format::Human, global = true)]
    pub format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Human,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Brute,
    Dp,
    Const,
    Unbounded,
    Greedy,
    Local,
    /// dp when the state space fits the budget, otherwise greedy then local search
    Auto,
}

#[derive(Debug, Args)]
pub struct Guards {
    /// Largest n*k accepted by brute force.
    #[arg(long, default_value_t = DEFAULT_BRUTE_FORCE_CELLS)]
    pub max_brute: usize,
    /// Largest capacity state space accepted by dp.
    #[arg(long, default_value_t = DEFAULT_DP_STATES)]
    pub max_states: usize,
}

#[derive(Debug, Args)]
pub struct ReducedFiles {
    /// Reduced instance file written by `reduce`.
    #[arg(long)]
    pub instance: PathBuf,
    /// Sidecar file written by `reduce`.
    #[arg(long)]
    pub sidecar: PathBuf,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Fitness and feasibility of a matrix.
    Evaluate {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long)]
        matrix: PathBuf,
    },
    /// Find an assignment matrix.
    Solve {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long, value_enum, default_value_t = Method::Auto)]
        method: Method,
        /// Starting matrix for local search (default: greedy output).
        #[arg(long)]
        start: Option<PathBuf>,
        #[command(flatten)]
        guards: Guards,
        /// Write the matrix here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Reduce a 3-CNF formula (DIMACS) to an instance plus threshold sidecar.
    Reduce {
        #[arg(long)]
        cnf: PathBuf,
        /// Drop duplicate literals and tautological clauses instead of rejecting them.
        #[arg(long)]
        sanitize: bool,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        sidecar: PathBuf,
    },
    /// Build the matrix encoding a satisfying assignment.
    Embed {
        #[command(flatten)]
        files: ReducedFiles,
        /// Assignment as a 0/1 string, variable 1 first.
        #[arg(long)]
        assignment: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Read the assignment encoded by a matrix.
    Extract {
        #[command(flatten)]
        files: ReducedFiles,
        #[arg(long)]
        matrix: PathBuf,
    },
    /// Check a matrix against the threshold and the structural properties.
    Verify {
        #[command(flatten)]
        files: ReducedFiles,
        #[arg(long)]
        matrix: PathBuf,
    },
    /// Generate a seeded random instance.
    Gen {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 0)]
        pref_min: u64,
        #[arg(long, default_value_t = 9)]
        pref_max: u64,
        #[arg(long, default_value_t = 1)]
        weight_min: u64,
        #[arg(long, default_value_t = 5)]
        weight_max: u64,
        /// constant, indicator, linear-decay or grid
        #[arg(long, default_value = "grid")]
        suppression: SuppressionFamily,
        /// Grid denominator for the constant and grid families.
        #[arg(long, default_value_t = 4)]
        grid: u64,
        #[arg(long, value_enum, default_value_t = Bounds::Random)]
        bounds: Bounds,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Fit suppression tables to response history.
    Fit {
        /// JSON array of {customer, campaign, preference, h, responded}.
        #[arg(long)]
        records: PathBuf,
        /// JSON array with the category of each customer (default: one category).
        #[arg(long)]
        labels: Option<PathBuf>,
        #[arg(long, default_value_t = 5)]
        max_h: usize,
        #[arg(long, default_value_t = 20)]
        grid: u64,
        #[arg(long, default_value_t = 8)]
        restarts: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Restrict to tables that never increase with h.
        #[arg(long)]
        monotone: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Predict missing ratings by nearest-neighbor filtering.
    Predict {
        /// JSON array of {customer, campaign, rating}.
        #[arg(long)]
        ratings: PathBuf,
        /// Predict one entry (requires --campaign); default: every missing entry.
        #[arg(long, requires = "campaign")]
        customer: Option<usize>,
        #[arg(long, requires = "customer")]
        campaign: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_NEIGHBORS)]
        neighbors: usize,
    },
    /// Run every applicable solver and compare against dp.
    Bench {
        #[arg(long)]
        instance: PathBuf,
        #[command(flatten)]
        guards: Guards,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Bounds {
    Random,
    Unbounded,
}

impl From<Bounds> for BoundsMode {
    fn from(b: Bounds) -> Self {
        match b {
            Bounds::Random => BoundsMode::Random,
            Bounds::Unbounded => BoundsMode::Unbounded,
        }
    }
}
