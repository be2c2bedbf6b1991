use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

#[derive(Debug, Parser)]
#[command(
    name = "orsep",
    version,
    about = "Rectifier circuit separation toolkit"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a matrix file.
    #[command(subcommand)]
    Gen(GenCommand),
    /// Pair transform of a square matrix.
    Transform {
        #[arg(long)]
        input: PathBuf,
        /// Required unless --stats-only.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Print sigma and the 2-rectangle count without building B.
        #[arg(long)]
        stats_only: bool,
    },
    /// Build a circuit for a matrix file.
    Circuit {
        #[arg(value_enum)]
        kind: CircuitKind,
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Also write a Graphviz rendering.
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Write the matrix a circuit implements.
    Eval {
        #[arg(long)]
        circuit: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Check that a circuit implements a matrix.
    Verify {
        #[arg(long)]
        circuit: PathBuf,
        #[arg(long)]
        matrix: PathBuf,
        /// Check this many random entries instead of every entry.
        #[arg(long)]
        samples: Option<u64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Weight statistics, k-freeness and the rectangle-count certificate.
    Analyze {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        certificate: bool,
    },
    /// Lower bounds on OR-complexity.
    #[command(subcommand)]
    Bound(BoundCommand),
    /// Separation table for a matrix family.
    Report(ReportArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum CircuitKind {
    /// One edge per 1-entry, depth 1.
    Trivial,
    /// Depth-3 circuit for the complement of the pair transform.
    Depth3,
}

#[derive(Debug, Subcommand)]
pub enum GenCommand {
    /// Distance graph on F_p^3.
    Brown {
        #[arg(long)]
        p: u64,
        /// Squared distance; chosen automatically when omitted.
        #[arg(long)]
        delta: Option<u64>,
        #[arg(long)]
        out: PathBuf,
    },
    /// `A[x, y] = 1` iff `N(x + y) = 1` over F_{q^t}.
    Norm {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        t: u32,
        #[arg(long)]
        out: PathBuf,
    },
    Random {
        #[command(flatten)]
        shape: RandomShape,
        #[arg(long)]
        out: PathBuf,
    },
    /// Random matrix with k-rectangles removed.
    RandomKfree {
        #[command(flatten)]
        shape: RandomShape,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Debug, Args)]
pub struct RandomShape {
    #[arg(long)]
    pub rows: usize,
    #[arg(long)]
    pub cols: usize,
    #[arg(long)]
    pub density: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Subcommand)]
pub enum BoundCommand {
    /// `ceil(|A| / K^2)` after verifying K-freeness.
    Nechiporuk {
        #[arg(long)]
        input: PathBuf,
        #[arg(long = "K", short = 'K')]
        big_k: usize,
        /// Search node budget for the freeness check.
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Exact depth-2 OR-complexity by branch and bound.
    Or2 {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        budget: Option<u64>,
        /// Write the optimal cover as a circuit file.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Args)]
pub struct ReportArgs {
    #[arg(value_enum)]
    pub family: FamilyKind,
    /// Brown primes, comma separated.
    #[arg(long, value_delimiter = ',')]
    pub p: Vec<u64>,
    /// Norm parameters as q:t, comma separated.
    #[arg(long, value_delimiter = ',')]
    pub qt: Vec<String>,
    #[arg(long)]
    pub out: PathBuf,
    /// Also write rows with their verification flags as JSON.
    #[arg(long)]
    pub json: Option<PathBuf>,
    #[arg(long, default_value_t = 100_000)]
    pub samples: u64,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum FamilyKind {
    Brown,
    Norm,
}
