//! `quasi`: command-line driver for quasi-core.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use quasi_core::Error;

#[derive(Parser, Debug)]
#[command(name = "quasi", version, about = "Tight quasitrees in 3-hypergraphs and Hamilton cycles in line graphs")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Iteration cap for the quasitree search (default 10·(|V|+|E|)²).
    #[arg(long, global = true)]
    pub max_iters: Option<usize>,
    /// Print nothing on success; only the exit status reports the outcome.
    #[arg(long, global = true)]
    pub quiet: bool,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Dot,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Structural, connectivity and order report for a hypergraph, graph or quasigraph file.
    Check {
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long)]
        quasigraph: Option<PathBuf>,
        /// A partition to test for being narrow, wide and skeletal.
        #[arg(long)]
        partition: Option<PathBuf>,
        /// Include the partition sequence of the quasigraph.
        #[arg(long)]
        sequence: bool,
    },
    /// Search for a quasitree with tight complement.
    FindQuasitree {
        #[arg(long)]
        input: PathBuf,
        /// Emit every search step as a JSON line before the result.
        #[arg(long)]
        trace: bool,
    },
    /// Hamilton cycle (or path, with --path) in the line graph of a multigraph.
    Hamilton {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, num_args = 2, value_names = ["E1", "E2"])]
        path: Option<Vec<String>>,
        /// Output format; overrides --format.
        #[arg(long, value_enum)]
        emit: Option<Format>,
    },
    /// Hamilton path between two vertices of the line graph, or between all ordered pairs.
    HamiltonPath {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, required_unless_present = "all")]
        from: Option<String>,
        #[arg(long, required_unless_present = "all")]
        to: Option<String>,
        #[arg(long, conflicts_with_all = ["from", "to"])]
        all: bool,
    },
    /// Seeded instance generator; prints one JSON document per line.
    Gen {
        #[arg(long, value_enum)]
        kind: KindArg,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = ConstraintArg::None)]
        constraints: ConstraintArg,
        #[arg(long, default_value_t = 1)]
        count: usize,
        #[arg(long, default_value_t = 12)]
        max_edges: usize,
    },
    /// Brute-force ground truth.
    Oracle {
        #[command(subcommand)]
        task: OracleTask,
    },
}

#[derive(Subcommand, Debug)]
pub enum OracleTask {
    /// All quasitrees with tight complement, by enumeration.
    Quasitrees {
        #[arg(long)]
        input: PathBuf,
    },
    /// Hamilton cycle or path by backtracking, in the graph itself or its line graph.
    Hamilton {
        #[arg(long)]
        input: PathBuf,
        /// Search the line graph; --from/--to then name edges.
        #[arg(long)]
        line: bool,
        #[arg(long, requires = "to")]
        from: Option<String>,
        #[arg(long, requires = "from")]
        to: Option<String>,
    },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    Hypergraph,
    Graph,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum ConstraintArg {
    /// 4-edge-connected, no 3-hyperedge in a cut of size at most 4.
    Theorem,
    /// Essentially 5-edge-connected, minimum edge weight 6.
    LineGraph,
    None,
}

#[derive(Debug, thiserror::Error)]
pub enum Failure {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] Error),
    #[error("verification failed: {0}")]
    Verify(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) | Failure::Core(Error::Parse(_)) => 1,
            Failure::Core(Error::Invariant(_)) | Failure::Verify(_) => 3,
            Failure::Core(_) => 2,
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    let mut out = String::new();
    let result = commands::run(&cli, &mut out);
    if !cli.global.quiet {
        print!("{out}");
    }
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("quasi: {f}");
            ExitCode::from(f.code())
        }
    }
}
