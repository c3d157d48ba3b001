mod commands;
mod fixtures;
mod input;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

/// Exact (P,Q)-colouring, strongly unique partitions, and the gadgets that
/// reduce p-in-r hypergraph colouring to (P,Q)-colouring.
///
/// Exit status: 0 positive, 1 negative (not colourable, not unique,
/// unsatisfiable, verification failed), 2 usage or bound error.
#[derive(Debug, Parser)]
#[command(name = "pqcol", version)]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Global {
    /// Machine-readable JSON on stdout.
    #[arg(long, global = true)]
    pub json: bool,
    /// Largest graph order for fixture and uniqueness searches.
    #[arg(long, global = true, default_value_t = 9, value_parser = clap::value_parser!(u64).range(1..))]
    pub max_n: u64,
    /// Cap on enumerated partitions or colourings.
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    pub cap: Option<u64>,
    /// Shuffles the order in which sweeps visit instances.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Cache directory for fixtures and verified gadgets.
    #[arg(long, global = true, env = "PQCOL_FIXTURES_DIR")]
    pub fixtures_dir: Option<PathBuf>,
    /// Skip gadget verification; outputs are marked UNVERIFIED.
    #[arg(long, global = true)]
    pub no_verify: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Property membership and algebra.
    #[command(subcommand)]
    Prop(PropCommand),
    /// Find an ordered partition of a graph into the given properties.
    Solve {
        graph: String,
        #[arg(required = true)]
        props: Vec<String>,
        /// List every partition (bounded by --cap).
        #[arg(long)]
        all: bool,
    },
    /// Strong uniqueness of partitions.
    #[command(subcommand)]
    Unique(UniqueCommand),
    /// Build the replicator or pin cushion for a property pair.
    Gadget {
        #[arg(value_enum)]
        kind: GadgetKind,
        #[arg(long, default_value = "O,T")]
        pair: String,
        /// Verify by exhaustive colouring before emitting.
        #[arg(long)]
        verify: bool,
        /// Write graph6 to `<out>` and the port sidecar beside it with extension `.json`.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Reduce a p-in-r hypergraph instance to a (P,Q)-colouring instance.
    Reduce {
        hypergraph: PathBuf,
        #[arg(long, default_value = "O,T")]
        pair: String,
        /// Graph6 output; the certificate map goes beside it with extension `.map.json`.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Lift a colouring of a reduced graph to a hypergraph certificate.
    Certify {
        graph: String,
        /// Colouring JSON as printed by `solve --json`.
        colouring: PathBuf,
        /// Certificate map written by `reduce`.
        #[arg(long)]
        map: PathBuf,
    },
    /// Sweeps over families of instances.
    #[command(subcommand)]
    Sweep(SweepCommand),
}

#[derive(Debug, Subcommand)]
pub enum PropCommand {
    /// Does the graph have the property?
    Check { prop: String, graph: String },
    /// The intersection of two properties.
    Intersect { a: String, b: String },
    /// The class of complements.
    Complement { prop: String },
}

#[derive(Debug, Subcommand)]
pub enum UniqueCommand {
    /// Is the graph strongly uniquely partitionable?
    Check {
        graph: String,
        #[arg(long)]
        props: String,
    },
    /// Smallest strongly uniquely partitionable graph with a non-empty last part.
    Search {
        #[arg(long)]
        props: String,
    },
}

#[derive(Debug, Clone, Copy, clap::ValueEnum)]
pub enum GadgetKind {
    Replicator,
    Pincushion,
}

#[derive(Debug, Subcommand)]
pub enum SweepCommand {
    /// Reduction equivalence over all small uniform hypergraphs.
    Equivalence {
        #[arg(long, default_value_t = 4)]
        max_vertices: usize,
        #[arg(long, default_value_t = 3)]
        max_edges: usize,
        #[arg(long, default_value = "O,T")]
        pair: String,
    },
}

/// Mathematical answer of a command that ran to completion.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Positive,
    Negative,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(Outcome::Positive) => ExitCode::SUCCESS,
        Ok(Outcome::Negative) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
