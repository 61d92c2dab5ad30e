mod commands;
mod manifest;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use crate::commands::{Failure, Session};

/// Reductions of synchronous non-local games to 3-coloring and independence
/// number, with exact solvers and certificate checks.
///
/// Exit codes: 0 found / success, 20 proven none, 30 inconclusive within
/// budget, 64 bad input, 70 internal consistency failure.
#[derive(Debug, Parser)]
#[command(name = "syncgame", version)]
pub struct Cli {
    /// Seed for solver tie-breaking.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Wall-clock budget per search, in milliseconds.
    #[arg(long, global = true, default_value_t = 60_000)]
    pub budget_ms: u64,
    /// Node budget per search.
    #[arg(long, global = true, default_value_t = 1_000_000_000)]
    pub budget_nodes: u64,
    /// Numerical tolerance for operator checks (operator norm).
    #[arg(long, global = true, default_value_t = 1e-8)]
    pub tol: f64,
    /// Where to write the run manifest. Commands with `--out` default to
    /// `<out>.manifest.json`.
    #[arg(long, global = true)]
    pub manifest: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build the gadget graph G_λ of a game: DIMACS, label map and the
    /// preprocessed game it was built from.
    ReduceColoring {
        game: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Relabel answers to shrink the number of orthogonality gadgets.
        #[arg(long)]
        search_labeling: bool,
    },
    /// Build the graph of the game X(𝒢) as DIMACS.
    ReduceIndependence {
        game: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Decide the game three ways (strategy search, 3-coloring of G_λ,
    /// independence number of X) and cross-check every certificate.
    Roundtrip { game: PathBuf },
    /// Lovász reduction of k-coloring a graph to 3-coloring a gadget.
    Lovasz {
        graph: PathBuf,
        #[arg(short)]
        k: usize,
        #[arg(long)]
        out: PathBuf,
        /// Also run the 3-coloring solver on the gadget.
        #[arg(long)]
        solve: bool,
    },
    /// Zero-knowledge correlation of the k-coloring game, as TSV.
    Zk {
        graph: PathBuf,
        #[arg(short)]
        k: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Validate an operator strategy and push it through G_λ.
    VerifyOperator {
        /// Built-in fixture (`mermin`) instead of `--pvm`/`--game`.
        #[arg(long, conflicts_with_all = ["pvm", "game"])]
        fixture: Option<Fixture>,
        #[arg(long, requires = "game")]
        pvm: Option<PathBuf>,
        #[arg(long, requires = "pvm")]
        game: Option<PathBuf>,
    },
    /// Exact k-coloring of a DIMACS graph. With `--labels`, a gadget's
    /// base triangle is fixed to colors 1, 2, 3.
    Color {
        graph: PathBuf,
        #[arg(short)]
        k: usize,
        #[arg(long)]
        labels: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Read a winning strategy off a 3-coloring of a game's gadget graph.
    Decode {
        game: PathBuf,
        #[arg(long)]
        coloring: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write a built-in game, graph or operator strategy.
    Fixture {
        name: Fixture,
        #[arg(long)]
        out: PathBuf,
        /// Question count for `trivial`.
        #[arg(long, default_value_t = 2)]
        n: usize,
        /// Answer count for `trivial`.
        #[arg(long, default_value_t = 3)]
        k: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Fixture {
    MagicSquare,
    TinyUnsat,
    Trivial,
    Mermin,
    C5,
    K4,
    K5,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut session = Session::new(&cli);
    let outcome = commands::run(&mut session, &cli.command);
    let code = match outcome {
        Ok(status) => status as u8,
        Err(Failure::BadInput(e)) => {
            eprintln!("error: {e:#}");
            64
        }
        Err(Failure::Internal(e)) => {
            eprintln!("internal error: {e:#}");
            70
        }
    };
    if let Err(e) = session.finish(code) {
        eprintln!("error: {e:#}");
        return ExitCode::from(70);
    }
    ExitCode::from(code)
}
