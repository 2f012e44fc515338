//! `hydralab`: hydra numbers, bounds, constructions and certificate checks.

mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hydralab::corpus::DEFAULT_SEED;

use report::Failure;

#[derive(Parser, Debug)]
#[command(name = "hydralab", version, about = "Hydra numbers of graphs and the hypergraphs that realize them")]
pub struct Cli {
    /// Print structured JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,

    /// Worker threads for the exact solver.
    #[arg(long, global = true, env = "HYDRALAB_THREADS")]
    pub threads: Option<usize>,

    /// Seed for randomly generated graphs.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Forward-chaining closure of a vertex set.
    Closure {
        hypergraph: PathBuf,
        /// Comma-separated vertices, e.g. `0,2,5`.
        vertices: String,
    },
    /// Check that a certificate represents a graph.
    Verify { hypergraph: PathBuf, graph: PathBuf },
    /// Exact hydra number by branch and bound.
    Exact(ExactArgs),
    /// Lower and upper bounds with their justifications.
    Bounds {
        graph: PathBuf,
        /// Also report p(G) computed with this strategy.
        #[arg(long, value_enum)]
        p_strategy: Option<PStrategyArg>,
    },
    /// Build a verified certificate without search.
    Construct {
        graph: PathBuf,
        #[arg(long, value_enum, default_value_t = Method::Auto)]
        method: Method,
        /// Also write the certificate to this file.
        #[arg(long)]
        certificate_out: Option<PathBuf>,
    },
    /// Print a member of a graph family in edge-list format.
    Family {
        #[command(subcommand)]
        kind: FamilyKind,
    },
    /// Bounds and construction for the smallest k-closing hypergraph on n vertices.
    Fkn {
        n: usize,
        k: usize,
        /// Also run the exact search (n <= 6).
        #[arg(long)]
        exact: bool,
    },
    /// Hydra Horn formulas.
    Horn {
        #[command(subcommand)]
        action: HornAction,
    },
    /// Exploratory experiments on open questions.
    Experiment {
        #[command(subcommand)]
        kind: ExperimentKind,
    },
}

#[derive(Args, Debug)]
pub struct ExactArgs {
    pub graph: PathBuf,
    /// Only decide whether one head per edge suffices.
    #[arg(long, conflicts_with_all = ["caps", "all_optima"])]
    pub single_headed: bool,
    /// Head caps as `vertex=cap,...`.
    #[arg(long)]
    pub caps: Option<String>,
    /// List every optimal certificate (small graphs only).
    #[arg(long)]
    pub all_optima: bool,
    #[arg(long, default_value_t = 10_000_000)]
    pub limit_nodes: u64,
    #[arg(long, default_value_t = 60.0)]
    pub limit_secs: f64,
    /// Also write the certificate to this file.
    #[arg(long)]
    pub certificate_out: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum PStrategyArg {
    Auto,
    Exhaustive,
    Tree,
    BinaryFourLevel,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    PathCover,
    LineHam,
    Auto,
}

#[derive(Subcommand, Debug)]
pub enum FamilyKind {
    Star { leaves: usize },
    Path { n: usize },
    Cycle { n: usize },
    Matching { edges: usize },
    /// Leaves hanging off each spine vertex, e.g. `1,0,2`.
    Caterpillar { leaves: String },
    /// Leg lengths, e.g. `2,2,1`.
    Spider { legs: String },
    /// Spider with k legs of length two.
    #[command(alias = "Tk")]
    Tk { k: usize },
    /// Complete binary tree of depth d.
    #[command(alias = "B")]
    BinaryTree { d: usize },
    /// Single-headed family on an 8k-cycle.
    #[command(alias = "Gk")]
    Gk { k: usize },
    Turan { n: usize, r: usize },
    ForbiddenCaterpillar,
    /// Random connected graph: a random spanning tree plus `extra` edges.
    Random { n: usize, extra: usize },
}

#[derive(Subcommand, Debug)]
pub enum HornAction {
    /// Shortest equivalent subformula of a hydra formula.
    Minimize {
        file: PathBuf,
        #[arg(long, default_value_t = 10_000_000)]
        limit_nodes: u64,
    },
    /// Report whether a formula is a hydra formula and its body graph.
    Check { file: PathBuf },
}

#[derive(Subcommand, Debug)]
pub enum ExperimentKind {
    /// Exact value after adding each non-edge.
    EdgeAdd { graph: PathBuf },
    /// Compare h(G) with the component sum plus the number of components.
    Components { graph: PathBuf },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(threads) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(threads.max(1)).build_global() {
            eprintln!("error: could not start {threads} threads: {e}");
            return ExitCode::from(2);
        }
    }
    let outcome = commands::run(&cli);
    let code = match &outcome {
        Ok(r) => r.code,
        Err(f) => f.code(),
    };
    match outcome {
        Ok(r) => r.print(cli.json),
        Err(f) => print_failure(&cli, &f),
    }
    ExitCode::from(code)
}

fn print_failure(cli: &Cli, f: &Failure) {
    if cli.json {
        let doc = serde_json::json!({
            "schema": report::SCHEMA,
            "error": f.to_string(),
            "exit_code": f.code(),
        });
        println!("{}", serde_json::to_string_pretty(&doc).expect("serializable"));
    } else {
        eprintln!("error: {f}");
    }
}
