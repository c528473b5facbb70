//! `graph-preview-bench`: time the discovery solvers over a grid of
//! constraints, on a synthetic or an existing entity graph, and report
//! CSV (columns `K,N,k,n,d,mode,algorithm,ms`) on stdout.
//!
//! Exit codes match `graph-preview`: 2 usage, 3 I/O, 4 parse, 5 compute.
//! Per-configuration solver failures are recorded as rows with an empty
//! `ms` column and noted on stderr; they do not abort the run.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};

use graph_preview::bench::{generate_synthetic, time_solvers, SyntheticSpec};
use graph_preview::discovery::{Constraints, SpaceConstraint};
use graph_preview::EntityGraph;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Concise,
    Tight,
    Diverse,
}

/// Time preview discovery solvers and emit a CSV report.
#[derive(Parser, Debug)]
#[command(name = "graph-preview-bench", version)]
struct Args {
    /// Time an existing entity graph file instead of a synthetic one
    #[arg(long, conflicts_with_all = ["types", "rel_types", "entities", "edges", "skew", "seed"])]
    input: Option<PathBuf>,

    /// Synthetic: number of entity types
    #[arg(long, default_value_t = 46)]
    types: usize,

    /// Synthetic: number of relationship types
    #[arg(long, default_value_t = 133)]
    rel_types: usize,

    /// Synthetic: number of entities
    #[arg(long, default_value_t = 2000)]
    entities: usize,

    /// Synthetic: number of relationship instances
    #[arg(long, default_value_t = 8000)]
    edges: usize,

    /// Synthetic: degree skew in [0, 1]
    #[arg(long, default_value_t = 0.8)]
    skew: f64,

    /// Synthetic: generator seed
    #[arg(long, default_value_t = 9)]
    seed: u64,

    /// Write the timed graph to a file in the entity-graph line format
    #[arg(long)]
    emit_graph: Option<PathBuf>,

    /// Table counts to time (comma separated)
    #[arg(long, value_delimiter = ',', default_value = "9")]
    tables: Vec<usize>,

    /// Non-key budgets to time (comma separated)
    #[arg(long, value_delimiter = ',', default_value = "20")]
    budgets: Vec<usize>,

    /// Distance bounds for tight/diverse modes (comma separated)
    #[arg(long, value_delimiter = ',', default_value = "2")]
    distances: Vec<u32>,

    /// Preview spaces to time (comma separated)
    #[arg(long, value_delimiter = ',', value_enum, default_value = "concise")]
    modes: Vec<ModeArg>,

    /// Wall-clock runs to average per configuration
    #[arg(long, default_value_t = 3)]
    repetitions: usize,
}

fn main() -> ExitCode {
    let args = Args::parse();
    match run(&args) {
        Ok(csv) => {
            print!("{csv}");
            ExitCode::SUCCESS
        }
        Err((code, category, message)) => {
            eprintln!("error: {category}: {message}");
            ExitCode::from(code)
        }
    }
}

type Failure = (u8, &'static str, String);

fn run(args: &Args) -> Result<String, Failure> {
    let graph = match &args.input {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| (3, "io", format!("{}: {e}", path.display())))?;
            EntityGraph::parse(&text).map_err(|e| (4, "parse", e.to_string()))?
        }
        None => {
            let spec = SyntheticSpec {
                types: args.types,
                relationship_types: args.rel_types,
                entities: args.entities,
                edges: args.edges,
                degree_skew: args.skew,
                seed: args.seed,
            };
            generate_synthetic(&spec).map_err(|e| (2, "usage", e.to_string()))?
        }
    };

    if let Some(path) = &args.emit_graph {
        std::fs::write(path, graph.to_text())
            .map_err(|e| (3, "io", format!("{}: {e}", path.display())))?;
    }

    let mut grid = Vec::new();
    for &mode in &args.modes {
        for &k in &args.tables {
            for &n in &args.budgets {
                let spaces: Vec<SpaceConstraint> = match mode {
                    ModeArg::Concise => vec![SpaceConstraint::Concise],
                    ModeArg::Tight => args
                        .distances
                        .iter()
                        .map(|&d| SpaceConstraint::Tight { d })
                        .collect(),
                    ModeArg::Diverse => args
                        .distances
                        .iter()
                        .map(|&d| SpaceConstraint::Diverse { d })
                        .collect(),
                };
                for space in spaces {
                    grid.push(
                        Constraints::new(k, n, space)
                            .map_err(|e| (2, "usage", e.to_string()))?,
                    );
                }
            }
        }
    }

    let table =
        time_solvers(&graph, &grid, args.repetitions).map_err(|e| (5, "compute", e.to_string()))?;
    for row in &table.rows {
        if let Err(e) = &row.outcome {
            eprintln!(
                "warn: {} {} k={} n={} failed: {e}",
                row.constraints.space().mode_str(),
                row.algorithm,
                row.constraints.k(),
                row.constraints.n()
            );
        }
    }
    Ok(table.to_csv())
}
