//! `graph-preview`: discover and render an optimal preview for an entity
//! graph file.
//!
//! Exit codes: 0 success, 2 usage error, 3 I/O error, 4 input parse
//! error, 5 infeasible constraints or failed computation. Errors print a
//! single machine-parsable `error: <category>: <message>` line on stderr.

mod cache;
mod diag;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, ValueEnum};

use graph_preview::discovery::{discover, Algorithm, Constraints, SpaceConstraint};
use graph_preview::preview::{materialize, render, OutputFormat, RenderMeta};
use graph_preview::scoring::{KeyMeasure, NonKeyMeasure, RandomWalkConfig};
use graph_preview::{EntityGraph, ScoredSchema};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Concise,
    Tight,
    Diverse,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum KeyArg {
    Coverage,
    Randomwalk,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum NonKeyArg {
    Coverage,
    Entropy,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum AlgorithmArg {
    Auto,
    Brute,
    Dp,
    Apriori,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Json,
    Markdown,
}

/// Generate optimal preview tables for a typed entity graph.
#[derive(Parser, Debug)]
#[command(name = "graph-preview", version)]
struct Args {
    /// Entity graph input file (ET/RT/EN/ED line format)
    #[arg(short, long)]
    input: PathBuf,

    /// Preview space: size-only, or with a max (tight) / min (diverse)
    /// pairwise key distance
    #[arg(long, value_enum, default_value_t = ModeArg::Concise)]
    mode: ModeArg,

    /// Number of preview tables
    #[arg(short)]
    k: usize,

    /// Total non-key attribute budget across all tables
    #[arg(short)]
    n: usize,

    /// Distance bound; required for tight/diverse, rejected for concise
    #[arg(short)]
    d: Option<u32>,

    /// Key attribute measure
    #[arg(long, value_enum, default_value_t = KeyArg::Coverage)]
    key: KeyArg,

    /// Non-key attribute measure
    #[arg(long, value_enum, default_value_t = NonKeyArg::Coverage)]
    nonkey: NonKeyArg,

    /// Solver; auto picks dp for concise and apriori otherwise
    #[arg(long, value_enum, default_value_t = AlgorithmArg::Auto)]
    algorithm: AlgorithmArg,

    /// Sample tuples per table
    #[arg(long, default_value_t = 3)]
    tuples: usize,

    /// Tuple sampling seed
    #[arg(long, default_value_t = 0)]
    seed: u64,

    /// Output format on stdout
    #[arg(long, value_enum, default_value_t = FormatArg::Json)]
    format: FormatArg,

    /// Random-walk teleport probability (key measure `randomwalk`)
    #[arg(long, default_value_t = 1e-5)]
    teleport: f64,

    /// Random-walk L1 convergence tolerance
    #[arg(long, default_value_t = 1e-9)]
    tolerance: f64,

    /// Print graph sizes and per-phase timings to stderr
    #[arg(long)]
    emit_timings: bool,

    /// Cache the scored schema in a sidecar file next to the input,
    /// keyed by input content and measure configuration
    #[arg(long)]
    cache: bool,
}

struct Failure {
    category: &'static str,
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Self { category: "usage", code: 2, message: message.into() }
    }

    fn io(message: impl Into<String>) -> Self {
        Self { category: "io", code: 3, message: message.into() }
    }

    fn parse(message: impl Into<String>) -> Self {
        Self { category: "parse", code: 4, message: message.into() }
    }

    fn compute(message: impl Into<String>) -> Self {
        Self { category: "compute", code: 5, message: message.into() }
    }
}

fn main() -> ExitCode {
    let args = Args::parse();
    match run(&args) {
        Ok(output) => {
            print!("{output}");
            ExitCode::SUCCESS
        }
        Err(failure) => {
            eprintln!("error: {}: {}", failure.category, failure.message);
            ExitCode::from(failure.code)
        }
    }
}

fn constraints(args: &Args) -> Result<Constraints, Failure> {
    let space = match (args.mode, args.d) {
        (ModeArg::Concise, None) => SpaceConstraint::Concise,
        (ModeArg::Concise, Some(_)) => {
            return Err(Failure::usage("-d is only meaningful for tight/diverse mode"))
        }
        (ModeArg::Tight, Some(d)) => SpaceConstraint::Tight { d },
        (ModeArg::Diverse, Some(d)) => SpaceConstraint::Diverse { d },
        (ModeArg::Tight | ModeArg::Diverse, None) => {
            return Err(Failure::usage("tight/diverse mode requires -d"))
        }
    };
    Constraints::new(args.k, args.n, space).map_err(|e| Failure::usage(e.to_string()))
}

fn algorithm(args: &Args) -> Result<Algorithm, Failure> {
    let concise = args.mode == ModeArg::Concise;
    match args.algorithm {
        AlgorithmArg::Auto => Ok(Algorithm::Auto),
        AlgorithmArg::Brute => Ok(Algorithm::BruteForce),
        AlgorithmArg::Dp if concise => Ok(Algorithm::DynamicProgramming),
        AlgorithmArg::Dp => Err(Failure::usage(
            "--algorithm dp only supports concise mode",
        )),
        AlgorithmArg::Apriori if !concise => Ok(Algorithm::Apriori),
        AlgorithmArg::Apriori => Err(Failure::usage(
            "--algorithm apriori requires tight or diverse mode",
        )),
    }
}

fn run(args: &Args) -> Result<String, Failure> {
    let mut timings = diag::Timings::new(args.emit_timings);
    let constraints = constraints(args)?;
    let algorithm = algorithm(args)?;
    if args.tuples == 0 {
        return Err(Failure::usage("--tuples must be at least 1"));
    }
    let key_measure = match args.key {
        KeyArg::Coverage => KeyMeasure::Coverage,
        KeyArg::Randomwalk => KeyMeasure::RandomWalk,
    };
    let nonkey_measure = match args.nonkey {
        NonKeyArg::Coverage => NonKeyMeasure::Coverage,
        NonKeyArg::Entropy => NonKeyMeasure::Entropy,
    };

    let text = std::fs::read_to_string(&args.input)
        .map_err(|e| Failure::io(format!("{}: {e}", args.input.display())))?;

    let start = Instant::now();
    let graph = EntityGraph::parse(&text).map_err(|e| Failure::parse(e.to_string()))?;
    timings.record("parse", start);

    let start = Instant::now();
    let schema = graph.schema();
    timings.record("schema", start);
    timings.sizes(&graph, &schema);

    let walk_cfg = RandomWalkConfig {
        teleport: args.teleport,
        tolerance: args.tolerance,
        // The teleport probability bounds the mixing rate on nearly
        // periodic schema graphs, so size the iteration budget from it.
        max_iterations: ((30.0 / args.teleport) as usize).clamp(10_000, 20_000_000),
    };

    let start = Instant::now();
    let scored = if args.cache {
        cache::load_or_build(
            &args.input,
            &text,
            &graph,
            &schema,
            key_measure,
            nonkey_measure,
            &walk_cfg,
            args.emit_timings,
        )?
    } else {
        ScoredSchema::build(&graph, &schema, key_measure, nonkey_measure, &walk_cfg)
            .map_err(|e| Failure::compute(e.to_string()))?
    };
    timings.record("score", start);

    let start = Instant::now();
    let preview =
        discover(&scored, &constraints, algorithm).map_err(|e| Failure::compute(e.to_string()))?;
    timings.record("discover", start);

    let start = Instant::now();
    let tables = preview
        .tables
        .iter()
        .map(|t| materialize(&graph, scored.schema(), t, args.tuples, args.seed))
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| Failure::compute(e.to_string()))?;
    let meta = RenderMeta {
        constraints,
        key_measure,
        nonkey_measure,
    };
    let format = match args.format {
        FormatArg::Json => OutputFormat::Json,
        FormatArg::Markdown => OutputFormat::Markdown,
    };
    let output =
        render(&preview, &tables, &meta, format).map_err(|e| Failure::compute(e.to_string()))?;
    timings.record("render", start);
    timings.flush();
    Ok(output)
}
