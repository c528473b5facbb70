//! Synthetic entity graphs and a wall-clock harness comparing the
//! discovery solvers.
//!
//! The generator is deterministic per seed and realizes exactly the
//! requested schema shape: every entity type gets at least one entity and
//! every relationship type at least one instance. Relationship types are
//! laid out along a chain of types with a small attachment window plus
//! skew-controlled parallel duplicates, which keeps the schema graph
//! high-diameter and locally sparse — the regime where distance
//! constraints actually filter.

use std::fmt::Write as _;
use std::time::Instant;

use thiserror::Error;

use crate::discovery::{
    apriori_discover, brute_force, dp_concise, Constraints, SpaceConstraint,
};
use crate::graph::EntityGraph;
use crate::rng::SplitMix64;
use crate::scoring::{KeyMeasure, NonKeyMeasure, RandomWalkConfig, ScoreError, ScoredSchema};

#[derive(Debug, Error, PartialEq)]
pub enum BenchError {
    #[error("infeasible synthetic spec: {0}")]
    InfeasibleSpec(String),
    #[error("repetitions must be at least 1")]
    ZeroRepetitions,
    #[error(transparent)]
    Scoring(#[from] ScoreError),
}

/// Shape of a synthetic entity graph.
#[derive(Clone, Copy, Debug)]
pub struct SyntheticSpec {
    /// Entity types (schema vertices), at least 1.
    pub types: usize,
    /// Relationship types (schema edges).
    pub relationship_types: usize,
    /// Entities; at least one per type.
    pub entities: usize,
    /// Relationship instances; at least one per relationship type.
    pub edges: usize,
    /// In [0, 1]: probability that an extra relationship type duplicates
    /// an existing type pair instead of attaching a new one, and the bias
    /// of instance counts towards low-index relationship types.
    pub degree_skew: f64,
    pub seed: u64,
}

/// Distance beyond the chain position a relationship type may attach to.
const ATTACH_WINDOW: usize = 3;

/// The first types form a clique of relationship types, giving the schema
/// a hub neighborhood like real datasets have.
const CLUSTER_SIZE: usize = 12;

/// Generates a deterministic entity graph whose schema graph has exactly
/// `spec.types` vertices and `spec.relationship_types` edges.
pub fn generate_synthetic(spec: &SyntheticSpec) -> Result<EntityGraph, BenchError> {
    if spec.types == 0 {
        return Err(BenchError::InfeasibleSpec("types must be at least 1".into()));
    }
    if spec.entities < spec.types {
        return Err(BenchError::InfeasibleSpec(format!(
            "{} entities cannot cover {} types",
            spec.entities, spec.types
        )));
    }
    if spec.edges < spec.relationship_types {
        return Err(BenchError::InfeasibleSpec(format!(
            "{} edges cannot cover {} relationship types",
            spec.edges, spec.relationship_types
        )));
    }
    if spec.relationship_types == 0 && spec.edges > 0 {
        return Err(BenchError::InfeasibleSpec(
            "edges require at least one relationship type".into(),
        ));
    }
    if !(0.0..=1.0).contains(&spec.degree_skew) {
        return Err(BenchError::InfeasibleSpec(
            "degree_skew must lie in [0, 1]".into(),
        ));
    }

    let mut rng = SplitMix64::new(spec.seed);
    let mut text = String::new();
    for t in 0..spec.types {
        let _ = writeln!(text, "ET t{t:03} Type_{t}");
    }

    // Chain backbone first (connectivity and a large diameter), then a
    // dense cluster among the first few types (real schema graphs have a
    // hub neighborhood), then skew-controlled extras.
    let mut pairs: Vec<(usize, usize)> = Vec::with_capacity(spec.relationship_types);
    let backbone = spec.relationship_types.min(spec.types - 1);
    for v in 1..=backbone {
        let lo = v.saturating_sub(ATTACH_WINDOW);
        let parent = lo + rng.next_below((v - lo) as u64) as usize;
        pairs.push((parent, v));
    }
    let cluster = CLUSTER_SIZE.min(spec.types);
    'cluster: for a in 0..cluster {
        for b in a + 1..cluster {
            if pairs.len() >= spec.relationship_types {
                break 'cluster;
            }
            if !pairs.contains(&(a, b)) {
                pairs.push((a, b));
            }
        }
    }
    while pairs.len() < spec.relationship_types {
        if !pairs.is_empty() && rng.next_f64() < spec.degree_skew {
            let copy = pairs[rng.next_below(pairs.len() as u64) as usize];
            pairs.push(copy);
        } else if spec.types == 1 {
            pairs.push((0, 0));
        } else {
            let a = rng.next_below(spec.types as u64) as usize;
            let delta = 1 + rng.next_below(ATTACH_WINDOW as u64) as usize;
            let b = if a + delta < spec.types {
                a + delta
            } else {
                a.saturating_sub(delta)
            };
            pairs.push((a.min(b), a.max(b)));
        }
    }
    for (r, &(a, b)) in pairs.iter().enumerate() {
        // Random orientation.
        let (src, dst) = if rng.next_f64() < 0.5 { (a, b) } else { (b, a) };
        let _ = writeln!(text, "RT r{r:03} Rel_{r} t{src:03} t{dst:03}");
    }

    for e in 0..spec.entities {
        let t = e % spec.types;
        let _ = writeln!(text, "EN e{e:05} Entity_{e} t{t:03}");
    }

    let member = |t: usize, rng: &mut SplitMix64| {
        // Entities of type t sit at t, t + types, t + 2*types, ...
        let count = (spec.entities - t - 1) / spec.types + 1;
        t + spec.types * rng.next_below(count as u64) as usize
    };

    // Instance endpoints must match each relationship type's declared
    // source and target types, so look those up from the declarations.
    let mut rel_endpoints: Vec<(usize, usize)> = Vec::with_capacity(spec.relationship_types);
    for line in text.lines().filter(|l| l.starts_with("RT ")) {
        let fields: Vec<&str> = line.split_whitespace().collect();
        let parse = |s: &str| s[1..].parse::<usize>().unwrap();
        rel_endpoints.push((parse(fields[3]), parse(fields[4])));
    }

    for (r, &(src_t, dst_t)) in rel_endpoints.iter().enumerate() {
        let src = member(src_t, &mut rng);
        let dst = member(dst_t, &mut rng);
        let _ = writeln!(text, "ED r{r:03} e{src:05} e{dst:05}");
    }
    for _ in spec.relationship_types..spec.edges {
        let u = rng.next_f64();
        let r = ((spec.relationship_types as f64) * u.powf(1.0 + spec.degree_skew)) as usize;
        let r = r.min(spec.relationship_types - 1);
        let (src_t, dst_t) = rel_endpoints[r];
        let src = member(src_t, &mut rng);
        let dst = member(dst_t, &mut rng);
        let _ = writeln!(text, "ED r{r:03} e{src:05} e{dst:05}");
    }

    Ok(EntityGraph::parse(&text).expect("generated text is well-formed"))
}

/// One timed solver run (averaged over the repetitions).
#[derive(Clone, Debug)]
pub struct TimingRow {
    pub schema_types: usize,
    pub schema_rel_types: usize,
    pub constraints: Constraints,
    pub algorithm: &'static str,
    /// Average wall-clock milliseconds, or the error that stopped the
    /// solver (recorded, not fatal).
    pub outcome: Result<f64, String>,
}

/// Timing results in CSV form: columns `K,N,k,n,d,mode,algorithm,ms`.
#[derive(Clone, Debug, Default)]
pub struct TimingTable {
    pub rows: Vec<TimingRow>,
}

impl TimingTable {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("K,N,k,n,d,mode,algorithm,ms\n");
        for row in &self.rows {
            let d = row
                .constraints
                .space()
                .d()
                .map(|d| d.to_string())
                .unwrap_or_default();
            let ms = match &row.outcome {
                Ok(ms) => format!("{ms:.3}"),
                Err(_) => String::new(),
            };
            let _ = writeln!(
                out,
                "{},{},{},{},{},{},{},{}",
                row.schema_types,
                row.schema_rel_types,
                row.constraints.k(),
                row.constraints.n(),
                d,
                row.constraints.space().mode_str(),
                row.algorithm,
                ms
            );
        }
        out
    }

    /// Average milliseconds of the run matching the filter, if it
    /// succeeded.
    pub fn ms_for(&self, c: &Constraints, algorithm: &str) -> Option<f64> {
        self.rows
            .iter()
            .find(|row| row.constraints == *c && row.algorithm == algorithm)
            .and_then(|row| row.outcome.clone().ok())
    }
}

/// Times every applicable solver (brute force always; dynamic programming
/// for concise constraints, the Apriori join otherwise) on each grid
/// entry, averaging wall-clock time over `repetitions` runs. Scoring
/// happens once, outside the timed region, with coverage measures. Runs
/// are strictly sequential.
pub fn time_solvers(
    g: &EntityGraph,
    grid: &[Constraints],
    repetitions: usize,
) -> Result<TimingTable, BenchError> {
    if repetitions == 0 {
        return Err(BenchError::ZeroRepetitions);
    }
    let schema = g.schema();
    let scored = ScoredSchema::build(
        g,
        &schema,
        KeyMeasure::Coverage,
        NonKeyMeasure::Coverage,
        &RandomWalkConfig::default(),
    )?;

    let mut table = TimingTable::default();
    for &c in grid {
        let solvers: &[&'static str] = match c.space() {
            SpaceConstraint::Concise => &["brute", "dp"],
            _ => &["brute", "apriori"],
        };
        for &algorithm in solvers {
            let mut total_ms = 0.0;
            let mut failure: Option<String> = None;
            for _ in 0..repetitions {
                let start = Instant::now();
                let result = match algorithm {
                    "brute" => brute_force(&scored, &c),
                    "dp" => dp_concise(&scored, c.k(), c.n()),
                    _ => apriori_discover(&scored, &c),
                };
                let elapsed = start.elapsed().as_secs_f64() * 1e3;
                match result {
                    Ok(_) => total_ms += elapsed,
                    Err(e) => {
                        failure = Some(e.to_string());
                        break;
                    }
                }
            }
            table.rows.push(TimingRow {
                schema_types: schema.type_count(),
                schema_rel_types: schema.rel_type_count(),
                constraints: c,
                algorithm,
                outcome: match failure {
                    Some(e) => Err(e),
                    None => Ok(total_ms / repetitions as f64),
                },
            });
        }
    }
    Ok(table)
}
