//! Helpers shared by the unit tests: small random graphs and scored
//! schemas with integer-valued scores (sums and products of which are
//! exact in f64, so solver outputs can be compared for equality).

use crate::graph::{EntityGraph, SchemaGraph};
use crate::rng::SplitMix64;
use crate::scoring::{KeyMeasure, NonKeyMeasure, ScoredCandidate, ScoredSchema};

/// Random entity graph with `k` singleton types and one relationship type
/// (with one instance) per random pair; its schema graph is a random
/// simple graph on `k` vertices.
pub(crate) fn random_graph(k: usize, edge_prob: f64, rng: &mut SplitMix64) -> EntityGraph {
    let mut text = String::new();
    for i in 0..k {
        text.push_str(&format!("ET t{i:02} T{i}\nEN e{i:02} E{i} t{i:02}\n"));
    }
    let mut rel = 0;
    for a in 0..k {
        for b in (a + 1)..k {
            if rng.next_f64() < edge_prob {
                text.push_str(&format!("RT r{rel:03} R{rel} t{a:02} t{b:02}\n"));
                text.push_str(&format!("ED r{rel:03} e{a:02} e{b:02}\n"));
                rel += 1;
            }
        }
    }
    EntityGraph::parse(&text).unwrap()
}

/// Random scored schema over a random graph: integer key scores in
/// `0..=9` and integer candidate scores in `0..=9`, deliberately small so
/// ties occur and tie-breaking paths are exercised.
pub(crate) fn random_scored_schema(seed: u64, max_types: usize) -> ScoredSchema {
    let mut rng = SplitMix64::new(seed);
    let k = 2 + rng.next_below((max_types - 1) as u64) as usize;
    let g = random_graph(k, 0.4, &mut rng);
    let schema = g.schema();
    scored_with_random_scores(schema, &mut rng)
}

pub(crate) fn scored_with_random_scores(
    schema: SchemaGraph,
    rng: &mut SplitMix64,
) -> ScoredSchema {
    let key_scores: Vec<f64> = schema.types().map(|_| rng.next_below(10) as f64).collect();
    let candidates: Vec<Vec<ScoredCandidate>> = schema
        .types()
        .map(|t| {
            schema
                .incident_candidates(t)
                .into_iter()
                .map(|candidate| ScoredCandidate {
                    candidate,
                    score: rng.next_below(10) as f64,
                })
                .collect()
        })
        .collect();
    ScoredSchema::from_parts(
        schema,
        KeyMeasure::Coverage,
        NonKeyMeasure::Coverage,
        key_scores,
        candidates,
    )
    .unwrap()
}
