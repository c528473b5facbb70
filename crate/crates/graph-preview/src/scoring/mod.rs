//! Scores for candidate key and non-key attributes.
//!
//! A preview table scores as its key attribute's score times the sum of
//! its non-key attributes' scores; a preview scores as the sum of its
//! tables. Key attributes (entity types) are scored either by coverage
//! (entity count) or by their stationary probability under a weighted
//! random walk on the schema graph. Non-key attributes (incident
//! relationship types) are scored either by coverage (instance count) or
//! by the entropy of the value distribution they induce over the key
//! type's entities.

mod random_walk;

pub use random_walk::{
    perturbed_transition_matrix, score_keys_random_walk, transition_matrix,
};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{
    AttributeCandidate, Direction, DistanceIndex, EntityGraph, SchemaGraph, TypeRef,
};

#[derive(Debug, Error, PartialEq)]
pub enum ScoreError {
    #[error("unknown entity type `{0}`")]
    UnknownType(String),
    #[error("unknown relationship type `{0}`")]
    UnknownEdgeType(String),
    #[error("schema id `{0}` does not exist in the entity graph")]
    GraphSchemaMismatch(String),
    #[error("invalid random-walk config: {0}")]
    InvalidConfig(String),
    #[error(
        "random walk did not converge within {iterations} iterations \
         (L1 residual {residual:.3e})"
    )]
    NonConvergence { iterations: usize, residual: f64 },
    #[error("a preview table requires at least one non-key attribute")]
    EmptyNonKeys,
    #[error("inconsistent scored schema: {0}")]
    InvalidParts(String),
}

/// Measure used to score candidate key attributes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum KeyMeasure {
    Coverage,
    #[serde(rename = "randomwalk")]
    RandomWalk,
}

impl KeyMeasure {
    pub fn as_str(self) -> &'static str {
        match self {
            KeyMeasure::Coverage => "coverage",
            KeyMeasure::RandomWalk => "randomwalk",
        }
    }
}

/// Measure used to score candidate non-key attributes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NonKeyMeasure {
    Coverage,
    Entropy,
}

impl NonKeyMeasure {
    pub fn as_str(self) -> &'static str {
        match self {
            NonKeyMeasure::Coverage => "coverage",
            NonKeyMeasure::Entropy => "entropy",
        }
    }
}

/// Parameters of the random-walk key measure.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct RandomWalkConfig {
    /// Extra transition probability added between every pair of distinct
    /// types, so the walk converges even on disconnected schema graphs.
    pub teleport: f64,
    /// L1 convergence threshold on the stationary equation residual.
    pub tolerance: f64,
    pub max_iterations: usize,
}

impl Default for RandomWalkConfig {
    fn default() -> Self {
        Self {
            teleport: 1e-5,
            tolerance: 1e-9,
            max_iterations: 10_000,
        }
    }
}

/// Number of entities bearing the given type.
pub fn score_key_coverage(g: &EntityGraph, type_id: &str) -> Result<u64, ScoreError> {
    let idx = g
        .type_index(type_id)
        .ok_or_else(|| ScoreError::UnknownType(type_id.to_string()))?;
    Ok(g.member_count(idx) as u64)
}

/// Number of relationship instances of the candidate's type. Symmetric in
/// the candidate's direction: both endpoint types see the same score.
pub fn score_nonkey_coverage(
    g: &EntityGraph,
    s: &SchemaGraph,
    c: AttributeCandidate,
) -> Result<u64, ScoreError> {
    let rel_id = s.rel_id(c.edge_type);
    let idx = g
        .edge_type_index(rel_id)
        .ok_or_else(|| ScoreError::GraphSchemaMismatch(rel_id.to_string()))?;
    Ok(g.edges_of_type(idx).len() as u64)
}

/// Base-10 entropy of the distribution of distinct value-sets the
/// candidate induces over the key type's entities.
///
/// Each key entity's value on the candidate is the set of its neighbors
/// through edges of the candidate's type and direction. Two values are
/// equivalent iff they are equal as sets. Entities with an empty value are
/// excluded: with `m` non-empty tuples of which `n_j` share the `j`-th
/// distinct value-set, the score is `sum_j (n_j/m) * log10(m/n_j)`, and 0
/// when `m = 0`.
pub fn score_nonkey_entropy(
    g: &EntityGraph,
    s: &SchemaGraph,
    c: AttributeCandidate,
) -> Result<f64, ScoreError> {
    let key_id = s.type_id(c.key_type);
    let rel_id = s.rel_id(c.edge_type);
    let key_idx = g
        .type_index(key_id)
        .ok_or_else(|| ScoreError::GraphSchemaMismatch(key_id.to_string()))?;
    let rel_idx = g
        .edge_type_index(rel_id)
        .ok_or_else(|| ScoreError::GraphSchemaMismatch(rel_id.to_string()))?;

    let mut group_sizes: std::collections::HashMap<Vec<usize>, u64> =
        std::collections::HashMap::new();
    for &entity in &g.members[key_idx] {
        let mut value_set: Vec<usize> = g
            .edges_of_type(rel_idx)
            .iter()
            .filter_map(|e| match c.direction {
                Direction::Outgoing if e.src == entity => Some(e.dst),
                Direction::Incoming if e.dst == entity => Some(e.src),
                _ => None,
            })
            .collect();
        value_set.sort_unstable();
        value_set.dedup();
        if !value_set.is_empty() {
            *group_sizes.entry(value_set).or_insert(0) += 1;
        }
    }

    let m: u64 = group_sizes.values().sum();
    if m == 0 {
        return Ok(0.0);
    }
    let m = m as f64;
    Ok(group_sizes
        .values()
        .map(|&n| {
            let n = n as f64;
            (n / m) * (m / n).log10()
        })
        .sum())
}

/// Table score: key score times the sum of the non-key scores. A table
/// must have at least one non-key attribute.
pub fn score_table(key_score: f64, nonkey_scores: &[f64]) -> Result<f64, ScoreError> {
    if nonkey_scores.is_empty() {
        return Err(ScoreError::EmptyNonKeys);
    }
    Ok(key_score * nonkey_scores.iter().sum::<f64>())
}

/// Preview score: the sum of its tables' scores.
pub fn score_preview(table_scores: &[f64]) -> f64 {
    table_scores.iter().sum()
}

/// A candidate non-key attribute together with its score under the
/// selected measure.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScoredCandidate {
    pub candidate: AttributeCandidate,
    pub score: f64,
}

/// A schema graph with every key and non-key score precomputed, candidate
/// lists sorted, and the distance index built: everything the discovery
/// solvers read. Immutable once built.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ScoredSchema {
    schema: SchemaGraph,
    distance: DistanceIndex,
    key_measure: KeyMeasure,
    nonkey_measure: NonKeyMeasure,
    key_scores: Vec<f64>,
    /// Per type: candidates sorted by score descending, ties by
    /// (relationship id ascending, outgoing first).
    candidates: Vec<Vec<ScoredCandidate>>,
    /// Per type: prefix_sums[m] = sum of the first m candidate scores.
    prefix_sums: Vec<Vec<f64>>,
    /// Per type: gains[i] = key score * candidates[i].score, the marginal
    /// contribution of the i-th candidate to a preview's score.
    gains: Vec<Vec<f64>>,
}

fn candidate_sort_key(c: &ScoredCandidate) -> (u32, u32) {
    let dir = match c.candidate.direction {
        Direction::Outgoing => 0,
        Direction::Incoming => 1,
    };
    (c.candidate.edge_type.index() as u32, dir)
}

impl ScoredSchema {
    /// Scores a schema under the selected measures. The entity graph must
    /// be the one the schema was derived from.
    pub fn build(
        g: &EntityGraph,
        s: &SchemaGraph,
        key_measure: KeyMeasure,
        nonkey_measure: NonKeyMeasure,
        cfg: &RandomWalkConfig,
    ) -> Result<Self, ScoreError> {
        let key_scores = match key_measure {
            KeyMeasure::Coverage => s.types().map(|t| s.entity_count(t) as f64).collect(),
            KeyMeasure::RandomWalk => score_keys_random_walk(s, cfg)?,
        };

        let mut candidates = Vec::with_capacity(s.type_count());
        for t in s.types() {
            let mut list: Vec<ScoredCandidate> = s
                .incident_candidates(t)
                .into_iter()
                .map(|candidate| {
                    let score = match nonkey_measure {
                        NonKeyMeasure::Coverage => {
                            score_nonkey_coverage(g, s, candidate).map(|v| v as f64)
                        }
                        NonKeyMeasure::Entropy => score_nonkey_entropy(g, s, candidate),
                    }?;
                    Ok(ScoredCandidate { candidate, score })
                })
                .collect::<Result<_, ScoreError>>()?;
            // Stable sort on descending score keeps the (rel id, outgoing
            // first) base order for ties.
            list.sort_by(|a, b| b.score.total_cmp(&a.score));
            candidates.push(list);
        }

        Self::assemble(
            s.clone(),
            s.all_pairs_distance(),
            key_measure,
            nonkey_measure,
            key_scores,
            candidates,
        )
    }

    /// Builds a scored schema from externally computed scores, for custom
    /// measures or synthetic experiments. Candidate lists must cover
    /// exactly the incident candidates of each type; they are re-sorted
    /// canonically.
    pub fn from_parts(
        schema: SchemaGraph,
        key_measure: KeyMeasure,
        nonkey_measure: NonKeyMeasure,
        key_scores: Vec<f64>,
        mut candidates: Vec<Vec<ScoredCandidate>>,
    ) -> Result<Self, ScoreError> {
        if key_scores.len() != schema.type_count() || candidates.len() != schema.type_count() {
            return Err(ScoreError::InvalidParts(
                "scores must cover every schema type".into(),
            ));
        }
        if let Some(bad) = key_scores
            .iter()
            .chain(candidates.iter().flatten().map(|c| &c.score))
            .find(|v| !v.is_finite() || **v < 0.0)
        {
            return Err(ScoreError::InvalidParts(format!(
                "scores must be finite and nonnegative, got {bad}"
            )));
        }
        for (t, list) in candidates.iter_mut().enumerate() {
            list.sort_by(|a, b| {
                b.score
                    .total_cmp(&a.score)
                    .then_with(|| candidate_sort_key(a).cmp(&candidate_sort_key(b)))
            });
            let mut expected = schema.incident_candidates(TypeRef(t as u32));
            expected.sort_unstable();
            let mut got: Vec<AttributeCandidate> = list.iter().map(|c| c.candidate).collect();
            got.sort_unstable();
            if got != expected {
                return Err(ScoreError::InvalidParts(format!(
                    "candidate list of `{}` is not a permutation of its incident candidates",
                    schema.type_id(TypeRef(t as u32))
                )));
            }
        }
        let distance = schema.all_pairs_distance();
        Self::assemble(
            schema,
            distance,
            key_measure,
            nonkey_measure,
            key_scores,
            candidates,
        )
    }

    fn assemble(
        schema: SchemaGraph,
        distance: DistanceIndex,
        key_measure: KeyMeasure,
        nonkey_measure: NonKeyMeasure,
        key_scores: Vec<f64>,
        candidates: Vec<Vec<ScoredCandidate>>,
    ) -> Result<Self, ScoreError> {
        let prefix_sums = candidates
            .iter()
            .map(|list| {
                let mut sums = Vec::with_capacity(list.len() + 1);
                let mut acc = 0.0;
                sums.push(acc);
                for c in list {
                    acc += c.score;
                    sums.push(acc);
                }
                sums
            })
            .collect();
        let gains = candidates
            .iter()
            .zip(&key_scores)
            .map(|(list, &key)| list.iter().map(|c| key * c.score).collect())
            .collect();
        Ok(Self {
            schema,
            distance,
            key_measure,
            nonkey_measure,
            key_scores,
            candidates,
            prefix_sums,
            gains,
        })
    }

    pub fn schema(&self) -> &SchemaGraph {
        &self.schema
    }

    pub fn distance(&self) -> &DistanceIndex {
        &self.distance
    }

    pub fn key_measure(&self) -> KeyMeasure {
        self.key_measure
    }

    pub fn nonkey_measure(&self) -> NonKeyMeasure {
        self.nonkey_measure
    }

    pub fn type_count(&self) -> usize {
        self.schema.type_count()
    }

    pub fn key_score(&self, t: TypeRef) -> f64 {
        self.key_scores[t.index()]
    }

    /// The type's candidates, best first.
    pub fn candidates(&self, t: TypeRef) -> &[ScoredCandidate] {
        &self.candidates[t.index()]
    }

    /// Score of the candidate under the non-key measure, if it belongs to
    /// the key type's incident list.
    pub fn nonkey_score(&self, c: AttributeCandidate) -> Option<f64> {
        self.candidates[c.key_type.index()]
            .iter()
            .find(|sc| sc.candidate == c)
            .map(|sc| sc.score)
    }

    /// Score of the table holding the type's top `m` candidates.
    pub fn table_score(&self, t: TypeRef, m: usize) -> f64 {
        self.key_scores[t.index()] * self.prefix_sums[t.index()][m]
    }

    /// Marginal gain of the type's `i`-th candidate: key score times the
    /// candidate score. Non-increasing in `i`.
    pub fn gain(&self, t: TypeRef, i: usize) -> f64 {
        self.gains[t.index()][i]
    }
}

#[cfg(test)]
mod tests;
