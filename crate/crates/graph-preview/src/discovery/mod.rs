//! Exact solvers for the optimal preview discovery problem.
//!
//! A preview is a set of tables with pairwise-distinct key attributes;
//! its score is the sum of the table scores. Given a size budget `(k, n)`
//! — exactly `k` tables, at most `n` non-key attributes in total — and an
//! optional pairwise distance constraint between key attributes, the
//! solvers return a preview of maximum score:
//!
//! * [`brute_force`] enumerates every k-subset of entity types and works
//!   in all three preview spaces. It is the reference the other solvers
//!   are checked against.
//! * [`dp_concise`] solves the size-only (concise) problem by dynamic
//!   programming over a fixed type order.
//! * [`apriori_discover`] handles tight and diverse previews by first
//!   building all distance-feasible k-subsets level by level, joining
//!   (k-1)-subsets that share a prefix, then scoring each survivor.
//!
//! In an optimal preview, a table with `m` non-key attributes always
//! holds the top-`m` candidates of its key type, so a table is fully
//! described by its key type and a count; all solvers search over subset
//! plus per-table counts only.
//!
//! Ties are broken deterministically everywhere: highest score first,
//! then the lexicographically smallest sorted key-type sequence, then
//! candidate order (relationship id ascending, outgoing before incoming).

mod apriori;
mod brute;
mod dp;

pub use apriori::{apriori_discover, enumerate_feasible_subsets, DistanceMode};
pub use brute::{brute_force, brute_force_co_optima};
pub use dp::dp_concise;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::TypeRef;
use crate::scoring::{ScoredCandidate, ScoredSchema};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DiscoveryError {
    #[error("a preview needs at least one table (k = 0)")]
    ZeroTables,
    #[error("budget must allow at least one non-key attribute per table (k = {k}, n = {n})")]
    BudgetTooSmall { k: usize, n: usize },
    #[error("distance bound d must be at least 1")]
    InvalidDistanceBound,
    #[error("requested {requested} tables but the schema has only {available} entity types")]
    NotEnoughTypes { requested: usize, available: usize },
    #[error("entity type `{0}` has no candidate non-key attributes")]
    NoCandidates(String),
    #[error("no preview satisfies the constraints")]
    NoFeasiblePreview,
    #[error("invalid subset: {0}")]
    InvalidSubset(String),
    #[error("the {algorithm} algorithm does not support {mode} previews")]
    AlgorithmModeMismatch {
        algorithm: &'static str,
        mode: &'static str,
    },
}

/// The preview space being searched: size-only, or size plus a maximum
/// (tight) or minimum (diverse) pairwise key distance.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SpaceConstraint {
    Concise,
    Tight { d: u32 },
    Diverse { d: u32 },
}

impl SpaceConstraint {
    pub fn mode_str(self) -> &'static str {
        match self {
            SpaceConstraint::Concise => "concise",
            SpaceConstraint::Tight { .. } => "tight",
            SpaceConstraint::Diverse { .. } => "diverse",
        }
    }

    pub fn d(self) -> Option<u32> {
        match self {
            SpaceConstraint::Concise => None,
            SpaceConstraint::Tight { d } | SpaceConstraint::Diverse { d } => Some(d),
        }
    }
}

/// Validated discovery constraints: `k` tables, at most `n` non-key
/// attributes in total (`n >= k`, every table needs at least one), and
/// the preview space.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Constraints {
    k: usize,
    n: usize,
    space: SpaceConstraint,
}

impl Constraints {
    pub fn new(k: usize, n: usize, space: SpaceConstraint) -> Result<Self, DiscoveryError> {
        if k == 0 {
            return Err(DiscoveryError::ZeroTables);
        }
        if n < k {
            return Err(DiscoveryError::BudgetTooSmall { k, n });
        }
        if matches!(space, SpaceConstraint::Tight { d: 0 } | SpaceConstraint::Diverse { d: 0 }) {
            return Err(DiscoveryError::InvalidDistanceBound);
        }
        Ok(Self { k, n, space })
    }

    pub fn concise(k: usize, n: usize) -> Result<Self, DiscoveryError> {
        Self::new(k, n, SpaceConstraint::Concise)
    }

    pub fn tight(k: usize, n: usize, d: u32) -> Result<Self, DiscoveryError> {
        Self::new(k, n, SpaceConstraint::Tight { d })
    }

    pub fn diverse(k: usize, n: usize, d: u32) -> Result<Self, DiscoveryError> {
        Self::new(k, n, SpaceConstraint::Diverse { d })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn space(&self) -> SpaceConstraint {
        self.space
    }
}

/// One preview table: a key type and the top `nonkeys.len()` candidates
/// of that type. `score` is the key score times the sum of the non-key
/// scores.
#[derive(Clone, Debug, PartialEq)]
pub struct PreviewTable {
    pub key: TypeRef,
    pub nonkeys: Vec<ScoredCandidate>,
    pub score: f64,
}

/// A set of preview tables with pairwise-distinct keys, sorted by key
/// type. `total_score` is the sum of the table scores.
#[derive(Clone, Debug, PartialEq)]
pub struct Preview {
    pub tables: Vec<PreviewTable>,
    pub total_score: f64,
}

impl Preview {
    pub fn key_types(&self) -> Vec<TypeRef> {
        self.tables.iter().map(|t| t.key).collect()
    }

    pub fn nonkey_count(&self) -> usize {
        self.tables.iter().map(|t| t.nonkeys.len()).sum()
    }
}

/// How the greedy allocator ranks the candidates competing for the
/// remaining budget slots.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AllocationRanking {
    /// By marginal preview-score gain, key score x candidate score. This
    /// is what makes the per-subset allocation optimal: a candidate's
    /// contribution to the preview score depends on its table's key.
    MarginalGain,
    /// By raw candidate score, ignoring the key scores. Provided for
    /// comparison; suboptimal whenever key scores differ.
    RawScore,
}

/// Algorithm selector for [`discover`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Algorithm {
    /// Dynamic programming for concise previews, Apriori otherwise.
    Auto,
    BruteForce,
    DynamicProgramming,
    Apriori,
}

/// Runs the requested solver, checking it supports the constraint mode.
pub fn discover(
    scored: &ScoredSchema,
    c: &Constraints,
    algorithm: Algorithm,
) -> Result<Preview, DiscoveryError> {
    let concise = matches!(c.space(), SpaceConstraint::Concise);
    match algorithm {
        Algorithm::Auto => {
            if concise {
                dp_concise(scored, c.k(), c.n())
            } else {
                apriori_discover(scored, c)
            }
        }
        Algorithm::BruteForce => brute_force(scored, c),
        Algorithm::DynamicProgramming => {
            if concise {
                dp_concise(scored, c.k(), c.n())
            } else {
                Err(DiscoveryError::AlgorithmModeMismatch {
                    algorithm: "dynamic-programming",
                    mode: c.space().mode_str(),
                })
            }
        }
        Algorithm::Apriori => {
            if concise {
                Err(DiscoveryError::AlgorithmModeMismatch {
                    algorithm: "apriori",
                    mode: "concise",
                })
            } else {
                apriori_discover(scored, c)
            }
        }
    }
}

/// The best preview whose tables are exactly the given entity types.
///
/// Each table gets its type's top candidate; the remaining `n - k` slots
/// go to the highest marginal gains across all tables, which is a merge
/// of the per-type sorted candidate lists. Types with fewer candidates
/// than the merge would like simply stop contributing (conceptually the
/// lists are padded with zero-score pseudo attributes, which are never
/// emitted).
pub fn compute_preview_for_subset(
    scored: &ScoredSchema,
    subset: &[TypeRef],
    n: usize,
) -> Result<Preview, DiscoveryError> {
    compute_preview_for_subset_with(scored, subset, n, AllocationRanking::MarginalGain)
}

/// [`compute_preview_for_subset`] with an explicit allocation ranking.
pub fn compute_preview_for_subset_with(
    scored: &ScoredSchema,
    subset: &[TypeRef],
    n: usize,
    ranking: AllocationRanking,
) -> Result<Preview, DiscoveryError> {
    if subset.is_empty() {
        return Err(DiscoveryError::ZeroTables);
    }
    if n < subset.len() {
        return Err(DiscoveryError::BudgetTooSmall {
            k: subset.len(),
            n,
        });
    }
    let mut indices: Vec<u32> = Vec::with_capacity(subset.len());
    for &t in subset {
        if t.index() >= scored.type_count() {
            return Err(DiscoveryError::InvalidSubset(format!(
                "type reference {} is out of range",
                t.index()
            )));
        }
        indices.push(t.index() as u32);
    }
    indices.sort_unstable();
    if indices.windows(2).any(|w| w[0] == w[1]) {
        return Err(DiscoveryError::InvalidSubset(
            "key types must be distinct".into(),
        ));
    }
    for &t in &indices {
        if scored.candidates(TypeRef(t)).is_empty() {
            return Err(DiscoveryError::NoCandidates(
                scored.schema().type_id(TypeRef(t)).to_string(),
            ));
        }
    }
    let mut evaluator = SubsetEvaluator::new(scored, ranking);
    evaluator
        .allocate(&indices, n)
        .expect("subset was validated");
    Ok(evaluator.build_preview(&indices))
}

/// Scratch-reusing allocator shared by all solvers: given a subset of
/// type indices it computes the per-table candidate counts of the optimal
/// allocation and the resulting preview score.
pub(crate) struct SubsetEvaluator<'a> {
    scored: &'a ScoredSchema,
    ranking: AllocationRanking,
    /// Per subset position, the number of candidates taken (the table's
    /// `m`). Valid after `allocate`.
    taken: Vec<usize>,
}

impl<'a> SubsetEvaluator<'a> {
    pub(crate) fn new(scored: &'a ScoredSchema, ranking: AllocationRanking) -> Self {
        Self {
            scored,
            ranking,
            taken: Vec::new(),
        }
    }

    /// Computes the optimal allocation for the subset (ascending type
    /// indices) and returns its preview score. `None` if some type has no
    /// candidates.
    pub(crate) fn allocate(&mut self, subset: &[u32], n: usize) -> Option<f64> {
        let k = subset.len();
        debug_assert!(n >= k);
        self.taken.clear();
        for &t in subset {
            if self.scored.candidates(TypeRef(t)).is_empty() {
                return None;
            }
            self.taken.push(1);
        }

        for _ in 0..(n - k) {
            let mut best: Option<(f64, usize)> = None;
            for (pos, &t) in subset.iter().enumerate() {
                let t = TypeRef(t);
                let i = self.taken[pos];
                let list = self.scored.candidates(t);
                if i >= list.len() {
                    continue;
                }
                let value = match self.ranking {
                    AllocationRanking::MarginalGain => self.scored.gain(t, i),
                    AllocationRanking::RawScore => list[i].score,
                };
                let better = match best {
                    None => true,
                    Some((best_value, best_pos)) => {
                        value > best_value
                            || (value == best_value
                                && self.tie_key(subset, pos) < self.tie_key(subset, best_pos))
                    }
                };
                if better {
                    best = Some((value, pos));
                }
            }
            match best {
                Some((_, pos)) => self.taken[pos] += 1,
                None => break, // every list exhausted; zero-score padding is never emitted
            }
        }
        Some(self.score(subset))
    }

    /// Tie-break key of the candidate a subset position would take next:
    /// relationship id ascending, outgoing before incoming, then key type.
    fn tie_key(&self, subset: &[u32], pos: usize) -> (u32, u8, u32) {
        let t = TypeRef(subset[pos]);
        let c = self.scored.candidates(t)[self.taken[pos]].candidate;
        let dir = match c.direction {
            crate::graph::Direction::Outgoing => 0,
            crate::graph::Direction::Incoming => 1,
        };
        (c.edge_type.index() as u32, dir, subset[pos])
    }

    /// Preview score of the current allocation, accumulated over the
    /// subset in ascending type order. Every solver and the preview
    /// constructor reproduce this exact fold, so scores compare equal
    /// across code paths.
    fn score(&self, subset: &[u32]) -> f64 {
        let mut total = 0.0;
        for (pos, &t) in subset.iter().enumerate() {
            total += self.scored.table_score(TypeRef(t), self.taken[pos]);
        }
        total
    }

    pub(crate) fn build_preview(&self, subset: &[u32]) -> Preview {
        build_preview(
            self.scored,
            subset.iter().zip(&self.taken).map(|(&t, &m)| (t, m)),
        )
    }
}

/// Builds a preview from (type index, candidate count) pairs in ascending
/// type order.
pub(crate) fn build_preview(
    scored: &ScoredSchema,
    allocation: impl Iterator<Item = (u32, usize)>,
) -> Preview {
    let mut tables = Vec::new();
    let mut total = 0.0;
    for (t, m) in allocation {
        let t = TypeRef(t);
        let score = scored.table_score(t, m);
        total += score;
        tables.push(PreviewTable {
            key: t,
            nonkeys: scored.candidates(t)[..m].to_vec(),
            score,
        });
    }
    Preview {
        tables,
        total_score: total,
    }
}
