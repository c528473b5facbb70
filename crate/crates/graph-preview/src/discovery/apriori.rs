//! Level-wise discovery for tight and diverse previews.
//!
//! The distance constraint is pairwise, so the feasible k-subsets are
//! exactly the k-cliques of the compatibility graph whose edges are the
//! type pairs satisfying the constraint. Those cliques are built level by
//! level, in the style of frequent-itemset candidate generation: two
//! (i-1)-subsets that agree on their first i-2 elements and differ in the
//! last merge into an i-subset, admitted iff the one previously unchecked
//! pair — the two last elements — satisfies the constraint. Pairwise
//! admissibility is closed under this prefix join, so no further pruning
//! pass is needed.

use crate::graph::{DistanceIndex, TypeRef};
use crate::scoring::ScoredSchema;

use super::{
    AllocationRanking, Constraints, DiscoveryError, Preview, SpaceConstraint, SubsetEvaluator,
};

/// Which side of the distance bound a pair must fall on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DistanceMode {
    /// Pairwise distance at most `d`.
    Tight,
    /// Pairwise distance at least `d`; unreachable pairs qualify.
    Diverse,
}

impl DistanceMode {
    fn admits(self, dist: &DistanceIndex, a: TypeRef, b: TypeRef, d: u32) -> bool {
        match self {
            DistanceMode::Tight => dist.within(a, b, d),
            DistanceMode::Diverse => dist.at_least(a, b, d),
        }
    }
}

/// All k-subsets of `types` in which every pair satisfies the distance
/// constraint, as positions ascending in the given order. The result is
/// sorted lexicographically.
pub fn enumerate_feasible_subsets(
    dist: &DistanceIndex,
    types: &[TypeRef],
    k: usize,
    d: u32,
    mode: DistanceMode,
) -> Vec<Vec<TypeRef>> {
    enumerate_positions(dist, types, k, d, mode)
        .into_iter()
        .map(|subset| subset.into_iter().map(|i| types[i as usize]).collect())
        .collect()
}

fn enumerate_positions(
    dist: &DistanceIndex,
    types: &[TypeRef],
    k: usize,
    d: u32,
    mode: DistanceMode,
) -> Vec<Vec<u32>> {
    if k == 0 || types.len() < k {
        return Vec::new();
    }
    let mut level: Vec<Vec<u32>> = (0..types.len() as u32).map(|i| vec![i]).collect();
    for size in 2..=k {
        let mut next: Vec<Vec<u32>> = Vec::new();
        let prefix_len = size - 2;
        let mut run_start = 0;
        while run_start < level.len() {
            let mut run_end = run_start + 1;
            while run_end < level.len()
                && level[run_end][..prefix_len] == level[run_start][..prefix_len]
            {
                run_end += 1;
            }
            for a in run_start..run_end {
                for b in a + 1..run_end {
                    let last_a = *level[a].last().unwrap();
                    let last_b = *level[b].last().unwrap();
                    if mode.admits(dist, types[last_a as usize], types[last_b as usize], d) {
                        let mut subset = level[a].clone();
                        subset.push(last_b);
                        next.push(subset);
                    }
                }
            }
            run_start = run_end;
        }
        level = next;
        if level.is_empty() {
            break;
        }
    }
    level
}

/// Optimal tight/diverse preview: allocates the non-key budget for every
/// distance-feasible k-subset and keeps a maximum, with the same
/// tie-breaking as [`super::brute_force`].
pub fn apriori_discover(
    scored: &ScoredSchema,
    c: &Constraints,
) -> Result<Preview, DiscoveryError> {
    let (d, mode) = match c.space() {
        SpaceConstraint::Tight { d } => (d, DistanceMode::Tight),
        SpaceConstraint::Diverse { d } => (d, DistanceMode::Diverse),
        SpaceConstraint::Concise => {
            return Err(DiscoveryError::AlgorithmModeMismatch {
                algorithm: "apriori",
                mode: "concise",
            })
        }
    };
    let total = scored.type_count();
    if c.k() > total {
        return Err(DiscoveryError::NotEnoughTypes {
            requested: c.k(),
            available: total,
        });
    }

    let types: Vec<TypeRef> = scored.schema().types().collect();
    let subsets = enumerate_positions(scored.distance(), &types, c.k(), d, mode);

    let mut evaluator = SubsetEvaluator::new(scored, AllocationRanking::MarginalGain);
    let mut best_score = f64::NEG_INFINITY;
    let mut best: Option<Vec<u32>> = None;
    for subset in &subsets {
        // Positions coincide with type indices because `types` is the
        // full id-ordered list.
        if let Some(score) = evaluator.allocate(subset, c.n()) {
            let better = score > best_score
                || (score == best_score
                    && best.as_deref().is_some_and(|b| &subset[..] < b));
            if better {
                best_score = score;
                best = Some(subset.clone());
            }
        }
    }

    match best {
        Some(subset) => Ok(super::compute_preview_for_subset(
            scored,
            &subset.iter().map(|&t| TypeRef(t)).collect::<Vec<_>>(),
            c.n(),
        )
        .expect("winning subset is feasible")),
        None => Err(DiscoveryError::NoFeasiblePreview),
    }
}
