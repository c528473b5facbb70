//! Exhaustive optimal preview discovery.

use crate::graph::TypeRef;
use crate::scoring::ScoredSchema;

use super::{
    AllocationRanking, Constraints, DiscoveryError, Preview, SpaceConstraint, SubsetEvaluator,
};

/// Advances `idx` to the next k-combination of `0..total` in
/// lexicographic order, returning the lowest position that changed, or
/// `None` when exhausted.
fn next_combination(idx: &mut [u32], total: u32) -> Option<usize> {
    let k = idx.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if idx[i] < total - (k - i) as u32 {
            idx[i] += 1;
            for j in i + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
            return Some(i);
        }
    }
    None
}

fn satisfies_distance(scored: &ScoredSchema, subset: &[u32], space: SpaceConstraint) -> bool {
    let dist = scored.distance();
    match space {
        SpaceConstraint::Concise => true,
        SpaceConstraint::Tight { d } => subset.iter().enumerate().all(|(i, &a)| {
            subset[i + 1..]
                .iter()
                .all(|&b| dist.within(TypeRef(a), TypeRef(b), d))
        }),
        SpaceConstraint::Diverse { d } => subset.iter().enumerate().all(|(i, &a)| {
            subset[i + 1..]
                .iter()
                .all(|&b| dist.at_least(TypeRef(a), TypeRef(b), d))
        }),
    }
}

struct BestTracker {
    score: f64,
    subset: Vec<u32>,
}

impl BestTracker {
    fn new() -> Self {
        Self {
            score: f64::NEG_INFINITY,
            subset: Vec::new(),
        }
    }

    /// Highest score wins; ties go to the lexicographically smallest
    /// sorted key sequence.
    fn offer(&mut self, score: f64, subset: &[u32]) {
        if score > self.score
            || (score == self.score && !self.subset.is_empty() && subset < &self.subset[..])
        {
            self.score = score;
            self.subset.clear();
            self.subset.extend_from_slice(subset);
        }
    }
}

/// Enumerates every k-subset of entity types (filtered by the pairwise
/// distance constraint in tight/diverse mode), allocates the non-key
/// budget optimally for each, and returns a maximum-score preview.
///
/// A subset is only allocated in full when a cheap upper bound — the sum
/// over its types of the best table score each type could reach alone —
/// beats the best score found so far; subsets the bound rules out cannot
/// change the result. The enumeration itself is always exhaustive.
pub fn brute_force(scored: &ScoredSchema, c: &Constraints) -> Result<Preview, DiscoveryError> {
    let survivors = run(scored, c, false)?;
    let best = survivors.into_iter().next().expect("run returns >= 1 subset");
    Ok(super::compute_preview_for_subset(
        scored,
        &best.iter().map(|&t| TypeRef(t)).collect::<Vec<_>>(),
        c.n(),
    )
    .expect("winning subset is feasible"))
}

/// All co-optimal previews, canonical representative first, then by key
/// sequence. Intended for inspecting ties; the search cost matches
/// [`brute_force`] but every tied subset is kept.
pub fn brute_force_co_optima(
    scored: &ScoredSchema,
    c: &Constraints,
) -> Result<Vec<Preview>, DiscoveryError> {
    let survivors = run(scored, c, true)?;
    Ok(survivors
        .into_iter()
        .map(|subset| {
            super::compute_preview_for_subset(
                scored,
                &subset.iter().map(|&t| TypeRef(t)).collect::<Vec<_>>(),
                c.n(),
            )
            .expect("co-optimal subset is feasible")
        })
        .collect())
}

fn run(
    scored: &ScoredSchema,
    c: &Constraints,
    keep_ties: bool,
) -> Result<Vec<Vec<u32>>, DiscoveryError> {
    let total = scored.type_count();
    let k = c.k();
    if k > total {
        return Err(DiscoveryError::NotEnoughTypes {
            requested: k,
            available: total,
        });
    }

    // Most budget a single table can absorb: its top candidate plus the
    // whole remaining slack.
    let per_table_cap = c.n() - k + 1;
    let caps: Vec<f64> = (0..total)
        .map(|t| {
            let t = TypeRef(t as u32);
            let m = scored.candidates(t).len().min(per_table_cap);
            scored.table_score(t, m)
        })
        .collect();

    let mut evaluator = SubsetEvaluator::new(scored, AllocationRanking::MarginalGain);
    let mut best = BestTracker::new();
    let mut ties: Vec<Vec<u32>> = Vec::new();
    let mut idx: Vec<u32> = (0..k as u32).collect();
    // bound[i] = sum of caps over the first i subset members.
    let mut bound = vec![0.0; k + 1];
    let mut refresh_from = 0usize;
    loop {
        for i in refresh_from..k {
            bound[i + 1] = bound[i] + caps[idx[i] as usize];
        }
        let upper = bound[k];
        let worth_evaluating = if keep_ties {
            upper >= best.score
        } else {
            upper > best.score || best.subset.is_empty()
        };
        if worth_evaluating && satisfies_distance(scored, &idx, c.space()) {
            if let Some(score) = evaluator.allocate(&idx, c.n()) {
                if keep_ties {
                    if score > best.score {
                        ties.clear();
                        ties.push(idx.clone());
                    } else if score == best.score {
                        ties.push(idx.clone());
                    }
                }
                best.offer(score, &idx);
            }
        }
        match next_combination(&mut idx, total as u32) {
            Some(changed) => refresh_from = changed,
            None => break,
        }
    }

    if best.subset.is_empty() {
        return Err(DiscoveryError::NoFeasiblePreview);
    }
    if keep_ties {
        ties.sort();
        debug_assert_eq!(ties[0], best.subset);
        Ok(ties)
    } else {
        Ok(vec![best.subset])
    }
}
