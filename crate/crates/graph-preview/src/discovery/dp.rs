//! Dynamic programming for concise (size-only) preview discovery.
//!
//! Types are processed in id order. `best[k'][n']` is the score of an
//! optimal preview with `k'` tables and at most `n'` non-key attributes
//! among the types seen so far; processing type `x` either skips it or
//! joins a smaller preview with the table holding the type's top `m`
//! candidates:
//!
//! ```text
//! best(k', n', x) = max( best(k', n', x-1),
//!                        max over m in 1..=min(n'-(k'-1), |candidates(x)|)
//!                            of best(k'-1, n'-m, x-1) + table_score(x, m) )
//! ```
//!
//! with `best(0, _, _) = 0` and unreachable states at minus infinity.
//! The distance-constrained spaces have no such substructure (removing a
//! type changes which other types are jointly admissible), so this solver
//! is limited to concise previews.

use crate::graph::TypeRef;
use crate::scoring::ScoredSchema;

use super::{build_preview, Constraints, DiscoveryError, Preview};

/// Optimal concise preview with `k` tables and at most `n` non-key
/// attributes. Same score as [`super::brute_force`] on the same inputs.
pub fn dp_concise(scored: &ScoredSchema, k: usize, n: usize) -> Result<Preview, DiscoveryError> {
    // Reuse the constraint validation (k >= 1, n >= k).
    let _ = Constraints::concise(k, n)?;
    let total = scored.type_count();
    if k > total {
        return Err(DiscoveryError::NotEnoughTypes {
            requested: k,
            available: total,
        });
    }

    let mut best = vec![vec![f64::NEG_INFINITY; n + 1]; k + 1];
    for slot in &mut best[0] {
        *slot = 0.0;
    }
    // choice[x][k'][n'] = number of candidates taken from type x-1 at this
    // state, 0 when the type is skipped.
    let mut choice = vec![vec![vec![0u32; n + 1]; k + 1]; total + 1];

    for (x, layer) in choice.iter_mut().enumerate().skip(1) {
        let t = TypeRef((x - 1) as u32);
        let available = scored.candidates(t).len();
        if available == 0 {
            continue; // can only be skipped
        }
        // Descending k' so that row k'-1 is still the previous type's.
        for kp in (1..=k).rev() {
            for np in kp..=n {
                let m_max = (np - (kp - 1)).min(available);
                let mut cell = best[kp][np];
                let mut taken = 0u32;
                for m in 1..=m_max {
                    let prev = best[kp - 1][np - m];
                    if prev == f64::NEG_INFINITY {
                        continue;
                    }
                    let candidate = prev + scored.table_score(t, m);
                    if candidate > cell {
                        cell = candidate;
                        taken = m as u32;
                    }
                }
                if taken > 0 {
                    best[kp][np] = cell;
                    layer[kp][np] = taken;
                }
            }
        }
    }

    if best[k][n] == f64::NEG_INFINITY {
        return Err(DiscoveryError::NoFeasiblePreview);
    }

    let mut allocation: Vec<(u32, usize)> = Vec::with_capacity(k);
    let (mut kp, mut np) = (k, n);
    for x in (1..=total).rev() {
        if kp == 0 {
            break;
        }
        let m = choice[x][kp][np];
        if m > 0 {
            allocation.push(((x - 1) as u32, m as usize));
            kp -= 1;
            np -= m as usize;
        }
    }
    debug_assert_eq!(kp, 0);
    allocation.reverse();
    Ok(build_preview(scored, allocation.into_iter()))
}
