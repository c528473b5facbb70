//! Stationary distribution of a weighted random walk over the schema
//! graph, computed by power iteration.

use crate::graph::SchemaGraph;

use super::{RandomWalkConfig, ScoreError};

/// Row-stochastic transition matrix of the walk before the teleport
/// perturbation: `M[i][j]` is the weight between types `i` and `j` divided
/// by the total weight incident on `i`. Rows of isolated types are all
/// zero at this stage.
pub fn transition_matrix(s: &SchemaGraph) -> Vec<Vec<f64>> {
    let k = s.type_count();
    let mut m = vec![vec![0.0; k]; k];
    for &(a, b, w) in &s.weights {
        m[a.index()][b.index()] += w as f64;
        if a != b {
            m[b.index()][a.index()] += w as f64;
        }
    }
    for row in &mut m {
        let total: f64 = row.iter().sum();
        if total > 0.0 {
            for v in row.iter_mut() {
                *v /= total;
            }
        }
    }
    m
}

/// The matrix actually iterated: the teleport probability is added to
/// every off-diagonal entry and each row is renormalized. Rows of isolated
/// types thereby become uniform over the other types. A single-type
/// schema degenerates to `[[1.0]]`.
pub fn perturbed_transition_matrix(
    s: &SchemaGraph,
    cfg: &RandomWalkConfig,
) -> Result<Vec<Vec<f64>>, ScoreError> {
    let k = s.type_count();
    if cfg.tolerance <= 0.0 {
        return Err(ScoreError::InvalidConfig("tolerance must be positive".into()));
    }
    if cfg.max_iterations == 0 {
        return Err(ScoreError::InvalidConfig(
            "max_iterations must be positive".into(),
        ));
    }
    if k <= 1 {
        return Ok(vec![vec![1.0; k.min(1)]; k]);
    }
    if cfg.teleport <= 0.0 || cfg.teleport >= 1.0 / (k as f64 - 1.0) {
        return Err(ScoreError::InvalidConfig(format!(
            "teleport must lie in (0, 1/(K-1)) = (0, {:.3e}) for K = {k} types",
            1.0 / (k as f64 - 1.0)
        )));
    }

    let mut m = transition_matrix(s);
    for (i, row) in m.iter_mut().enumerate() {
        for (j, v) in row.iter_mut().enumerate() {
            if i != j {
                *v += cfg.teleport;
            }
        }
        let total: f64 = row.iter().sum();
        for v in row.iter_mut() {
            *v /= total;
        }
    }
    Ok(m)
}

/// Stationary probabilities of the perturbed walk, indexed like the
/// schema's types. Starts from the uniform vector and iterates until the
/// L1 residual of the stationary equation drops below the tolerance; the
/// returned vector is the one whose residual was verified.
pub fn score_keys_random_walk(
    s: &SchemaGraph,
    cfg: &RandomWalkConfig,
) -> Result<Vec<f64>, ScoreError> {
    let k = s.type_count();
    if k == 0 {
        return Ok(Vec::new());
    }
    if k == 1 {
        return Ok(vec![1.0]);
    }
    let m = perturbed_transition_matrix(s, cfg)?;

    let mut pi = vec![1.0 / k as f64; k];
    let mut next = vec![0.0; k];
    let mut residual = f64::INFINITY;
    for _ in 0..cfg.max_iterations {
        next.iter_mut().for_each(|v| *v = 0.0);
        for (i, &p) in pi.iter().enumerate() {
            for (j, &mij) in m[i].iter().enumerate() {
                next[j] += p * mij;
            }
        }
        residual = pi.iter().zip(&next).map(|(a, b)| (a - b).abs()).sum();
        if residual <= cfg.tolerance {
            return Ok(pi);
        }
        let total: f64 = next.iter().sum();
        for (dst, &src) in pi.iter_mut().zip(&next) {
            *dst = src / total;
        }
    }
    Err(ScoreError::NonConvergence {
        iterations: cfg.max_iterations,
        residual,
    })
}
