//! Ranking-evaluation metrics: precision at K, mean reciprocal rank, and
//! the Pearson correlation coefficient. These are generic utilities for
//! comparing attribute rankings against a gold standard.

use std::collections::HashSet;
use std::hash::Hash;

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum EvalError {
    #[error("inputs must have equal length ({0} vs {1})")]
    LengthMismatch(usize, usize),
    #[error("correlation needs at least two paired observations")]
    TooFewObservations,
    #[error("correlation is undefined when {0} has zero variance")]
    ZeroVariance(&'static str),
}

/// Fraction of the top `k` ranked items that belong to the gold set.
/// `k` must be at least 1; a ranking shorter than `k` is padded by
/// nothing, so the denominator stays `k`.
pub fn precision_at_k<T: Eq + Hash>(ranked: &[T], gold: &HashSet<T>, k: usize) -> f64 {
    assert!(k >= 1, "precision_at_k requires k >= 1");
    let hits = ranked.iter().take(k).filter(|item| gold.contains(item)).count();
    hits as f64 / k as f64
}

/// Multiplicative inverse of the rank of the first gold item, 0 when the
/// ranking contains no gold item.
pub fn reciprocal_rank<T: Eq + Hash>(ranked: &[T], gold: &HashSet<T>) -> f64 {
    ranked
        .iter()
        .position(|item| gold.contains(item))
        .map_or(0.0, |pos| 1.0 / (pos + 1) as f64)
}

/// Mean of the reciprocal ranks over several (ranking, gold set) pairs.
/// Rankings without any gold item contribute 0; an empty slice yields 0.
pub fn mean_reciprocal_rank<T: Eq + Hash>(lists: &[(Vec<T>, HashSet<T>)]) -> f64 {
    if lists.is_empty() {
        return 0.0;
    }
    let total: f64 = lists
        .iter()
        .map(|(ranked, gold)| reciprocal_rank(ranked, gold))
        .sum();
    total / lists.len() as f64
}

/// Pearson correlation coefficient,
/// `(E[XY] - E[X]E[Y]) / (sqrt(E[X^2] - E[X]^2) * sqrt(E[Y^2] - E[Y]^2))`.
pub fn pearson_correlation(x: &[f64], y: &[f64]) -> Result<f64, EvalError> {
    if x.len() != y.len() {
        return Err(EvalError::LengthMismatch(x.len(), y.len()));
    }
    if x.len() < 2 {
        return Err(EvalError::TooFewObservations);
    }
    let n = x.len() as f64;
    let mean = |v: &[f64]| v.iter().sum::<f64>() / n;
    let (ex, ey) = (mean(x), mean(y));
    let exy = x.iter().zip(y).map(|(a, b)| a * b).sum::<f64>() / n;
    let ex2 = x.iter().map(|a| a * a).sum::<f64>() / n;
    let ey2 = y.iter().map(|b| b * b).sum::<f64>() / n;
    let var_x = ex2 - ex * ex;
    let var_y = ey2 - ey * ey;
    if var_x <= 0.0 {
        return Err(EvalError::ZeroVariance("X"));
    }
    if var_y <= 0.0 {
        return Err(EvalError::ZeroVariance("Y"));
    }
    Ok((exy - ex * ey) / (var_x.sqrt() * var_y.sqrt()))
}
