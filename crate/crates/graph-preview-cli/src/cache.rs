//! Sidecar cache for scored schemas.
//!
//! Scoring does not depend on the discovery constraints, so a scored
//! schema can be reused across runs. The cache file sits next to the
//! input, keyed by a hash of the input bytes and the scoring
//! configuration; a stale or corrupt cache is rebuilt. Caching never
//! changes output, it only skips the scoring phase.

use std::path::{Path, PathBuf};

use graph_preview::scoring::{KeyMeasure, NonKeyMeasure, RandomWalkConfig};
use graph_preview::{EntityGraph, SchemaGraph, ScoredSchema};

use crate::Failure;

/// FNV-1a, 64-bit.
fn fnv1a(chunks: &[&[u8]]) -> u64 {
    let mut hash = 0xcbf29ce484222325u64;
    for chunk in chunks {
        for &byte in *chunk {
            hash ^= byte as u64;
            hash = hash.wrapping_mul(0x100000001b3);
        }
        hash ^= 0xff;
        hash = hash.wrapping_mul(0x100000001b3);
    }
    hash
}

pub fn cache_path(
    input: &Path,
    text: &str,
    key: KeyMeasure,
    nonkey: NonKeyMeasure,
    cfg: &RandomWalkConfig,
) -> PathBuf {
    let hash = fnv1a(&[
        text.as_bytes(),
        key.as_str().as_bytes(),
        nonkey.as_str().as_bytes(),
        &cfg.teleport.to_bits().to_le_bytes(),
        &cfg.tolerance.to_bits().to_le_bytes(),
    ]);
    PathBuf::from(format!("{}.scores-{hash:016x}.json", input.display()))
}

#[allow(clippy::too_many_arguments)]
pub fn load_or_build(
    input: &Path,
    text: &str,
    graph: &EntityGraph,
    schema: &SchemaGraph,
    key: KeyMeasure,
    nonkey: NonKeyMeasure,
    cfg: &RandomWalkConfig,
    diagnostics: bool,
) -> Result<ScoredSchema, Failure> {
    let path = cache_path(input, text, key, nonkey, cfg);
    if let Ok(bytes) = std::fs::read(&path) {
        if let Ok(scored) = serde_json::from_slice::<ScoredSchema>(&bytes) {
            return Ok(scored);
        }
        if crate::diag::enabled(diagnostics) {
            eprintln!("diag: ignoring corrupt cache {}", path.display());
        }
    }
    let scored = ScoredSchema::build(graph, schema, key, nonkey, cfg)
        .map_err(|e| Failure::compute(e.to_string()))?;
    let serialized = serde_json::to_vec(&scored).expect("scored schema serializes");
    if let Err(e) = std::fs::write(&path, serialized) {
        // The cache is an optimization only; a write failure is not fatal.
        if crate::diag::enabled(diagnostics) {
            eprintln!("diag: could not write cache {}: {e}", path.display());
        }
    }
    Ok(scored)
}
