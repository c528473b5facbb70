//! Optimal preview tables for typed entity graphs.
//!
//! Given an entity graph — a directed multigraph of typed, named entities —
//! this crate derives its schema graph, scores entity types (candidate key
//! attributes) and incident relationship types (candidate non-key
//! attributes), and solves for the preview with the highest total score
//! under size and distance constraints. Three exact solvers are provided:
//! exhaustive search, dynamic programming over a type prefix (size
//! constraints only), and a level-wise subset join for distance
//! constraints. Discovered previews can be filled with sampled tuples and
//! rendered as JSON or Markdown.
//!
//! The `book/` directory of the repository contains a guide built around
//! runnable examples; its chapters are mirrored under [`book`] so that
//! `cargo test` keeps them compiling.

pub mod bench;
pub mod book;
pub mod discovery;
pub mod eval;
pub mod graph;
pub mod preview;
pub mod rng;
pub mod sample;
pub mod scoring;

#[cfg(test)]
pub(crate) mod testutil;

pub use discovery::{
    Algorithm, Constraints, DiscoveryError, Preview, PreviewTable, SpaceConstraint,
};
pub use graph::{
    AttributeCandidate, Direction, Distance, DistanceIndex, EntityGraph, ParseError, RelRef,
    SchemaGraph, TypeRef,
};
pub use scoring::{
    KeyMeasure, NonKeyMeasure, RandomWalkConfig, ScoreError, ScoredCandidate, ScoredSchema,
};
