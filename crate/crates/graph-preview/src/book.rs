//! The chapters of the mdbook guide under `book/`, included here so that
//! `cargo test` compiles and runs every code snippet in the book. mdbook
//! itself does not test snippets; this module is what keeps the guide in
//! sync with the crate.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}

#[doc = include_str!("../../../book/src/entity-graphs.md")]
pub mod entity_graphs {}

#[doc = include_str!("../../../book/src/scoring.md")]
pub mod scoring {}

#[doc = include_str!("../../../book/src/discovery.md")]
pub mod discovery {}

#[doc = include_str!("../../../book/src/rendering.md")]
pub mod rendering {}

#[doc = include_str!("../../../book/src/benchmarks.md")]
pub mod benchmarks {}
