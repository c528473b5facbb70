//! Typed entity graphs and the schema graphs derived from them.
//!
//! An [`EntityGraph`] is a directed multigraph of named entities connected
//! by typed relationship instances. Every relationship type declares the
//! entity types of its two endpoints, so collapsing same-type vertices and
//! edges yields a uniquely determined [`SchemaGraph`]: one vertex per
//! entity type in use, one edge per relationship type with at least one
//! instance.

mod distance;
mod parse;
mod schema;

pub use distance::{Distance, DistanceIndex};
pub use parse::ParseError;
pub use schema::{AttributeCandidate, RelRef, SchemaGraph, TypeRef};

use serde::{Deserialize, Serialize};

/// Edge orientation relative to a key attribute.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Outgoing,
    Incoming,
}

impl Direction {
    pub fn as_str(self) -> &'static str {
        match self {
            Direction::Outgoing => "outgoing",
            Direction::Incoming => "incoming",
        }
    }
}

#[derive(Clone, Debug)]
pub(crate) struct EntityType {
    pub id: String,
    pub label: String,
}

#[derive(Clone, Debug)]
pub(crate) struct Entity {
    pub id: String,
    pub name: String,
    /// Indices into `EntityGraph::types`, sorted, at least one.
    pub types: Vec<usize>,
}

#[derive(Clone, Debug)]
pub(crate) struct EdgeType {
    pub id: String,
    pub label: String,
    pub src_type: usize,
    pub dst_type: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub(crate) struct EdgeInstance {
    pub edge_type: usize,
    pub src: usize,
    pub dst: usize,
}

/// A directed multigraph of typed entities and relationship instances.
///
/// Construction (via [`EntityGraph::parse`]) validates every reference and
/// endpoint type, then stores types, entities and edges in a canonical
/// id-sorted order, so two inputs that differ only in line order produce
/// equal graphs. The graph is immutable afterwards.
#[derive(Clone, Debug)]
pub struct EntityGraph {
    pub(crate) types: Vec<EntityType>,
    pub(crate) entities: Vec<Entity>,
    pub(crate) edge_types: Vec<EdgeType>,
    /// Sorted by (edge_type, src, dst); duplicates are real multi-edges.
    pub(crate) edges: Vec<EdgeInstance>,
    /// Per type, the entities bearing it (sorted entity indices).
    pub(crate) members: Vec<Vec<usize>>,
    /// Per edge type, the half-open range of its instances in `edges`.
    pub(crate) edge_ranges: Vec<(usize, usize)>,
}

impl EntityGraph {
    pub fn entity_count(&self) -> usize {
        self.entities.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn type_count(&self) -> usize {
        self.types.len()
    }

    pub fn edge_type_count(&self) -> usize {
        self.edge_types.len()
    }

    pub fn type_ids(&self) -> impl Iterator<Item = &str> {
        self.types.iter().map(|t| t.id.as_str())
    }

    pub(crate) fn type_index(&self, id: &str) -> Option<usize> {
        self.types.binary_search_by(|t| t.id.as_str().cmp(id)).ok()
    }

    pub(crate) fn edge_type_index(&self, id: &str) -> Option<usize> {
        self.edge_types
            .binary_search_by(|t| t.id.as_str().cmp(id))
            .ok()
    }

    /// Number of entities bearing the given type.
    pub(crate) fn member_count(&self, type_idx: usize) -> usize {
        self.members[type_idx].len()
    }

    pub(crate) fn edges_of_type(&self, edge_type_idx: usize) -> &[EdgeInstance] {
        let (start, end) = self.edge_ranges[edge_type_idx];
        &self.edges[start..end]
    }

    /// Derives the schema graph: one vertex per entity type in use, one
    /// edge per relationship type with at least one instance, and
    /// symmetric type-pair weights counting relationship instances.
    pub fn schema(&self) -> SchemaGraph {
        schema::derive(self)
    }

    /// Serializes back to the line format, in canonical order.
    pub fn to_text(&self) -> String {
        parse::write(self)
    }
}

pub(crate) fn encode_name(name: &str) -> String {
    name.replace(' ', "_")
}

pub(crate) fn decode_name(token: &str) -> String {
    token.replace('_', " ")
}
