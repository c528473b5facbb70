//! Schema graphs: the type-level summary of an entity graph.

use serde::{Deserialize, Serialize};

use super::{Direction, DistanceIndex, EntityGraph};

/// Handle to an entity type within a particular [`SchemaGraph`].
///
/// Types are stored sorted by id, so the ordering of `TypeRef`s is the
/// lexical ordering of type ids.
#[derive(
    Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize,
)]
pub struct TypeRef(pub(crate) u32);

impl TypeRef {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// Handle to a relationship type within a particular [`SchemaGraph`].
#[derive(
    Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize,
)]
pub struct RelRef(pub(crate) u32);

impl RelRef {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// A candidate non-key attribute: a relationship type incident on a key
/// type, in a fixed direction. A self-loop relationship type yields two
/// candidates for its type, one per direction.
#[derive(
    Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize,
)]
pub struct AttributeCandidate {
    pub key_type: TypeRef,
    pub edge_type: RelRef,
    pub direction: Direction,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub(crate) struct SchemaType {
    pub id: String,
    pub label: String,
    /// Number of entities bearing this type.
    pub entity_count: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub(crate) struct SchemaRel {
    pub id: String,
    pub label: String,
    pub src: TypeRef,
    pub dst: TypeRef,
    /// Number of relationship instances of this type.
    pub instance_count: u64,
}

/// The schema graph of an entity graph: a directed multigraph with one
/// vertex per entity type in use and one edge per relationship type that
/// has at least one instance. Unordered type pairs carry a symmetric
/// weight, the total number of relationship instances between the two
/// types in either direction.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SchemaGraph {
    /// Sorted by type id.
    pub(crate) types: Vec<SchemaType>,
    /// Sorted by relationship type id.
    pub(crate) rels: Vec<SchemaRel>,
    /// Sorted by canonical (min, max) pair; self pairs count each
    /// instance once.
    pub(crate) weights: Vec<(TypeRef, TypeRef, u64)>,
    /// Undirected simple projection, per type: sorted neighbor lists.
    pub(crate) adjacency: Vec<Vec<u32>>,
}

impl SchemaGraph {
    pub fn type_count(&self) -> usize {
        self.types.len()
    }

    pub fn rel_type_count(&self) -> usize {
        self.rels.len()
    }

    /// All types, in id order.
    pub fn types(&self) -> impl Iterator<Item = TypeRef> + '_ {
        (0..self.types.len() as u32).map(TypeRef)
    }

    pub fn type_ref(&self, id: &str) -> Option<TypeRef> {
        self.types
            .binary_search_by(|t| t.id.as_str().cmp(id))
            .ok()
            .map(|i| TypeRef(i as u32))
    }

    pub fn type_id(&self, t: TypeRef) -> &str {
        &self.types[t.index()].id
    }

    pub fn type_label(&self, t: TypeRef) -> &str {
        &self.types[t.index()].label
    }

    /// Entities bearing the type.
    pub fn entity_count(&self, t: TypeRef) -> u64 {
        self.types[t.index()].entity_count
    }

    pub fn rel_ref(&self, id: &str) -> Option<RelRef> {
        self.rels
            .binary_search_by(|r| r.id.as_str().cmp(id))
            .ok()
            .map(|i| RelRef(i as u32))
    }

    pub fn rel_id(&self, r: RelRef) -> &str {
        &self.rels[r.index()].id
    }

    pub fn rel_label(&self, r: RelRef) -> &str {
        &self.rels[r.index()].label
    }

    pub fn rel_endpoints(&self, r: RelRef) -> (TypeRef, TypeRef) {
        let rel = &self.rels[r.index()];
        (rel.src, rel.dst)
    }

    /// Relationship instances of the type.
    pub fn instance_count(&self, r: RelRef) -> u64 {
        self.rels[r.index()].instance_count
    }

    /// Total relationship instances between the two types, in either
    /// direction (symmetric).
    pub fn weight(&self, a: TypeRef, b: TypeRef) -> u64 {
        let key = (a.min(b), a.max(b));
        self.weights
            .binary_search_by(|&(x, y, _)| (x, y).cmp(&key))
            .map(|i| self.weights[i].2)
            .unwrap_or(0)
    }

    /// Every candidate non-key attribute for the given key type: each
    /// incident relationship type appears exactly once per direction, in
    /// (relationship id, outgoing-first) order.
    pub fn incident_candidates(&self, key_type: TypeRef) -> Vec<AttributeCandidate> {
        let mut out = Vec::new();
        for (i, rel) in self.rels.iter().enumerate() {
            if rel.src == key_type {
                out.push(AttributeCandidate {
                    key_type,
                    edge_type: RelRef(i as u32),
                    direction: Direction::Outgoing,
                });
            }
            if rel.dst == key_type {
                out.push(AttributeCandidate {
                    key_type,
                    edge_type: RelRef(i as u32),
                    direction: Direction::Incoming,
                });
            }
        }
        out
    }

    /// Hop distances between all type pairs on the undirected simple
    /// projection of the schema graph (parallel edges collapse, direction
    /// is ignored).
    pub fn all_pairs_distance(&self) -> DistanceIndex {
        DistanceIndex::from_adjacency(&self.adjacency)
    }
}

pub(super) fn derive(g: &EntityGraph) -> SchemaGraph {
    // Vertices: entity types in use, in id order (graph types are already
    // id-sorted, so filtering preserves the order).
    let mut type_map = vec![None; g.types.len()];
    let mut types = Vec::new();
    for (i, t) in g.types.iter().enumerate() {
        let count = g.members[i].len();
        if count > 0 {
            type_map[i] = Some(TypeRef(types.len() as u32));
            types.push(SchemaType {
                id: t.id.clone(),
                label: t.label.clone(),
                entity_count: count as u64,
            });
        }
    }

    // Edges: relationship types with at least one instance.
    let mut rels = Vec::new();
    for (i, rt) in g.edge_types.iter().enumerate() {
        let instances = g.edges_of_type(i).len() as u64;
        if instances > 0 {
            rels.push(SchemaRel {
                id: rt.id.clone(),
                label: rt.label.clone(),
                src: type_map[rt.src_type].expect("instantiated edge type has entities"),
                dst: type_map[rt.dst_type].expect("instantiated edge type has entities"),
                instance_count: instances,
            });
        }
    }

    let mut weights: std::collections::BTreeMap<(TypeRef, TypeRef), u64> =
        std::collections::BTreeMap::new();
    for rel in &rels {
        let key = (rel.src.min(rel.dst), rel.src.max(rel.dst));
        *weights.entry(key).or_insert(0) += rel.instance_count;
    }

    let mut adjacency = vec![Vec::new(); types.len()];
    for &(a, b) in weights.keys() {
        if a != b {
            adjacency[a.index()].push(b.0);
            adjacency[b.index()].push(a.0);
        }
    }
    for list in &mut adjacency {
        list.sort_unstable();
    }

    SchemaGraph {
        types,
        rels,
        weights: weights.into_iter().map(|((a, b), w)| (a, b, w)).collect(),
        adjacency,
    }
}
