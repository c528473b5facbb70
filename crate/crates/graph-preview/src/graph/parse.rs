//! Line-oriented text format for entity graphs.
//!
//! One record per line, whitespace-separated fields, `#` starts a comment:
//!
//! ```text
//! ET <type-id> <label>
//! RT <edge-type-id> <label> <src-type-id> <dst-type-id>
//! EN <entity-id> <name> <type-id> [<type-id>...]
//! ED <edge-type-id> <src-entity-id> <dst-entity-id>
//! ```
//!
//! Ids are ASCII tokens; labels and names encode spaces as underscores.
//! Records may appear in any order: all declarations are collected first
//! and references are resolved afterwards, so the parsed graph does not
//! depend on line order.

use std::collections::HashMap;

use thiserror::Error;

use super::{
    decode_name, encode_name, EdgeInstance, EdgeType, Entity, EntityGraph, EntityType,
};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("line {line}: syntax error: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: duplicate {kind} id `{id}`")]
    Duplicate {
        line: usize,
        kind: &'static str,
        id: String,
    },
    #[error("line {line}: unknown {kind} `{id}`")]
    Undeclared {
        line: usize,
        kind: &'static str,
        id: String,
    },
    #[error(
        "line {line}: edge type `{edge_type}` requires a {role} of type `{required}`, \
         but entity `{entity}` does not have that type"
    )]
    EndpointTypeMismatch {
        line: usize,
        edge_type: String,
        role: &'static str,
        required: String,
        entity: String,
    },
}

struct RawEntity {
    line: usize,
    id: String,
    name: String,
    type_ids: Vec<String>,
}

struct RawEdgeType {
    line: usize,
    id: String,
    label: String,
    src: String,
    dst: String,
}

struct RawEdge {
    line: usize,
    edge_type: String,
    src: String,
    dst: String,
}

pub(super) fn parse(input: &str) -> Result<EntityGraph, ParseError> {
    let mut raw_types: Vec<(usize, String, String)> = Vec::new();
    let mut raw_edge_types: Vec<RawEdgeType> = Vec::new();
    let mut raw_entities: Vec<RawEntity> = Vec::new();
    let mut raw_edges: Vec<RawEdge> = Vec::new();

    for (i, full_line) in input.lines().enumerate() {
        let line = i + 1;
        let content = match full_line.find('#') {
            Some(pos) => &full_line[..pos],
            None => full_line,
        };
        let fields: Vec<&str> = content.split_whitespace().collect();
        if fields.is_empty() {
            continue;
        }
        let syntax = |message: String| ParseError::Syntax { line, message };
        match fields[0] {
            "ET" => {
                if fields.len() != 3 {
                    return Err(syntax("ET expects <type-id> <label>".into()));
                }
                raw_types.push((line, fields[1].into(), fields[2].into()));
            }
            "RT" => {
                if fields.len() != 5 {
                    return Err(syntax(
                        "RT expects <edge-type-id> <label> <src-type-id> <dst-type-id>".into(),
                    ));
                }
                raw_edge_types.push(RawEdgeType {
                    line,
                    id: fields[1].into(),
                    label: fields[2].into(),
                    src: fields[3].into(),
                    dst: fields[4].into(),
                });
            }
            "EN" => {
                if fields.len() < 4 {
                    return Err(syntax(
                        "EN expects <entity-id> <name> <type-id> [<type-id>...]".into(),
                    ));
                }
                raw_entities.push(RawEntity {
                    line,
                    id: fields[1].into(),
                    name: fields[2].into(),
                    type_ids: fields[3..].iter().map(|s| s.to_string()).collect(),
                });
            }
            "ED" => {
                if fields.len() != 4 {
                    return Err(syntax(
                        "ED expects <edge-type-id> <src-entity-id> <dst-entity-id>".into(),
                    ));
                }
                raw_edges.push(RawEdge {
                    line,
                    edge_type: fields[1].into(),
                    src: fields[2].into(),
                    dst: fields[3].into(),
                });
            }
            other => {
                return Err(syntax(format!("unknown record kind `{other}`")));
            }
        }
    }

    // Entity types, id-sorted.
    raw_types.sort_by(|a, b| a.1.cmp(&b.1));
    let mut types: Vec<EntityType> = Vec::with_capacity(raw_types.len());
    for (line, id, label) in raw_types {
        if types.last().is_some_and(|t| t.id == id) {
            return Err(ParseError::Duplicate {
                line,
                kind: "entity type",
                id,
            });
        }
        types.push(EntityType {
            id,
            label: decode_name(&label),
        });
    }
    let type_index: HashMap<&str, usize> = types
        .iter()
        .enumerate()
        .map(|(i, t)| (t.id.as_str(), i))
        .collect();

    // Relationship types, id-sorted, endpoint types resolved.
    raw_edge_types.sort_by(|a, b| a.id.cmp(&b.id));
    let mut edge_types: Vec<EdgeType> = Vec::with_capacity(raw_edge_types.len());
    for raw in raw_edge_types {
        if edge_types.last().is_some_and(|t| t.id == raw.id) {
            return Err(ParseError::Duplicate {
                line: raw.line,
                kind: "relationship type",
                id: raw.id,
            });
        }
        let lookup = |id: &str| {
            type_index.get(id).copied().ok_or(ParseError::Undeclared {
                line: raw.line,
                kind: "entity type",
                id: id.to_string(),
            })
        };
        edge_types.push(EdgeType {
            src_type: lookup(&raw.src)?,
            dst_type: lookup(&raw.dst)?,
            id: raw.id,
            label: decode_name(&raw.label),
        });
    }
    let edge_type_index: HashMap<&str, usize> = edge_types
        .iter()
        .enumerate()
        .map(|(i, t)| (t.id.as_str(), i))
        .collect();

    // Entities, id-sorted, type memberships resolved.
    raw_entities.sort_by(|a, b| a.id.cmp(&b.id));
    let mut entities: Vec<Entity> = Vec::with_capacity(raw_entities.len());
    for raw in raw_entities {
        if entities.last().is_some_and(|e| e.id == raw.id) {
            return Err(ParseError::Duplicate {
                line: raw.line,
                kind: "entity",
                id: raw.id,
            });
        }
        let mut type_idxs = Vec::with_capacity(raw.type_ids.len());
        for tid in &raw.type_ids {
            match type_index.get(tid.as_str()) {
                Some(&idx) => type_idxs.push(idx),
                None => {
                    return Err(ParseError::Undeclared {
                        line: raw.line,
                        kind: "entity type",
                        id: tid.clone(),
                    })
                }
            }
        }
        type_idxs.sort_unstable();
        type_idxs.dedup();
        entities.push(Entity {
            id: raw.id,
            name: decode_name(&raw.name),
            types: type_idxs,
        });
    }
    let entity_index: HashMap<&str, usize> = entities
        .iter()
        .enumerate()
        .map(|(i, e)| (e.id.as_str(), i))
        .collect();

    // Edges: resolve and check endpoint types against the declaration.
    let mut edges: Vec<EdgeInstance> = Vec::with_capacity(raw_edges.len());
    for raw in raw_edges {
        let etype = match edge_type_index.get(raw.edge_type.as_str()) {
            Some(&idx) => idx,
            None => {
                return Err(ParseError::Undeclared {
                    line: raw.line,
                    kind: "relationship type",
                    id: raw.edge_type,
                })
            }
        };
        let resolve = |id: &str| {
            entity_index
                .get(id)
                .copied()
                .ok_or_else(|| ParseError::Undeclared {
                    line: raw.line,
                    kind: "entity",
                    id: id.to_string(),
                })
        };
        let src = resolve(&raw.src)?;
        let dst = resolve(&raw.dst)?;
        let decl = &edge_types[etype];
        for (entity_idx, required, role) in
            [(src, decl.src_type, "source"), (dst, decl.dst_type, "target")]
        {
            if !entities[entity_idx].types.contains(&required) {
                return Err(ParseError::EndpointTypeMismatch {
                    line: raw.line,
                    edge_type: decl.id.clone(),
                    role,
                    required: types[required].id.clone(),
                    entity: entities[entity_idx].id.clone(),
                });
            }
        }
        edges.push(EdgeInstance {
            edge_type: etype,
            src,
            dst,
        });
    }
    edges.sort_unstable();

    let mut members = vec![Vec::new(); types.len()];
    for (i, entity) in entities.iter().enumerate() {
        for &t in &entity.types {
            members[t].push(i);
        }
    }

    let mut edge_ranges = vec![(0, 0); edge_types.len()];
    let mut start = 0;
    for (etype, range) in edge_ranges.iter_mut().enumerate() {
        let end = edges[start..].partition_point(|e| e.edge_type == etype) + start;
        *range = (start, end);
        start = end;
    }

    Ok(EntityGraph {
        types,
        entities,
        edge_types,
        edges,
        members,
        edge_ranges,
    })
}

pub(super) fn write(g: &EntityGraph) -> String {
    let mut out = String::new();
    for t in &g.types {
        out.push_str(&format!("ET {} {}\n", t.id, encode_name(&t.label)));
    }
    for rt in &g.edge_types {
        out.push_str(&format!(
            "RT {} {} {} {}\n",
            rt.id,
            encode_name(&rt.label),
            g.types[rt.src_type].id,
            g.types[rt.dst_type].id
        ));
    }
    for e in &g.entities {
        out.push_str(&format!("EN {} {}", e.id, encode_name(&e.name)));
        for &t in &e.types {
            out.push(' ');
            out.push_str(&g.types[t].id);
        }
        out.push('\n');
    }
    for edge in &g.edges {
        out.push_str(&format!(
            "ED {} {} {}\n",
            g.edge_types[edge.edge_type].id, g.entities[edge.src].id, g.entities[edge.dst].id
        ));
    }
    out
}

impl EntityGraph {
    /// Parses the line format described in the module docs.
    pub fn parse(input: &str) -> Result<Self, ParseError> {
        parse(input)
    }
}
