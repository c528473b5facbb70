//! Filling preview tables with sampled tuples and rendering previews.
//!
//! A materialized table has one row per sampled entity of the key type;
//! each cell holds the (possibly empty) set of neighbor entities reached
//! through the column's relationship type in the column's direction.
//! Sampling is uniform without replacement using the crate's fixed
//! [`SplitMix64`] generator, so a given seed reproduces the same table
//! on every platform.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::discovery::{Constraints, Preview, PreviewTable};
use crate::graph::{Direction, EntityGraph, SchemaGraph};
use crate::rng::{sample_without_replacement, SplitMix64};
use crate::scoring::{KeyMeasure, NonKeyMeasure};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PreviewError {
    #[error("sample size must be at least 1")]
    ZeroSampleSize,
    #[error("entity type `{0}` has no entities to sample")]
    EmptyPopulation(String),
    #[error("schema id `{0}` does not exist in the entity graph")]
    GraphSchemaMismatch(String),
    #[error("materialized tables do not correspond 1:1 to the preview's tables")]
    TableMismatch,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MaterializedColumn {
    pub edge_type: String,
    pub label: String,
    pub direction: Direction,
    pub score: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MaterializedRow {
    pub key: String,
    /// One value-set per column, each a sorted list of entity names;
    /// empty means the tuple has no value on that column.
    pub cells: Vec<Vec<String>>,
}

/// A preview table filled with sampled tuples.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MaterializedTable {
    pub key_type: String,
    pub key_label: String,
    pub score: f64,
    pub columns: Vec<MaterializedColumn>,
    pub rows: Vec<MaterializedRow>,
}

/// Samples `min(sample_size, population)` entities of the table's key
/// type (uniformly, without replacement, deterministic per seed) and
/// fills every cell. Rows come out in entity-id order.
pub fn materialize(
    g: &EntityGraph,
    s: &SchemaGraph,
    table: &PreviewTable,
    sample_size: usize,
    seed: u64,
) -> Result<MaterializedTable, PreviewError> {
    if sample_size == 0 {
        return Err(PreviewError::ZeroSampleSize);
    }
    let key_id = s.type_id(table.key);
    let key_idx = g
        .type_index(key_id)
        .ok_or_else(|| PreviewError::GraphSchemaMismatch(key_id.to_string()))?;
    let population = &g.members[key_idx];
    if population.is_empty() {
        return Err(PreviewError::EmptyPopulation(key_id.to_string()));
    }

    let columns: Vec<MaterializedColumn> = table
        .nonkeys
        .iter()
        .map(|sc| MaterializedColumn {
            edge_type: s.rel_id(sc.candidate.edge_type).to_string(),
            label: s.rel_label(sc.candidate.edge_type).to_string(),
            direction: sc.candidate.direction,
            score: sc.score,
        })
        .collect();
    let column_rel_idxs: Vec<usize> = table
        .nonkeys
        .iter()
        .map(|sc| {
            let rel_id = s.rel_id(sc.candidate.edge_type);
            g.edge_type_index(rel_id)
                .ok_or_else(|| PreviewError::GraphSchemaMismatch(rel_id.to_string()))
        })
        .collect::<Result<_, _>>()?;

    let mut rng = SplitMix64::new(seed);
    let mut picks = sample_without_replacement(population.len(), sample_size, &mut rng);
    picks.sort_unstable();

    let rows = picks
        .iter()
        .map(|&pick| {
            let entity = population[pick];
            let cells = table
                .nonkeys
                .iter()
                .zip(&column_rel_idxs)
                .map(|(sc, &rel_idx)| {
                    let mut neighbors: Vec<usize> = g
                        .edges_of_type(rel_idx)
                        .iter()
                        .filter_map(|e| match sc.candidate.direction {
                            Direction::Outgoing if e.src == entity => Some(e.dst),
                            Direction::Incoming if e.dst == entity => Some(e.src),
                            _ => None,
                        })
                        .collect();
                    neighbors.sort_unstable();
                    neighbors.dedup();
                    let mut names: Vec<String> = neighbors
                        .into_iter()
                        .map(|idx| g.entities[idx].name.clone())
                        .collect();
                    names.sort();
                    names
                })
                .collect();
            MaterializedRow {
                key: g.entities[entity].name.clone(),
                cells,
            }
        })
        .collect();

    Ok(MaterializedTable {
        key_type: key_id.to_string(),
        key_label: s.type_label(table.key).to_string(),
        score: table.score,
        columns,
        rows,
    })
}

/// Output format of [`render`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OutputFormat {
    Json,
    Markdown,
}

/// The configuration recorded alongside a rendered preview.
#[derive(Clone, Copy, Debug)]
pub struct RenderMeta {
    pub constraints: Constraints,
    pub key_measure: KeyMeasure,
    pub nonkey_measure: NonKeyMeasure,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConstraintsDoc {
    pub k: usize,
    pub n: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub d: Option<u32>,
    pub mode: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MeasuresDoc {
    pub key: String,
    pub nonkey: String,
}

/// The JSON shape of a rendered preview. Field order is fixed; scores are
/// rounded to 6 significant digits before serialization.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PreviewDocument {
    pub constraints: ConstraintsDoc,
    pub measures: MeasuresDoc,
    pub total_score: f64,
    pub tables: Vec<MaterializedTable>,
}

/// Rounds to 6 significant digits, the precision scores are emitted at.
pub fn round_score(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    let magnitude = x.abs().log10().floor() as i32;
    let factor = 10f64.powi(5 - magnitude);
    (x * factor).round() / factor
}

/// Assembles the output document for a preview and its materialized
/// tables (1:1, in order).
pub fn build_document(
    p: &Preview,
    tables: &[MaterializedTable],
    meta: &RenderMeta,
) -> Result<PreviewDocument, PreviewError> {
    if tables.len() != p.tables.len() {
        return Err(PreviewError::TableMismatch);
    }
    let tables = tables
        .iter()
        .map(|t| {
            let mut t = t.clone();
            t.score = round_score(t.score);
            for c in &mut t.columns {
                c.score = round_score(c.score);
            }
            t
        })
        .collect();
    Ok(PreviewDocument {
        constraints: ConstraintsDoc {
            k: meta.constraints.k(),
            n: meta.constraints.n(),
            d: meta.constraints.space().d(),
            mode: meta.constraints.space().mode_str().to_string(),
        },
        measures: MeasuresDoc {
            key: meta.key_measure.as_str().to_string(),
            nonkey: meta.nonkey_measure.as_str().to_string(),
        },
        total_score: round_score(p.total_score),
        tables,
    })
}

/// Renders a preview with its materialized tables as JSON or Markdown.
pub fn render(
    p: &Preview,
    tables: &[MaterializedTable],
    meta: &RenderMeta,
    format: OutputFormat,
) -> Result<String, PreviewError> {
    let doc = build_document(p, tables, meta)?;
    Ok(match format {
        OutputFormat::Json => {
            let mut out =
                serde_json::to_string_pretty(&doc).expect("document serialization cannot fail");
            out.push('\n');
            out
        }
        OutputFormat::Markdown => render_markdown(&doc),
    })
}

fn format_score(x: f64) -> String {
    format!("{}", round_score(x))
}

fn render_markdown(doc: &PreviewDocument) -> String {
    let mut out = String::new();
    let d = match doc.constraints.d {
        Some(d) => format!(" d={d}"),
        None => String::new(),
    };
    out.push_str(&format!(
        "Preview: mode={} k={} n={}{} key={} nonkey={}\n",
        doc.constraints.mode, doc.constraints.k, doc.constraints.n, d, doc.measures.key,
        doc.measures.nonkey
    ));
    out.push_str(&format!("Total score: {}\n", format_score(doc.total_score)));
    for table in &doc.tables {
        out.push('\n');
        out.push_str(&format!(
            "### {} (score: {})\n\n",
            table.key_label,
            format_score(table.score)
        ));
        out.push_str(&format!("| **{}** |", table.key_label));
        for c in &table.columns {
            match c.direction {
                Direction::Outgoing => out.push_str(&format!(" {} |", c.label)),
                Direction::Incoming => out.push_str(&format!(" {} \u{2190} |", c.label)),
            }
        }
        out.push('\n');
        out.push_str("| --- |");
        for _ in &table.columns {
            out.push_str(" --- |");
        }
        out.push('\n');
        for row in &table.rows {
            out.push_str(&format!("| {} |", row.key));
            for cell in &row.cells {
                let rendered = match cell.len() {
                    0 => "-".to_string(),
                    1 => cell[0].clone(),
                    _ => format!("{{{}}}", cell.join(", ")),
                };
                out.push_str(&format!(" {rendered} |"));
            }
            out.push('\n');
        }
    }
    out
}

#[cfg(test)]
mod tests;
