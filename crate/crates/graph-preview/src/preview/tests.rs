use std::collections::HashMap;

use super::*;
use crate::discovery::{compute_preview_for_subset, Constraints, PreviewTable};
use crate::graph::{AttributeCandidate, EntityGraph};
use crate::rng::SplitMix64;
use crate::sample::FILM_GRAPH;
use crate::scoring::{RandomWalkConfig, ScoredCandidate, ScoredSchema};
use crate::testutil::random_graph;

fn film() -> (EntityGraph, SchemaGraph) {
    let g = EntityGraph::parse(FILM_GRAPH).unwrap();
    let s = g.schema();
    (g, s)
}

/// The 2-column film table (director, genres) used in several tests.
fn film_table(s: &SchemaGraph) -> PreviewTable {
    let film = s.type_ref("film").unwrap();
    let directed = AttributeCandidate {
        key_type: film,
        edge_type: s.rel_ref("directed").unwrap(),
        direction: Direction::Incoming,
    };
    let genres = AttributeCandidate {
        key_type: film,
        edge_type: s.rel_ref("genres").unwrap(),
        direction: Direction::Outgoing,
    };
    PreviewTable {
        key: film,
        nonkeys: vec![
            ScoredCandidate { candidate: directed, score: 4.0 },
            ScoredCandidate { candidate: genres, score: 5.0 },
        ],
        score: 36.0,
    }
}

#[test]
fn materialize_film_table() {
    let (g, s) = film();
    let table = film_table(&s);
    let m = materialize(&g, &s, &table, 4, 0).unwrap();
    assert_eq!(m.key_label, "Film");
    assert_eq!(m.rows.len(), 4);
    let hancock = m.rows.iter().find(|r| r.key == "Hancock").unwrap();
    assert_eq!(hancock.cells[0], vec!["Peter Berg"]);
    assert!(hancock.cells[1].is_empty());
    let mib = m.rows.iter().find(|r| r.key == "Men in Black").unwrap();
    assert_eq!(mib.cells[0], vec!["Barry Sonnenfeld"]);
    assert_eq!(mib.cells[1], vec!["Action Film", "Science Fiction"]);
    let irobot = m.rows.iter().find(|r| r.key == "I, Robot").unwrap();
    assert_eq!(irobot.cells[1], vec!["Action Film"]);
}

#[test]
fn materialize_is_deterministic_and_caps_at_population() {
    let (g, s) = film();
    let table = film_table(&s);
    assert_eq!(
        materialize(&g, &s, &table, 2, 7).unwrap(),
        materialize(&g, &s, &table, 2, 7).unwrap()
    );
    let all = materialize(&g, &s, &table, 100, 7).unwrap();
    assert_eq!(all.rows.len(), 4);
    assert_eq!(
        materialize(&g, &s, &table, 0, 7),
        Err(PreviewError::ZeroSampleSize)
    );
}

#[test]
fn materialize_sample_is_a_subset_of_the_population() {
    let (g, s) = film();
    let table = film_table(&s);
    let m = materialize(&g, &s, &table, 2, 3).unwrap();
    assert_eq!(m.rows.len(), 2);
    let film_names = ["Men in Black", "Men in Black II", "Hancock", "I, Robot"];
    for row in &m.rows {
        assert!(film_names.contains(&row.key.as_str()));
    }
}

/// Every rendered entity name must correspond to an edge of the right
/// type and direction; checked against the serialized graph text.
#[test]
fn materialized_cells_never_fabricate_values() {
    let mut rng = SplitMix64::new(11);
    for trial in 0usize..20 {
        let g = random_graph(6 + (trial % 4), 0.5, &mut rng);
        let s = g.schema();
        let scored = ScoredSchema::build(
            &g,
            &s,
            crate::scoring::KeyMeasure::Coverage,
            crate::scoring::NonKeyMeasure::Coverage,
            &RandomWalkConfig::default(),
        )
        .unwrap();

        let text = g.to_text();
        let name_of: HashMap<&str, String> = text
            .lines()
            .filter(|l| l.starts_with("EN "))
            .map(|l| {
                let f: Vec<&str> = l.split_whitespace().collect();
                (f[1], f[2].replace('_', " "))
            })
            .collect();
        let edges: Vec<(&str, &str, &str)> = text
            .lines()
            .filter(|l| l.starts_with("ED "))
            .map(|l| {
                let f: Vec<&str> = l.split_whitespace().collect();
                (f[1], f[2], f[3])
            })
            .collect();

        for t in s.types() {
            if scored.candidates(t).is_empty() {
                continue;
            }
            let p = compute_preview_for_subset(&scored, &[t], 3).unwrap();
            let m = materialize(&g, &s, &p.tables[0], 5, trial as u64).unwrap();
            for row in &m.rows {
                for (col, cell) in m.columns.iter().zip(&row.cells) {
                    for name in cell {
                        let found = edges.iter().any(|&(et, src, dst)| {
                            et == col.edge_type
                                && match col.direction {
                                    Direction::Outgoing => {
                                        name_of[src] == row.key && name_of[dst] == *name
                                    }
                                    Direction::Incoming => {
                                        name_of[dst] == row.key && name_of[src] == *name
                                    }
                                }
                        });
                        assert!(found, "fabricated cell value {name} in trial {trial}");
                    }
                }
            }
        }
    }
}

fn full_pipeline_json() -> (String, Preview) {
    let (g, s) = film();
    let scored = ScoredSchema::build(
        &g,
        &s,
        crate::scoring::KeyMeasure::Coverage,
        crate::scoring::NonKeyMeasure::Coverage,
        &RandomWalkConfig::default(),
    )
    .unwrap();
    let c = Constraints::concise(2, 6).unwrap();
    let p = crate::discovery::brute_force(&scored, &c).unwrap();
    let tables: Vec<MaterializedTable> = p
        .tables
        .iter()
        .map(|t| materialize(&g, &s, t, 3, 0).unwrap())
        .collect();
    let meta = RenderMeta {
        constraints: c,
        key_measure: crate::scoring::KeyMeasure::Coverage,
        nonkey_measure: crate::scoring::NonKeyMeasure::Coverage,
    };
    (
        render(&p, &tables, &meta, OutputFormat::Json).unwrap(),
        p,
    )
}

#[test]
fn json_round_trips_preview_structure() {
    let (json, p) = full_pipeline_json();
    let doc: PreviewDocument = serde_json::from_str(&json).unwrap();
    assert_eq!(doc.constraints.k, 2);
    assert_eq!(doc.constraints.n, 6);
    assert_eq!(doc.constraints.d, None);
    assert_eq!(doc.constraints.mode, "concise");
    assert_eq!(doc.measures.key, "coverage");
    assert_eq!(doc.measures.nonkey, "coverage");
    assert_eq!(doc.total_score, 84.0);
    assert_eq!(doc.tables.len(), p.tables.len());
    for (got, want) in doc.tables.iter().zip(&p.tables) {
        assert_eq!(got.score, round_score(want.score));
        assert_eq!(got.columns.len(), want.nonkeys.len());
        for (col, cand) in got.columns.iter().zip(&want.nonkeys) {
            assert_eq!(col.direction, cand.candidate.direction);
            assert_eq!(col.score, round_score(cand.score));
        }
    }
}

#[test]
fn json_single_table_preview() {
    let (g, s) = film();
    let scored = ScoredSchema::build(
        &g,
        &s,
        crate::scoring::KeyMeasure::Coverage,
        crate::scoring::NonKeyMeasure::Coverage,
        &RandomWalkConfig::default(),
    )
    .unwrap();
    let c = Constraints::concise(1, 2).unwrap();
    let p = crate::discovery::brute_force(&scored, &c).unwrap();
    let tables: Vec<MaterializedTable> = p
        .tables
        .iter()
        .map(|t| materialize(&g, &s, t, 2, 0).unwrap())
        .collect();
    let meta = RenderMeta {
        constraints: c,
        key_measure: crate::scoring::KeyMeasure::Coverage,
        nonkey_measure: crate::scoring::NonKeyMeasure::Coverage,
    };
    let json = render(&p, &tables, &meta, OutputFormat::Json).unwrap();
    let doc: PreviewDocument = serde_json::from_str(&json).unwrap();
    assert_eq!(doc.tables.len(), 1);
}

#[test]
fn markdown_matches_expected_table_layout() {
    let (g, s) = film();
    let table = film_table(&s);
    let m = materialize(&g, &s, &table, 4, 0).unwrap();
    let p = Preview {
        total_score: 36.0,
        tables: vec![table],
    };
    let meta = RenderMeta {
        constraints: Constraints::concise(1, 2).unwrap(),
        key_measure: crate::scoring::KeyMeasure::Coverage,
        nonkey_measure: crate::scoring::NonKeyMeasure::Coverage,
    };
    let md = render(&p, &[m], &meta, OutputFormat::Markdown).unwrap();
    let expected = "\
Preview: mode=concise k=1 n=2 key=coverage nonkey=coverage
Total score: 36

### Film (score: 36)

| **Film** | Director \u{2190} | Genres |
| --- | --- | --- |
| Men in Black | Barry Sonnenfeld | {Action Film, Science Fiction} |
| Men in Black II | Barry Sonnenfeld | {Action Film, Science Fiction} |
| Hancock | Peter Berg | - |
| I, Robot | Alex Proyas | Action Film |
";
    assert_eq!(md, expected);
}

#[test]
fn render_rejects_mismatched_tables() {
    let (_, s) = film();
    let table = film_table(&s);
    let p = Preview {
        total_score: 36.0,
        tables: vec![table],
    };
    let meta = RenderMeta {
        constraints: Constraints::concise(1, 2).unwrap(),
        key_measure: crate::scoring::KeyMeasure::Coverage,
        nonkey_measure: crate::scoring::NonKeyMeasure::Coverage,
    };
    assert_eq!(
        render(&p, &[], &meta, OutputFormat::Json).unwrap_err(),
        PreviewError::TableMismatch
    );
}

#[test]
fn self_loop_columns_distinguish_directions() {
    let input = "ET t1 Station\nRT next Next_Stop t1 t1\n\
                 EN s1 Alpha t1\nEN s2 Beta t1\nED next s1 s2\n";
    let g = EntityGraph::parse(input).unwrap();
    let s = g.schema();
    let station = s.type_ref("t1").unwrap();
    let mut nonkeys: Vec<ScoredCandidate> = s
        .incident_candidates(station)
        .into_iter()
        .map(|candidate| ScoredCandidate { candidate, score: 1.0 })
        .collect();
    nonkeys.sort_by_key(|c| c.candidate.direction);
    let table = PreviewTable { key: station, nonkeys, score: 4.0 };
    let m = materialize(&g, &s, &table, 2, 0).unwrap();
    let alpha = m.rows.iter().find(|r| r.key == "Alpha").unwrap();
    assert_eq!(alpha.cells[0], vec!["Beta"]); // outgoing
    assert!(alpha.cells[1].is_empty()); // incoming
    let beta = m.rows.iter().find(|r| r.key == "Beta").unwrap();
    assert!(beta.cells[0].is_empty());
    assert_eq!(beta.cells[1], vec!["Alpha"]);

    let p = Preview { total_score: 4.0, tables: vec![table] };
    let meta = RenderMeta {
        constraints: Constraints::concise(1, 2).unwrap(),
        key_measure: crate::scoring::KeyMeasure::Coverage,
        nonkey_measure: crate::scoring::NonKeyMeasure::Coverage,
    };
    let md = render(&p, &[m], &meta, OutputFormat::Markdown).unwrap();
    assert!(md.contains("| **Station** | Next Stop | Next Stop \u{2190} |"));
}

#[test]
fn score_rounding_keeps_six_significant_digits() {
    assert_eq!(round_score(0.0), 0.0);
    assert_eq!(round_score(84.0), 84.0);
    assert_eq!(round_score(0.2764346875), 0.276435);
    assert_eq!(round_score(123456789.0), 123457000.0);
    assert_eq!(round_score(-0.000123456449), -0.000123456);
}
