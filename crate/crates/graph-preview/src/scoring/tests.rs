use std::collections::HashSet;

use super::*;
use crate::graph::{Direction, EntityGraph, SchemaGraph};
use crate::rng::SplitMix64;
use crate::sample::FILM_GRAPH;

fn film() -> EntityGraph {
    EntityGraph::parse(FILM_GRAPH).unwrap()
}

fn candidate(
    s: &SchemaGraph,
    key: &str,
    rel: &str,
    direction: Direction,
) -> AttributeCandidate {
    AttributeCandidate {
        key_type: s.type_ref(key).unwrap(),
        edge_type: s.rel_ref(rel).unwrap(),
        direction,
    }
}

#[test]
fn key_coverage_on_fixture() {
    let g = film();
    assert_eq!(score_key_coverage(&g, "film").unwrap(), 4);
    assert_eq!(score_key_coverage(&g, "actor").unwrap(), 2);
    assert_eq!(score_key_coverage(&g, "director").unwrap(), 3);
    assert_eq!(
        score_key_coverage(&g, "nope"),
        Err(ScoreError::UnknownType("nope".into()))
    );
}

#[test]
fn key_coverage_memberless_type() {
    let g = EntityGraph::parse("ET t1 A\nET t2 B\nEN e1 X t1\n").unwrap();
    assert_eq!(score_key_coverage(&g, "t2").unwrap(), 0);
}

#[test]
fn transition_matrix_on_fixture() {
    let g = film();
    let s = g.schema();
    let m = transition_matrix(&s);
    let film = s.type_ref("film").unwrap().index();
    let genre = s.type_ref("genre").unwrap().index();
    let producer = s.type_ref("producer").unwrap().index();
    let actor = s.type_ref("actor").unwrap().index();
    assert_eq!(m[film][genre], 5.0 / 18.0);
    assert_eq!(m[film][producer], 3.0 / 18.0);
    assert_eq!(m[film][actor], 6.0 / 18.0);
    assert_eq!(format!("{:.2}", m[film][genre]), "0.28");
    assert_eq!(format!("{:.2}", m[film][producer]), "0.17");
    for row in &m {
        let sum: f64 = row.iter().sum();
        assert!((sum - 1.0).abs() < 1e-12);
    }
}

#[test]
fn random_walk_single_vertex() {
    let s = EntityGraph::parse("ET t1 A\nEN e1 X t1\n").unwrap().schema();
    let pi = score_keys_random_walk(&s, &RandomWalkConfig::default()).unwrap();
    assert_eq!(pi, vec![1.0]);
}

#[test]
fn random_walk_two_vertices_one_edge() {
    let input = "ET a A\nET b B\nRT r R a b\nEN e1 X a\nEN e2 Y b\nED r e1 e2\n";
    let s = EntityGraph::parse(input).unwrap().schema();
    let cfg = RandomWalkConfig::default();
    let pi = score_keys_random_walk(&s, &cfg).unwrap();
    assert!((pi[0] - 0.5).abs() <= cfg.tolerance);
    assert!((pi[1] - 0.5).abs() <= cfg.tolerance);
}

#[test]
fn random_walk_residual_and_sum() {
    let s = film().schema();
    // The film schema graph is bipartite, so the teleport probability sets
    // the mixing rate and the walk needs on the order of 1/teleport steps.
    let cfg = RandomWalkConfig {
        max_iterations: 3_000_000,
        ..Default::default()
    };
    let pi = score_keys_random_walk(&s, &cfg).unwrap();
    let sum: f64 = pi.iter().sum();
    assert!((sum - 1.0).abs() <= 1e-9);
    let m = perturbed_transition_matrix(&s, &cfg).unwrap();
    let mut image = vec![0.0; pi.len()];
    for (i, &p) in pi.iter().enumerate() {
        for (j, &mij) in m[i].iter().enumerate() {
            image[j] += p * mij;
        }
    }
    let residual: f64 = pi.iter().zip(&image).map(|(a, b)| (a - b).abs()).sum();
    assert!(residual <= cfg.tolerance);
}

#[test]
fn random_walk_uniform_on_regular_graph() {
    // 4-cycle with unit weights: every type has the same degree.
    let input = "ET a A\nET b B\nET c C\nET d D\n\
                 RT r1 R a b\nRT r2 R b c\nRT r3 R c d\nRT r4 R d a\n\
                 EN e1 X a\nEN e2 X b\nEN e3 X c\nEN e4 X d\n\
                 ED r1 e1 e2\nED r2 e2 e3\nED r3 e3 e4\nED r4 e4 e1\n";
    let s = EntityGraph::parse(input).unwrap().schema();
    let pi = score_keys_random_walk(&s, &RandomWalkConfig::default()).unwrap();
    for &p in &pi {
        assert!((p - 0.25).abs() < 1e-6, "pi = {pi:?}");
    }
}

#[test]
fn random_walk_disconnected_converges() {
    let input = "ET a A\nET b B\nET c C\nRT r R a b\n\
                 EN e1 X a\nEN e2 Y b\nEN e3 Z c\nED r e1 e2\n";
    let s = EntityGraph::parse(input).unwrap().schema();
    let pi = score_keys_random_walk(&s, &RandomWalkConfig::default()).unwrap();
    assert_eq!(pi.len(), 3);
    let sum: f64 = pi.iter().sum();
    assert!((sum - 1.0).abs() <= 1e-9);
}

#[test]
fn random_walk_reports_non_convergence() {
    let s = film().schema();
    let cfg = RandomWalkConfig {
        tolerance: 1e-300,
        max_iterations: 3,
        ..Default::default()
    };
    let err = score_keys_random_walk(&s, &cfg).unwrap_err();
    assert!(matches!(err, ScoreError::NonConvergence { iterations: 3, .. }));
}

#[test]
fn random_walk_rejects_bad_config() {
    let s = film().schema();
    let cfg = RandomWalkConfig {
        teleport: 0.5, // >= 1/(K-1) for K = 6
        ..Default::default()
    };
    assert!(matches!(
        score_keys_random_walk(&s, &cfg),
        Err(ScoreError::InvalidConfig(_))
    ));
}

#[test]
fn nonkey_coverage_on_fixture() {
    let g = film();
    let s = g.schema();
    let director = candidate(&s, "film", "directed", Direction::Incoming);
    let genres = candidate(&s, "film", "genres", Direction::Outgoing);
    assert_eq!(score_nonkey_coverage(&g, &s, director).unwrap(), 4);
    assert_eq!(score_nonkey_coverage(&g, &s, genres).unwrap(), 5);
    let exec = candidate(&s, "film", "exec_produced", Direction::Incoming);
    assert_eq!(score_nonkey_coverage(&g, &s, exec).unwrap(), 1);
}

#[test]
fn nonkey_coverage_is_direction_symmetric() {
    let g = film();
    let s = g.schema();
    let from_film = candidate(&s, "film", "acted_in", Direction::Incoming);
    let from_actor = candidate(&s, "actor", "acted_in", Direction::Outgoing);
    assert_eq!(
        score_nonkey_coverage(&g, &s, from_film).unwrap(),
        score_nonkey_coverage(&g, &s, from_actor).unwrap()
    );
}

#[test]
fn entropy_on_fixture() {
    let g = film();
    let s = g.schema();
    let director = candidate(&s, "film", "directed", Direction::Incoming);
    let genres = candidate(&s, "film", "genres", Direction::Outgoing);
    let h_director = score_nonkey_entropy(&g, &s, director).unwrap();
    let h_genres = score_nonkey_entropy(&g, &s, genres).unwrap();
    assert!((h_director - 0.45).abs() <= 0.005, "got {h_director}");
    assert!((h_genres - 0.28).abs() <= 0.005, "got {h_genres}");
}

#[test]
fn entropy_zero_when_all_value_sets_agree() {
    let input = "ET a A\nET b B\nRT r R a b\n\
                 EN e1 X a\nEN e2 Y a\nEN e3 Z b\n\
                 ED r e1 e3\nED r e2 e3\n";
    let g = EntityGraph::parse(input).unwrap();
    let s = g.schema();
    let c = candidate(&s, "a", "r", Direction::Outgoing);
    assert_eq!(score_nonkey_entropy(&g, &s, c).unwrap(), 0.0);
}

#[test]
fn entropy_zero_when_no_tuples_have_values() {
    // The relationship exists (one instance between two other entities),
    // but some key entities have empty values and are excluded.
    let input = "ET a A\nET b B\nRT r R a b\n\
                 EN e1 X a\nEN e2 Y a\nEN e3 Z b\nED r e1 e3\n";
    let g = EntityGraph::parse(input).unwrap();
    let s = g.schema();
    let c = candidate(&s, "b", "r", Direction::Incoming);
    // Every tuple of B has the same value-set {e1}.
    assert_eq!(score_nonkey_entropy(&g, &s, c).unwrap(), 0.0);
}

#[test]
fn entropy_counts_multisets_as_sets() {
    // Parallel duplicate edges collapse into the same value-set.
    let input = "ET a A\nET b B\nRT r R a b\n\
                 EN e1 X a\nEN e2 Y a\nEN e3 Z b\n\
                 ED r e1 e3\nED r e1 e3\nED r e2 e3\n";
    let g = EntityGraph::parse(input).unwrap();
    let s = g.schema();
    let c = candidate(&s, "a", "r", Direction::Outgoing);
    assert_eq!(score_nonkey_entropy(&g, &s, c).unwrap(), 0.0);
}

#[test]
fn table_and_preview_scores() {
    assert_eq!(score_table(4.0, &[4.0, 5.0]).unwrap(), 36.0);
    assert_eq!(score_table(0.0, &[1.0, 2.0, 3.0]).unwrap(), 0.0);
    assert_eq!(score_table(2.0, &[3.0]).unwrap(), 6.0);
    assert_eq!(score_table(1.0, &[]), Err(ScoreError::EmptyNonKeys));
    assert_eq!(score_preview(&[36.0, 12.0]), 48.0);
    assert_eq!(score_preview(&[]), 0.0);
    assert_eq!(score_preview(&[7.25]), 7.25);
}

#[test]
fn score_table_is_monotone_in_nonkeys() {
    let mut rng = SplitMix64::new(5);
    for _ in 0..200 {
        let key = rng.next_f64() * 10.0;
        let mut nonkeys: Vec<f64> = (0..1 + rng.next_below(6) as usize)
            .map(|_| rng.next_f64() * 5.0)
            .collect();
        let before = score_table(key, &nonkeys).unwrap();
        nonkeys.push(rng.next_f64() * 5.0);
        let after = score_table(key, &nonkeys).unwrap();
        assert!(after >= before);
    }
}

#[test]
fn build_coverage_coverage_sorts_film_candidates() {
    let g = film();
    let s = g.schema();
    let scored = ScoredSchema::build(
        &g,
        &s,
        KeyMeasure::Coverage,
        NonKeyMeasure::Coverage,
        &RandomWalkConfig::default(),
    )
    .unwrap();
    let film = s.type_ref("film").unwrap();
    let order: Vec<(&str, f64)> = scored
        .candidates(film)
        .iter()
        .map(|c| (s.rel_id(c.candidate.edge_type), c.score))
        .collect();
    assert_eq!(
        order,
        vec![
            ("acted_in", 6.0),
            ("genres", 5.0),
            ("directed", 4.0),
            ("produced", 2.0),
            ("exec_produced", 1.0),
        ]
    );
    assert_eq!(scored.key_score(film), 4.0);
    assert_eq!(scored.table_score(film, 2), 4.0 * 11.0);
}

#[test]
fn build_entropy_ranks_director_above_genres() {
    let g = film();
    let s = g.schema();
    let scored = ScoredSchema::build(
        &g,
        &s,
        KeyMeasure::Coverage,
        NonKeyMeasure::Entropy,
        &RandomWalkConfig::default(),
    )
    .unwrap();
    let film = s.type_ref("film").unwrap();
    let ids: Vec<&str> = scored
        .candidates(film)
        .iter()
        .map(|c| s.rel_id(c.candidate.edge_type))
        .collect();
    let pos = |id: &str| ids.iter().position(|x| *x == id).unwrap();
    assert!(pos("directed") < pos("genres"));
}

#[test]
fn build_empty_graph() {
    let g = EntityGraph::parse("").unwrap();
    let s = g.schema();
    let scored = ScoredSchema::build(
        &g,
        &s,
        KeyMeasure::Coverage,
        NonKeyMeasure::Coverage,
        &RandomWalkConfig::default(),
    )
    .unwrap();
    assert_eq!(scored.type_count(), 0);
}

#[test]
fn candidate_lists_are_non_increasing() {
    let g = film();
    let s = g.schema();
    for nonkey in [NonKeyMeasure::Coverage, NonKeyMeasure::Entropy] {
        let scored = ScoredSchema::build(
            &g,
            &s,
            KeyMeasure::Coverage,
            nonkey,
            &RandomWalkConfig::default(),
        )
        .unwrap();
        for t in s.types() {
            let list = scored.candidates(t);
            for pair in list.windows(2) {
                assert!(pair[0].score >= pair[1].score);
            }
            assert_eq!(list.len(), s.incident_candidates(t).len());
        }
    }
}

#[test]
fn from_parts_rejects_bad_input() {
    let s = film().schema();
    let err = ScoredSchema::from_parts(
        s.clone(),
        KeyMeasure::Coverage,
        NonKeyMeasure::Coverage,
        vec![1.0; 2],
        vec![Vec::new(); 2],
    )
    .unwrap_err();
    assert!(matches!(err, ScoreError::InvalidParts(_)));

    let key_scores = vec![1.0; s.type_count()];
    let candidates = vec![Vec::new(); s.type_count()];
    let err = ScoredSchema::from_parts(
        s,
        KeyMeasure::Coverage,
        NonKeyMeasure::Coverage,
        key_scores,
        candidates,
    )
    .unwrap_err();
    assert!(matches!(err, ScoreError::InvalidParts(_)));
}

/// Entropy oracle that groups value-sets by exhaustive pairwise set
/// comparison instead of hashing a canonical form.
fn entropy_oracle(g: &EntityGraph, s: &SchemaGraph, c: AttributeCandidate) -> f64 {
    let key_idx = g.type_index(s.type_id(c.key_type)).unwrap();
    let rel_idx = g.edge_type_index(s.rel_id(c.edge_type)).unwrap();
    let mut value_sets: Vec<HashSet<usize>> = Vec::new();
    for &entity in &g.members[key_idx] {
        let mut set = HashSet::new();
        for e in g.edges_of_type(rel_idx) {
            match c.direction {
                Direction::Outgoing if e.src == entity => {
                    set.insert(e.dst);
                }
                Direction::Incoming if e.dst == entity => {
                    set.insert(e.src);
                }
                _ => {}
            }
        }
        if !set.is_empty() {
            value_sets.push(set);
        }
    }
    let m = value_sets.len() as f64;
    if value_sets.is_empty() {
        return 0.0;
    }
    let mut groups: Vec<(HashSet<usize>, u64)> = Vec::new();
    'outer: for set in value_sets {
        for (repr, count) in groups.iter_mut() {
            if *repr == set {
                *count += 1;
                continue 'outer;
            }
        }
        groups.push((set, 1));
    }
    groups
        .iter()
        .map(|&(_, n)| {
            let n = n as f64;
            (n / m) * (m / n).log10()
        })
        .sum()
}

fn random_bipartite_graph(seed: u64) -> EntityGraph {
    let mut rng = SplitMix64::new(seed);
    let na = 2 + rng.next_below(40) as usize;
    let nb = 2 + rng.next_below(40) as usize;
    let mut text = String::from("ET a A\nET b B\nRT r R a b\n");
    for i in 0..na {
        text.push_str(&format!("EN a{i} A{i} a\n"));
    }
    for i in 0..nb {
        text.push_str(&format!("EN b{i} B{i} b\n"));
    }
    let edges = rng.next_below((na * nb) as u64 / 2 + 1);
    for _ in 0..edges {
        let src = rng.next_below(na as u64);
        let dst = rng.next_below(nb as u64);
        text.push_str(&format!("ED r a{src} b{dst}\n"));
    }
    EntityGraph::parse(&text).unwrap()
}

#[test]
fn entropy_matches_grouping_oracle() {
    for seed in 0..40 {
        let g = random_bipartite_graph(seed);
        let s = g.schema();
        if s.rel_type_count() == 0 {
            continue;
        }
        for (key, dir) in [("a", Direction::Outgoing), ("b", Direction::Incoming)] {
            let c = candidate(&s, key, "r", dir);
            let got = score_nonkey_entropy(&g, &s, c).unwrap();
            let expected = entropy_oracle(&g, &s, c);
            assert!((got - expected).abs() <= 1e-12, "seed {seed} key {key}");
        }
    }
}

#[test]
fn entropy_bounds() {
    for seed in 100..140 {
        let g = random_bipartite_graph(seed);
        let s = g.schema();
        if s.rel_type_count() == 0 {
            continue;
        }
        let c = candidate(&s, "a", "r", Direction::Outgoing);
        let h = score_nonkey_entropy(&g, &s, c).unwrap();
        // Recompute m and the number of distinct value-sets from scratch.
        let key_idx = g.type_index("a").unwrap();
        let rel_idx = g.edge_type_index("r").unwrap();
        let mut sets: Vec<Vec<usize>> = g.members[key_idx]
            .iter()
            .map(|&entity| {
                let mut set: Vec<usize> = g
                    .edges_of_type(rel_idx)
                    .iter()
                    .filter(|e| e.src == entity)
                    .map(|e| e.dst)
                    .collect();
                set.sort_unstable();
                set.dedup();
                set
            })
            .filter(|set| !set.is_empty())
            .collect();
        let m = sets.len();
        sets.sort();
        sets.dedup();
        let distinct = sets.len();
        assert!(h >= 0.0);
        if m > 0 {
            let cap = (m as f64).log10();
            assert!(h <= cap + 1e-12);
            if distinct == m {
                assert!((h - cap).abs() <= 1e-12);
            } else {
                assert!(h < cap - 1e-12 || m == 1);
            }
        } else {
            assert_eq!(h, 0.0);
        }
    }
}
