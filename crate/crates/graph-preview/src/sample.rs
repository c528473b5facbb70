//! A bundled example dataset, handy for the guide, the tests and first
//! experiments with the CLI.

/// A small film-domain entity graph: 4 films, 2 actors, 3 directors,
/// 1 producer, 2 genres and 3 awards, connected by 7 relationship types.
/// The same file ships as `fixtures/film.eg`.
pub const FILM_GRAPH: &str = include_str!("../fixtures/film.eg");
