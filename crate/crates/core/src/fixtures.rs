//! The two shipped triangulations.

use crate::algebra::Model;
use crate::surface::parse_triangulation;

/// One marked point on each boundary: the Kronecker quiver.
pub const FIXTURE_11: &str = include_str!("../fixtures/fixture-11.json");
/// Three outer and two inner points, with arrows named `a`–`h`.
pub const FIXTURE_32: &str = include_str!("../fixtures/fixture-32.json");

pub fn kronecker() -> Model {
    Model::new(parse_triangulation(FIXTURE_11).expect("shipped fixture"))
}

pub fn running_example() -> Model {
    Model::new(parse_triangulation(FIXTURE_32).expect("shipped fixture"))
}

/// Both fixtures, labelled.
pub fn all() -> Vec<(&'static str, Model)> {
    vec![("fixture-11", kronecker()), ("fixture-32", running_example())]
}

/// A shipped fixture by file name, with or without `.json`.
pub fn by_name(name: &str) -> Option<Model> {
    match name.trim_end_matches(".json") {
        "fixture-11" => Some(kronecker()),
        "fixture-32" => Some(running_example()),
        _ => None,
    }
}
