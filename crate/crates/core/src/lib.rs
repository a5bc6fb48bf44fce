//! Gentle algebras of annulus triangulations: arcs and strings, string and
//! band modules, extensions, annihilators and cosilting modules, with an
//! exact linear-algebra oracle for every combinatorial criterion.

pub mod algebra;
pub mod cli;
pub mod cosilting;
pub mod error;
pub mod extensions;
pub mod field;
pub mod fixtures;
pub mod homalg;
pub mod kcomplex;
pub mod linalg;
pub mod render;
pub mod representations;
pub mod strings;
pub mod suites;
pub mod surface;

pub use error::{Error, Result};
