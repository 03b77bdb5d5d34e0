//! Polygonal presentations over generalized polygons: validation, the
//! polyhedra they define, their symmetries and fundamental groups, balls in
//! the universal cover, and exhaustive search.

pub mod acceptance;
pub mod complex;
pub mod develop;
pub mod error;
pub mod grouppres;
pub mod incidence;
pub mod presentation;
pub mod report;
pub mod search;
pub mod symmetry;

pub use error::{Error, Result};
