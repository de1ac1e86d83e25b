//! Oriented planar diagrams, tangles, rational closures and link families.

pub mod corpus;
pub mod families;
pub mod io;
pub mod nine;
pub mod pd;
pub mod tangle;

pub use pd::{validate, Crossing, CrossingStats, Dart, Diagnostic, PDCode, StateCircles, UnionFind};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DiagramError {
    #[error("invalid diagram: {0}")]
    Invalid(#[from] Diagnostic),
    #[error("crossing index {0} out of range")]
    CrossingIndex(usize),
    #[error("edge index {0} out of range")]
    EdgeIndex(usize),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("bad parameters: {0}")]
    Params(String),
}
