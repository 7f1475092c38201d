//! Input and output formats: polynomial germ parsing, the dual-graph JSON
//! document with its canonical byte form, and DOT rendering.

pub mod graph;
pub mod pair;
pub mod parse;

pub use graph::{ArrowRecord, GraphDocument, Side, VertexRecord};
pub use pair::GermPair;
pub use parse::parse_poly;
