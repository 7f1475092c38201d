//! Shared fixtures for unit tests: the worked dual graphs that several
//! modules check their outputs against.

use crate::germio::{ArrowRecord, GraphDocument, Side, VertexRecord};

/// Five-vertex graph of the cusp pair `(x^2 + y^3, x^3 + y^2)`:
/// a path `E2 - E3 - E1 - E5 - E4` with an f-arrow at `E3` and a
/// g-arrow at `E5`, multiplicity pairs (2,2),(3,2),(6,4),(2,3),(4,6).
pub fn cusp_pair_doc() -> GraphDocument {
    GraphDocument {
        vertices: vec![
            VertexRecord { id: 1, self_int: -5, a: Some(2), b: Some(2) },
            VertexRecord { id: 2, self_int: -2, a: Some(3), b: Some(2) },
            VertexRecord { id: 3, self_int: -1, a: Some(6), b: Some(4) },
            VertexRecord { id: 4, self_int: -2, a: Some(2), b: Some(3) },
            VertexRecord { id: 5, self_int: -1, a: Some(4), b: Some(6) },
        ],
        edges: vec![(1, 3), (1, 5), (2, 3), (4, 5)],
        arrows: vec![
            ArrowRecord { at: 3, side: Side::F, mult: 1 },
            ArrowRecord { at: 5, side: Side::G, mult: 1 },
        ],
    }
}

/// Three-vertex chain of the single cusp `x^2 + y^3` (g = 1):
/// `E1 - E3 - E2` with an f-arrow at `E3`, multiplicities 2, 3, 6.
pub fn cusp_doc() -> GraphDocument {
    GraphDocument {
        vertices: vec![
            VertexRecord { id: 1, self_int: -3, a: Some(2), b: Some(0) },
            VertexRecord { id: 2, self_int: -2, a: Some(3), b: Some(0) },
            VertexRecord { id: 3, self_int: -1, a: Some(6), b: Some(0) },
        ],
        edges: vec![(1, 3), (2, 3)],
        arrows: vec![ArrowRecord { at: 3, side: Side::F, mult: 1 }],
    }
}
