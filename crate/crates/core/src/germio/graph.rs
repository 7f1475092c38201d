//! Dual-graph document format: JSON load/save with pointer-addressed
//! diagnostics, a canonical byte form, and DOT rendering.
//!
//! Schema:
//!
//! ```json
//! {
//!   "vertices": [{"id": 1, "self_int": -2, "a": 3, "b": 2}],
//!   "edges": [[1, 2]],
//!   "arrows": [{"at": 1, "side": "f", "mult": 1}]
//! }
//! ```
//!
//! `a` and `b` are optional but must be present on all vertices or on none;
//! absent pairs are filled in by the multiplicity solver downstream. The
//! canonical form sorts vertices by id, stores each edge as `[min, max]`,
//! sorts edges lexicographically and arrows by `(at, side, mult)`. Duplicate
//! edges are rejected: the edge list denotes a set.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::error::{Error, Result};

/// Which germ of the pair an arrowhead (or a branch) belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    F,
    G,
}

impl std::fmt::Display for Side {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Side::F => "f",
            Side::G => "g",
        })
    }
}

/// One exceptional-divisor vertex record.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VertexRecord {
    pub id: i64,
    pub self_int: i64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub a: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub b: Option<u64>,
}

/// One strict-transform arrowhead record.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ArrowRecord {
    pub at: i64,
    pub side: Side,
    pub mult: u64,
}

/// A dual graph as stored on disk: vertices, tree edges, arrowheads.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Default)]
pub struct GraphDocument {
    pub vertices: Vec<VertexRecord>,
    pub edges: Vec<(i64, i64)>,
    pub arrows: Vec<ArrowRecord>,
}

fn doc_err(pointer: impl Into<String>, msg: impl Into<String>) -> Error {
    Error::GraphDocument { pointer: pointer.into(), msg: msg.into() }
}

fn as_object<'v>(v: &'v Value, ptr: &str) -> Result<&'v Map<String, Value>> {
    v.as_object().ok_or_else(|| doc_err(ptr, "expected an object"))
}

fn as_array<'v>(v: &'v Value, ptr: &str) -> Result<&'v Vec<Value>> {
    v.as_array().ok_or_else(|| doc_err(ptr, "expected an array"))
}

fn as_int(v: &Value, ptr: &str) -> Result<i64> {
    v.as_i64().ok_or_else(|| doc_err(ptr, "expected an integer"))
}

fn as_nat(v: &Value, ptr: &str) -> Result<u64> {
    v.as_u64().ok_or_else(|| doc_err(ptr, "expected a nonnegative integer"))
}

fn reject_unknown(obj: &Map<String, Value>, known: &[&str], ptr: &str) -> Result<()> {
    for key in obj.keys() {
        if !known.contains(&key.as_str()) {
            return Err(doc_err(format!("{ptr}/{key}"), "unknown field"));
        }
    }
    Ok(())
}

impl GraphDocument {
    /// Parses and validates a graph document from JSON bytes.
    ///
    /// The returned document is in canonical form. Schema and referential
    /// errors carry a JSON pointer to the offending location.
    pub fn load(json: &[u8]) -> Result<Self> {
        let root: Value = serde_json::from_slice(json)?;
        let obj = as_object(&root, "")?;
        reject_unknown(obj, &["vertices", "edges", "arrows"], "")?;

        let mut vertices = Vec::new();
        let vs = obj.get("vertices").ok_or_else(|| doc_err("", "missing field 'vertices'"))?;
        for (i, v) in as_array(vs, "/vertices")?.iter().enumerate() {
            let ptr = format!("/vertices/{i}");
            let rec = as_object(v, &ptr)?;
            reject_unknown(rec, &["id", "self_int", "a", "b"], &ptr)?;
            let id = as_int(
                rec.get("id").ok_or_else(|| doc_err(&*ptr, "missing field 'id'"))?,
                &format!("{ptr}/id"),
            )?;
            let self_int = as_int(
                rec.get("self_int").ok_or_else(|| doc_err(&*ptr, "missing field 'self_int'"))?,
                &format!("{ptr}/self_int"),
            )?;
            let a = rec.get("a").map(|v| as_nat(v, &format!("{ptr}/a"))).transpose()?;
            let b = rec.get("b").map(|v| as_nat(v, &format!("{ptr}/b"))).transpose()?;
            vertices.push(VertexRecord { id, self_int, a, b });
        }

        let mut edges = Vec::new();
        let es = obj.get("edges").ok_or_else(|| doc_err("", "missing field 'edges'"))?;
        for (i, e) in as_array(es, "/edges")?.iter().enumerate() {
            let ptr = format!("/edges/{i}");
            let pair = as_array(e, &ptr)?;
            if pair.len() != 2 {
                return Err(doc_err(&*ptr, "expected a pair [id, id]"));
            }
            let p = as_int(&pair[0], &format!("{ptr}/0"))?;
            let q = as_int(&pair[1], &format!("{ptr}/1"))?;
            edges.push((p, q));
        }

        let mut arrows = Vec::new();
        let ars = obj.get("arrows").ok_or_else(|| doc_err("", "missing field 'arrows'"))?;
        for (i, ar) in as_array(ars, "/arrows")?.iter().enumerate() {
            let ptr = format!("/arrows/{i}");
            let rec = as_object(ar, &ptr)?;
            reject_unknown(rec, &["at", "side", "mult"], &ptr)?;
            let at = as_int(
                rec.get("at").ok_or_else(|| doc_err(&*ptr, "missing field 'at'"))?,
                &format!("{ptr}/at"),
            )?;
            let side_v = rec.get("side").ok_or_else(|| doc_err(&*ptr, "missing field 'side'"))?;
            let side = match side_v.as_str() {
                Some("f") => Side::F,
                Some("g") => Side::G,
                _ => return Err(doc_err(format!("{ptr}/side"), "expected \"f\" or \"g\"")),
            };
            let mult = as_nat(
                rec.get("mult").ok_or_else(|| doc_err(&*ptr, "missing field 'mult'"))?,
                &format!("{ptr}/mult"),
            )?;
            arrows.push(ArrowRecord { at, side, mult });
        }

        let mut doc = GraphDocument { vertices, edges, arrows };
        doc.check_integrity()?;
        doc.canonicalize();
        Ok(doc)
    }

    /// Referential and uniqueness checks, with pointer-addressed errors.
    fn check_integrity(&self) -> Result<()> {
        let mut ids = BTreeSet::new();
        let mut ab_counts = (0usize, 0usize);
        for (i, v) in self.vertices.iter().enumerate() {
            if !ids.insert(v.id) {
                return Err(doc_err(format!("/vertices/{i}/id"), format!("duplicate id {}", v.id)));
            }
            ab_counts.0 += usize::from(v.a.is_some());
            ab_counts.1 += usize::from(v.b.is_some());
        }
        for (count, name) in [(ab_counts.0, "a"), (ab_counts.1, "b")] {
            if count != 0 && count != self.vertices.len() {
                return Err(doc_err(
                    "/vertices",
                    format!("field '{name}' must be present on all vertices or on none"),
                ));
            }
        }
        let mut seen_edges = BTreeSet::new();
        for (i, &(p, q)) in self.edges.iter().enumerate() {
            let ptr = format!("/edges/{i}");
            if p == q {
                return Err(doc_err(&*ptr, format!("edge joins vertex {p} to itself")));
            }
            for end in [p, q] {
                if !ids.contains(&end) {
                    return Err(doc_err(&*ptr, format!("edge references missing vertex {end}")));
                }
            }
            if !seen_edges.insert((p.min(q), p.max(q))) {
                return Err(doc_err(&*ptr, format!("duplicate edge [{}, {}]", p.min(q), p.max(q))));
            }
        }
        for (i, ar) in self.arrows.iter().enumerate() {
            if !ids.contains(&ar.at) {
                return Err(doc_err(
                    format!("/arrows/{i}/at"),
                    format!("arrow references missing vertex {}", ar.at),
                ));
            }
            if ar.mult == 0 {
                return Err(doc_err(
                    format!("/arrows/{i}/mult"),
                    "arrow multiplicity must be at least 1",
                ));
            }
        }
        Ok(())
    }

    /// Sorts vertices by id, normalizes and sorts edges, sorts arrows.
    pub fn canonicalize(&mut self) {
        self.vertices.sort_by_key(|v| v.id);
        for e in &mut self.edges {
            if e.0 > e.1 {
                *e = (e.1, e.0);
            }
        }
        self.edges.sort();
        self.arrows.sort_by_key(|a| (a.at, a.side, a.mult));
    }

    /// Serializes the canonical form as pretty-printed JSON bytes.
    pub fn save(&self) -> Vec<u8> {
        let mut doc = self.clone();
        doc.canonicalize();
        let mut bytes = serde_json::to_vec_pretty(&doc).expect("graph document serializes");
        bytes.push(b'\n');
        bytes
    }

    /// Renders the graph as a DOT digraph.
    ///
    /// Vertices are labeled `E_<id> (a,b)` (just `E_<id>` when the pair is
    /// absent); an `annotations` entry for a vertex id is appended on a
    /// second label line. Tree edges are undirected; arrowheads become
    /// directed edges to anonymous nodes labeled `<side>:<mult>`.
    pub fn emit_dot(&self, annotations: &BTreeMap<i64, String>) -> String {
        let mut doc = self.clone();
        doc.canonicalize();
        let mut out = String::new();
        out.push_str("digraph dual_graph {\n");
        out.push_str("  rankdir=LR;\n");
        out.push_str("  node [shape=circle, fontsize=11];\n");
        for v in &doc.vertices {
            let mut label = match (v.a, v.b) {
                (Some(a), Some(b)) => format!("E_{} ({a},{b})", v.id),
                _ => format!("E_{}", v.id),
            };
            if let Some(extra) = annotations.get(&v.id) {
                label.push_str("\\n");
                label.push_str(&dot_escape(extra));
            }
            out.push_str(&format!("  v{} [label=\"{label}\"];\n", v.id));
        }
        for &(p, q) in &doc.edges {
            out.push_str(&format!("  v{p} -> v{q} [dir=none];\n"));
        }
        for (i, ar) in doc.arrows.iter().enumerate() {
            out.push_str(&format!("  arw{i} [shape=none, label=\"\"];\n"));
            out.push_str(&format!(
                "  v{} -> arw{i} [label=\"{}:{}\"];\n",
                ar.at, ar.side, ar.mult
            ));
        }
        out.push_str("}\n");
        out
    }
}

fn dot_escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testsupport::cusp_pair_doc;

    #[test]
    fn empty_document_is_canonical() {
        let doc = GraphDocument::load(br#"{"vertices":[],"edges":[],"arrows":[]}"#).unwrap();
        assert_eq!(doc, GraphDocument::default());
        let bytes = doc.save();
        assert_eq!(GraphDocument::load(&bytes).unwrap(), doc);
    }

    #[test]
    fn golden_document_round_trips_byte_identically() {
        let doc = cusp_pair_doc();
        let bytes = doc.save();
        let reloaded = GraphDocument::load(&bytes).unwrap();
        assert_eq!(reloaded, doc);
        assert_eq!(reloaded.save(), bytes);
    }

    #[test]
    fn canonicalization_sorts_and_normalizes() {
        let scrambled = br#"{
            "vertices": [{"id": 2, "self_int": -2}, {"id": 1, "self_int": -1}],
            "edges": [[2, 1]],
            "arrows": []
        }"#;
        let doc = GraphDocument::load(scrambled).unwrap();
        assert_eq!(doc.vertices[0].id, 1);
        assert_eq!(doc.edges, vec![(1, 2)]);
    }

    #[test]
    fn dangling_edge_reference_is_pointed_at() {
        let bad = br#"{"vertices":[{"id":1,"self_int":-1}],"edges":[[1,7]],"arrows":[]}"#;
        let err = GraphDocument::load(bad).unwrap_err();
        let Error::GraphDocument { pointer, msg } = err else { panic!("wrong variant") };
        assert_eq!(pointer, "/edges/0");
        assert!(msg.contains("missing vertex 7"), "{msg}");
    }

    #[test]
    fn schema_violations_carry_pointers() {
        let cases: &[(&[u8], &str)] = &[
            (br#"{"vertices":[{"id":1}],"edges":[],"arrows":[]}"#, "/vertices/0"),
            (br#"{"vertices":[{"id":1,"self_int":-1,"x":0}],"edges":[],"arrows":[]}"#, "/vertices/0/x"),
            (br#"{"vertices":[{"id":1,"self_int":1.5}],"edges":[],"arrows":[]}"#, "/vertices/0/self_int"),
            (br#"{"vertices":[{"id":1,"self_int":-1,"a":-2}],"edges":[],"arrows":[]}"#, "/vertices/0/a"),
            (br#"{"vertices":[{"id":1,"self_int":-1}],"edges":[[1,1]],"arrows":[]}"#, "/edges/0"),
            (br#"{"vertices":[{"id":1,"self_int":-1}],"edges":[[1]],"arrows":[]}"#, "/edges/0"),
            (br#"{"vertices":[{"id":1,"self_int":-1}],"edges":[],"arrows":[{"at":1,"side":"h","mult":1}]}"#, "/arrows/0/side"),
            (br#"{"vertices":[{"id":1,"self_int":-1}],"edges":[],"arrows":[{"at":1,"side":"f","mult":0}]}"#, "/arrows/0/mult"),
            (br#"{"vertices":[{"id":1,"self_int":-1},{"id":1,"self_int":-2}],"edges":[],"arrows":[]}"#, "/vertices/1/id"),
            (br#"{"vertices":[{"id":1,"self_int":-1},{"id":2,"self_int":-2}],"edges":[[1,2],[2,1]],"arrows":[]}"#, "/edges/1"),
            (br#"{"vertices":[{"id":1,"self_int":-1,"a":2},{"id":2,"self_int":-2}],"edges":[],"arrows":[]}"#, "/vertices"),
        ];
        for (bytes, want) in cases {
            let err = GraphDocument::load(bytes).unwrap_err();
            let Error::GraphDocument { pointer, .. } = err else {
                panic!("wrong variant for {}", String::from_utf8_lossy(bytes))
            };
            assert_eq!(&pointer, want, "on {}", String::from_utf8_lossy(bytes));
        }
    }

    #[test]
    fn malformed_json_is_a_json_error() {
        assert!(matches!(GraphDocument::load(b"{"), Err(Error::Json(_))));
    }

    #[test]
    fn dot_output_has_figure_labels_and_arrow_marks() {
        let doc = cusp_pair_doc();
        let dot = doc.emit_dot(&BTreeMap::new());
        assert!(dot.contains("v3 [label=\"E_3 (6,4)\"]"), "{dot}");
        assert!(dot.contains("[label=\"f:1\"]"), "{dot}");
        assert!(dot.contains("v1 -> v3 [dir=none]"), "{dot}");

        let notes = BTreeMap::from([(1i64, "(-5)".to_string())]);
        let dot = doc.emit_dot(&notes);
        assert!(dot.contains("E_1 (2,2)\\n(-5)"), "{dot}");
    }
}
