//! Serialized forms of bipartite graphs: a JSON document and Graphviz DOT.

use std::fmt::Write as _;

use asymdouble_core::{BipartiteGraph, FieldTable, Model};
use serde::{Deserialize, Serialize};

pub const GENERATOR: &str = concat!("asymdouble ", env!("CARGO_PKG_VERSION"));

/// Rounds to 12 significant digits so output is stable across platforms.
pub fn round12(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    format!("{x:.11e}").parse().unwrap_or(x)
}

/// Fixed 12-significant-digit text form used in tables.
pub fn fmt12(x: f64) -> String {
    let r = round12(x);
    if r == r.trunc() && r.abs() < 1e15 {
        format!("{r:.1}")
    } else {
        format!("{r}")
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModelRef {
    pub rank: u32,
    pub level: u32,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OddEntry {
    pub id: String,
    pub label: String,
    /// Dynkin labels, comma separated.
    pub field: String,
    pub dimension: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvenEntry {
    pub id: String,
    pub label: String,
    /// Orbit representatives as pairs of Dynkin labels.
    pub pairs: Vec<[String; 2]>,
    pub split: Option<usize>,
    pub dimension: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Provenance {
    pub generator: String,
    pub tolerance: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GraphDocument {
    pub kind: String,
    pub model: ModelRef,
    pub odd: Vec<OddEntry>,
    pub even: Vec<EvenEntry>,
    /// [even id, odd id, multiplicity]
    pub edges: Vec<(String, String, u32)>,
    pub provenance: Provenance,
}

impl GraphDocument {
    pub fn from_graph(graph: &BipartiteGraph, tolerance: f64) -> anyhow::Result<Self> {
        let table = FieldTable::new(Model::new(graph.rank, graph.level)?);
        let dynkin = |i: usize| table.field(i).dynkin_label();
        let odd = graph
            .odd
            .iter()
            .enumerate()
            .map(|(i, o)| OddEntry {
                id: format!("o{i}"),
                label: o.label.clone(),
                field: dynkin(o.field),
                dimension: round12(o.dim),
            })
            .collect();
        let even = graph
            .even
            .iter()
            .enumerate()
            .map(|(i, v)| EvenEntry {
                id: format!("e{i}"),
                label: v.label.clone(),
                pairs: v.pairs.iter().map(|&(a, b)| [dynkin(a), dynkin(b)]).collect(),
                split: v.split,
                dimension: round12(v.dim),
            })
            .collect();
        let mut edges = Vec::new();
        for (v, row) in graph.edges.iter().enumerate() {
            for (c, &m) in row.iter().enumerate() {
                if m > 0 {
                    edges.push((format!("e{v}"), format!("o{c}"), m));
                }
            }
        }
        Ok(GraphDocument {
            kind: graph.kind.as_str().to_string(),
            model: ModelRef {
                rank: graph.rank,
                level: graph.level,
            },
            odd,
            even,
            edges,
            provenance: Provenance {
                generator: GENERATOR.to_string(),
                tolerance,
            },
        })
    }

    pub fn to_json(&self) -> anyhow::Result<String> {
        let mut out = serde_json::to_string_pretty(self)?;
        out.push('\n');
        Ok(out)
    }

    pub fn from_json(text: &str) -> anyhow::Result<Self> {
        Ok(serde_json::from_str(text)?)
    }
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Undirected DOT: odd vertices as circles, even as squares, one line per
/// unit of edge multiplicity.
pub fn to_dot(graph: &BipartiteGraph) -> String {
    let mut out = String::new();
    let name = format!("SU({})_{} {}", graph.rank, graph.level, graph.kind.as_str());
    let _ = writeln!(out, "graph {} {{", quote(&name));
    for (i, o) in graph.odd.iter().enumerate() {
        let _ = writeln!(out, "  o{i} [shape=circle, label={}];", quote(&o.label));
    }
    for (i, v) in graph.even.iter().enumerate() {
        let _ = writeln!(out, "  e{i} [shape=square, label={}];", quote(&v.label));
    }
    for (v, row) in graph.edges.iter().enumerate() {
        for (c, &m) in row.iter().enumerate() {
            for _ in 0..m {
                let _ = writeln!(out, "  e{v} -- o{c};");
            }
        }
    }
    out.push_str("}\n");
    out
}

/// Plain-text listing: vertices with dimensions, then neighbours of each even vertex.
pub fn to_table(graph: &BipartiteGraph) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "SU({})_{} {} graph: {} odd, {} even vertices",
        graph.rank,
        graph.level,
        graph.kind.as_str(),
        graph.odd.len(),
        graph.even.len()
    );
    let _ = writeln!(out, "odd:");
    for o in &graph.odd {
        let _ = writeln!(out, "  {:<12} {}", o.label, fmt12(o.dim));
    }
    let _ = writeln!(out, "even:");
    for (v, row) in graph.even.iter().zip(&graph.edges) {
        let neighbours: Vec<String> = row
            .iter()
            .zip(&graph.odd)
            .filter(|(&m, _)| m > 0)
            .map(|(&m, o)| if m == 1 { o.label.clone() } else { format!("{}x{m}", o.label) })
            .collect();
        let _ = writeln!(out, "  {:<24} {:<16} {}", v.label, fmt12(v.dim), neighbours.join(" "));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rounding_keeps_twelve_digits() {
        assert_eq!(round12(2.414213562373095), 2.41421356237);
        assert_eq!(round12(1.0), 1.0);
        assert_eq!(round12(round12(1.0 / 3.0)), round12(1.0 / 3.0));
        assert_eq!(fmt12(3.0), "3.0");
        assert_eq!(fmt12(0.1 + 0.2), "0.3");
    }

    #[test]
    fn dot_quotes_labels() {
        assert_eq!(quote("a\"b"), "\"a\\\"b\"");
    }
}
