//! Hand-transcribed dual principal graphs and their comparison with generated graphs.
//!
//! Vertices are matched by their pair sets, so neither vertex order nor the
//! numbering of the split vertices matters.

use std::collections::{BTreeMap, BTreeSet};

use anyhow::{bail, Context};
use asymdouble_core::{BipartiteGraph, FieldTable, Model};
use serde::Deserialize;

use crate::document::ModelRef;

pub const SU2_4_DUAL: &str = include_str!("../fixtures/su2_4_dual.json");
pub const SU2_6_DUAL: &str = include_str!("../fixtures/su2_6_dual.json");
pub const SU3_3_DUAL: &str = include_str!("../fixtures/su3_3_dual.json");
pub const SU3_6_SPLIT: &str = include_str!("../fixtures/su3_6_split.json");
pub const SU2_6_DUAL_DOT: &str = include_str!("../fixtures/su2_6_dual.dot");

#[derive(Debug, Clone, Deserialize)]
pub struct FixtureVertex {
    pub label: String,
    pub dimension: f64,
}

#[derive(Debug, Clone, Deserialize)]
pub struct FixtureEven {
    pub label: String,
    pub pairs: Vec<[String; 2]>,
    pub split: Option<usize>,
    pub dimension: f64,
}

#[derive(Debug, Clone, Deserialize)]
pub struct FixtureEdge {
    pub even: String,
    pub odd: String,
    pub multiplicity: u32,
    pub source: String,
}

/// A complete transcribed graph.
#[derive(Debug, Clone, Deserialize)]
pub struct GraphFixture {
    pub model: ModelRef,
    pub note: String,
    /// Figure name → Dynkin labels.
    pub fields: BTreeMap<String, String>,
    pub odd: Vec<FixtureVertex>,
    pub even: Vec<FixtureEven>,
    pub edges: Vec<FixtureEdge>,
}

#[derive(Debug, Clone, Deserialize)]
pub struct FixtureSplitRow {
    pub split: usize,
    pub odd: Vec<String>,
    pub source: String,
}

/// Only the neighbourhood of the split vertices.
#[derive(Debug, Clone, Deserialize)]
pub struct SplitFixture {
    pub model: ModelRef,
    pub note: String,
    pub fields: BTreeMap<String, String>,
    pub split_rows: Vec<FixtureSplitRow>,
}

type Labels = Vec<u32>;
type EdgeMap = BTreeMap<Labels, u32>;

fn parse_labels(s: &str) -> anyhow::Result<Labels> {
    s.split(',')
        .map(|p| p.trim().parse::<u32>().with_context(|| format!("bad Dynkin labels {s:?}")))
        .collect()
}

fn resolve(fields: &BTreeMap<String, String>, name: &str) -> anyhow::Result<Labels> {
    let dynkin = fields
        .get(name)
        .with_context(|| format!("fixture field {name:?} has no Dynkin labels"))?;
    parse_labels(dynkin)
}

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(1.0)
}

fn model_of(graph: &BipartiteGraph, model: &ModelRef) -> anyhow::Result<FieldTable> {
    if (graph.rank, graph.level) != (model.rank, model.level) {
        bail!(
            "fixture is for SU({})_{}, graph is SU({})_{}",
            model.rank,
            model.level,
            graph.rank,
            graph.level
        );
    }
    Ok(FieldTable::new(Model::new(graph.rank, graph.level)?))
}

struct Canonical {
    odd: BTreeMap<Labels, f64>,
    plain: BTreeMap<BTreeSet<(Labels, Labels)>, (f64, EdgeMap)>,
    split: Vec<(f64, EdgeMap)>,
}

fn canonical_graph(graph: &BipartiteGraph, table: &FieldTable) -> Canonical {
    let labels = |i: usize| table.field(i).labels().to_vec();
    let odd = graph.odd.iter().map(|o| (labels(o.field), o.dim)).collect();
    let mut plain = BTreeMap::new();
    let mut split = Vec::new();
    for (v, row) in graph.even.iter().zip(&graph.edges) {
        let edges: EdgeMap = row
            .iter()
            .zip(&graph.odd)
            .filter(|(&m, _)| m > 0)
            .map(|(&m, o)| (labels(o.field), m))
            .collect();
        match v.split {
            Some(_) => split.push((v.dim, edges)),
            None => {
                let key = v.pairs.iter().map(|&(a, b)| (labels(a), labels(b))).collect();
                plain.insert(key, (v.dim, edges));
            }
        }
    }
    split.sort_by(|x, y| x.1.cmp(&y.1));
    Canonical { odd, plain, split }
}

fn canonical_fixture(fix: &GraphFixture) -> anyhow::Result<Canonical> {
    let name = |s: &str| resolve(&fix.fields, s);
    let odd_names: BTreeMap<&str, Labels> = fix
        .odd
        .iter()
        .map(|o| Ok((o.label.as_str(), name(&o.label)?)))
        .collect::<anyhow::Result<_>>()?;
    let odd = fix
        .odd
        .iter()
        .map(|o| Ok((name(&o.label)?, o.dimension)))
        .collect::<anyhow::Result<_>>()?;
    let mut edges: BTreeMap<&str, EdgeMap> = BTreeMap::new();
    for e in &fix.edges {
        let target = odd_names
            .get(e.odd.as_str())
            .with_context(|| format!("edge to unknown odd vertex {:?}", e.odd))?;
        *edges.entry(&e.even).or_default().entry(target.clone()).or_default() += e.multiplicity;
    }
    let mut plain = BTreeMap::new();
    let mut split = Vec::new();
    for v in &fix.even {
        let row = edges.remove(v.label.as_str()).unwrap_or_default();
        match v.split {
            Some(_) => split.push((v.dimension, row)),
            None => {
                let key = v
                    .pairs
                    .iter()
                    .map(|[a, b]| Ok((name(a)?, name(b)?)))
                    .collect::<anyhow::Result<_>>()?;
                plain.insert(key, (v.dimension, row));
            }
        }
    }
    if let Some(label) = edges.keys().next() {
        bail!("edge from unknown even vertex {label:?}");
    }
    split.sort_by(|x, y| x.1.cmp(&y.1));
    Ok(Canonical { odd, plain, split })
}

/// Differences between a generated graph and a transcribed one; empty when they agree.
pub fn compare_graph(fix: &GraphFixture, graph: &BipartiteGraph, tol: f64) -> anyhow::Result<Vec<String>> {
    let table = model_of(graph, &fix.model)?;
    let want = canonical_fixture(fix)?;
    let got = canonical_graph(graph, &table);
    let mut diffs = Vec::new();
    if want.odd.keys().ne(got.odd.keys()) {
        diffs.push(format!(
            "odd vertices differ: expected {:?}, got {:?}",
            want.odd.keys().collect::<Vec<_>>(),
            got.odd.keys().collect::<Vec<_>>()
        ));
    }
    for (k, d) in &want.odd {
        if let Some(g) = got.odd.get(k) {
            if !close(*d, *g, tol) {
                diffs.push(format!("odd {k:?}: dimension {g} != {d}"));
            }
        }
    }
    for (key, (dim, edges)) in &want.plain {
        match got.plain.get(key) {
            None => diffs.push(format!("missing even vertex {key:?}")),
            Some((gd, ge)) => {
                if !close(*dim, *gd, tol) {
                    diffs.push(format!("even {key:?}: dimension {gd} != {dim}"));
                }
                if edges != ge {
                    diffs.push(format!("even {key:?}: edges {ge:?} != {edges:?}"));
                }
            }
        }
    }
    for key in got.plain.keys().filter(|k| !want.plain.contains_key(*k)) {
        diffs.push(format!("unexpected even vertex {key:?}"));
    }
    if want.split.len() != got.split.len() {
        diffs.push(format!(
            "{} split vertices, expected {}",
            got.split.len(),
            want.split.len()
        ));
    }
    for ((wd, we), (gd, ge)) in want.split.iter().zip(&got.split) {
        if !close(*wd, *gd, tol) || we != ge {
            diffs.push(format!("split vertex: got {gd} {ge:?}, expected {wd} {we:?}"));
        }
    }
    Ok(diffs)
}

/// Differences between generated split rows and the transcribed neighbourhood.
pub fn compare_split(fix: &SplitFixture, graph: &BipartiteGraph) -> anyhow::Result<Vec<String>> {
    let table = model_of(graph, &fix.model)?;
    let mut want: Vec<EdgeMap> = fix
        .split_rows
        .iter()
        .map(|r| {
            r.odd
                .iter()
                .map(|n| Ok((resolve(&fix.fields, n)?, 1)))
                .collect::<anyhow::Result<EdgeMap>>()
        })
        .collect::<anyhow::Result<_>>()?;
    let mut got: Vec<EdgeMap> = canonical_graph(graph, &table)
        .split
        .into_iter()
        .map(|(_, e)| e)
        .collect();
    want.sort();
    got.sort();
    if want == got {
        Ok(Vec::new())
    } else {
        Ok(vec![format!("split rows {got:?} != {want:?}")])
    }
}

pub fn graph_fixture(text: &str) -> anyhow::Result<GraphFixture> {
    Ok(serde_json::from_str(text)?)
}

pub fn split_fixture(text: &str) -> anyhow::Result<SplitFixture> {
    Ok(serde_json::from_str(text)?)
}

/// The transcribed complete graphs, by model.
pub fn graph_fixtures() -> anyhow::Result<Vec<GraphFixture>> {
    [SU2_4_DUAL, SU2_6_DUAL, SU3_3_DUAL]
        .into_iter()
        .map(graph_fixture)
        .collect()
}
