//! Principal and dual principal graphs of the asymptotic inclusion of the
//! grade-0 system M of SU(n)_k.
//!
//! The principal graph is the fusion graph of M: odd vertices are the fields
//! of M, even vertices the pairs (a,b) over M. When n does not divide k the
//! dual graph is the same graph. When n | k the dual even vertices are σ-orbits
//! of grade-balanced pairs, with the fixed pair (f,f) split into n vertices
//! whose edges are found by exhaustive search.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::alcove::FieldTable;
use crate::error::{Error, Result};
use crate::wzw::Wzw;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GraphKind {
    Principal,
    Dual,
}

impl GraphKind {
    pub fn as_str(self) -> &'static str {
        match self {
            GraphKind::Principal => "principal",
            GraphKind::Dual => "dual",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct OddVertex {
    pub field: usize,
    pub label: String,
    pub dim: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EvenVertex {
    pub label: String,
    /// Pairs (a,b) of field indices; a σ-orbit for dual vertices.
    pub pairs: Vec<(usize, usize)>,
    pub split: Option<usize>,
    pub dim: f64,
}

/// Bipartite graph with an even × odd edge-multiplicity matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct BipartiteGraph {
    pub kind: GraphKind,
    pub rank: u32,
    pub level: u32,
    pub odd: Vec<OddVertex>,
    pub even: Vec<EvenVertex>,
    pub edges: Vec<Vec<u32>>,
}

impl BipartiteGraph {
    pub fn edge(&self, v: usize, c: usize) -> u32 {
        self.edges[v][c]
    }

    pub fn odd_position(&self, field: usize) -> Option<usize> {
        self.odd.iter().position(|o| o.field == field)
    }

    /// Σ_v E(v,c)E(v,d): paths of length two between odd vertices c and d.
    pub fn paths(&self, c: usize, d: usize) -> u64 {
        self.edges
            .iter()
            .map(|row| row[c] as u64 * row[d] as u64)
            .sum()
    }

    pub fn is_connected(&self) -> bool {
        let (n_odd, n_even) = (self.odd.len(), self.even.len());
        if n_odd + n_even == 0 {
            return true;
        }
        // odd vertices are 0..n_odd, even vertices follow
        let mut seen = vec![false; n_odd + n_even];
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        while let Some(u) = queue.pop_front() {
            let neighbours: Vec<usize> = if u < n_odd {
                (0..n_even)
                    .filter(|&v| self.edges[v][u] > 0)
                    .map(|v| n_odd + v)
                    .collect()
            } else {
                (0..n_odd).filter(|&c| self.edges[u - n_odd][c] > 0).collect()
            };
            for w in neighbours {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    fn ensure_connected(&self) -> Result<()> {
        if self.is_connected() {
            return Ok(());
        }
        Err(Error::Disconnected(format!(
            "{} graph of SU({})_{}",
            self.kind.as_str(),
            self.rank,
            self.level
        )))
    }
}

fn pair_label(table: &FieldTable, a: usize, b: usize) -> String {
    let (x, y) = (table.field(a).to_string(), table.field(b).to_string());
    if table.model().rank() == 2 && (x.len() > 1 || y.len() > 1) {
        format!("{x},{y}")
    } else {
        format!("{x}{y}")
    }
}

fn split_label(table: &FieldTable, f: usize, i: usize) -> String {
    let base = pair_label(table, f, f);
    if table.model().rank() == 2 {
        format!("{base}{}", ["+", "\u{2212}"][i])
    } else {
        format!("{base}_{i}")
    }
}

fn grade_zero(wzw: &Wzw) -> Vec<usize> {
    wzw.table().with_grade(0)
}

/// Fusion graph of the grade-0 system: odd M, even M × M, edges N_{ab}^c.
pub fn principal_graph(wzw: &Wzw) -> Result<BipartiteGraph> {
    let table = wzw.table();
    let members = grade_zero(wzw);
    let odd: Vec<OddVertex> = members
        .iter()
        .map(|&c| OddVertex {
            field: c,
            label: table.field(c).to_string(),
            dim: wzw.qdim(c),
        })
        .collect();
    let mut even = Vec::with_capacity(members.len() * members.len());
    let mut edges = Vec::with_capacity(members.len() * members.len());
    for &a in &members {
        for &b in &members {
            even.push(EvenVertex {
                label: pair_label(table, a, b),
                pairs: vec![(a, b)],
                split: None,
                dim: wzw.qdim(a) * wzw.qdim(b),
            });
            edges.push(members.iter().map(|&c| wzw.n(a, b, c)).collect());
        }
    }
    let graph = BipartiteGraph {
        kind: GraphKind::Principal,
        rank: wzw.model().rank(),
        level: wzw.model().level(),
        odd,
        even,
        edges,
    };
    graph.ensure_connected()?;
    Ok(graph)
}

/// One even vertex of the dual graph in the degenerate case.
#[derive(Debug, Clone, PartialEq)]
pub struct OcneanuClass {
    /// (σʲa, σ^{n−j}b) for j = 0..n, starting from the smallest pair.
    pub orbit: Vec<(usize, usize)>,
    pub split: Option<usize>,
    pub dim: f64,
}

impl OcneanuClass {
    pub fn representative(&self) -> (usize, usize) {
        self.orbit[0]
    }

    /// True if the representative involves fields outside the grade-0 system.
    pub fn is_ghost(&self, table: &FieldTable) -> bool {
        let (a, b) = self.representative();
        table.grade(a) != 0 || table.grade(b) != 0
    }
}

fn require_fixed_point(wzw: &Wzw) -> Result<usize> {
    let model = wzw.model();
    wzw.table().fixed_point_index().ok_or(Error::NoFixedPoint {
        rank: model.rank(),
        level: model.level(),
    })
}

/// Grade-balanced pairs up to (a,b) ~ (σa, σ^{n−1}b), the fixed orbit {(f,f)}
/// expanded into n split classes of dimension qdim(f)²/n.
pub fn ocneanu_classes(wzw: &Wzw) -> Result<Vec<OcneanuClass>> {
    let f = require_fixed_point(wzw)?;
    let table = wzw.table();
    let n = wzw.model().rank();
    let size = table.len();
    let mut seen = vec![false; size * size];
    let mut out = Vec::new();
    for a in 0..size {
        for b in 0..size {
            if seen[a * size + b] || (table.grade(a) + table.grade(b)) % n != 0 {
                continue;
            }
            let mut orbit = Vec::with_capacity(n as usize);
            for j in 0..n as i64 {
                let pair = (table.sigma(a, j), table.sigma(b, -j));
                if !orbit.contains(&pair) {
                    orbit.push(pair);
                }
                seen[pair.0 * size + pair.1] = true;
            }
            if (a, b) == (f, f) {
                let dim = wzw.qdim(f).powi(2) / n as f64;
                out.extend((0..n as usize).map(|i| OcneanuClass {
                    orbit: orbit.clone(),
                    split: Some(i),
                    dim,
                }));
            } else {
                if orbit.len() != n as usize {
                    return Err(Error::Internal(format!(
                        "orbit of {} has size {}",
                        pair_label(table, a, b),
                        orbit.len()
                    )));
                }
                out.push(OcneanuClass {
                    orbit,
                    split: None,
                    dim: wzw.qdim(a) * wzw.qdim(b),
                });
            }
        }
    }
    Ok(out)
}

/// Result of the split-edge search. Rows index the split vertices (row 0 is
/// the one adjacent to the vacuum), columns are the grade-0 fields.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitSearch {
    pub columns: Vec<usize>,
    /// Canonical solutions satisfying every constraint.
    pub solutions: Vec<Vec<Vec<u32>>>,
    /// Number of canonical solutions of the column-sum, weight and vacuum
    /// path-count constraints alone, before the bilinear path counts.
    pub weaker_count: usize,
}

impl SplitSearch {
    pub fn unique(&self) -> Option<&Vec<Vec<u32>>> {
        match self.solutions.as_slice() {
            [only] => Some(only),
            _ => None,
        }
    }
}

// non-split classes whose representatives satisfy the orbit well-definedness check
fn non_split_edges(wzw: &Wzw, classes: &[OcneanuClass], members: &[usize]) -> Result<Vec<Vec<u32>>> {
    let table = wzw.table();
    classes
        .iter()
        .filter(|cl| cl.split.is_none())
        .map(|cl| {
            let (a, b) = cl.representative();
            members
                .iter()
                .map(|&c| {
                    let value = wzw.n(a, b, c);
                    if cl.orbit.iter().any(|&(x, y)| wzw.n(x, y, c) != value) {
                        return Err(Error::NotWellDefined {
                            pair: pair_label(table, a, b),
                            odd: table.field(c).to_string(),
                        });
                    }
                    Ok(value)
                })
                .collect()
        })
        .collect()
}

struct Search<'a> {
    rows: usize,
    order: Vec<usize>,
    col_sum: Vec<u32>,
    vacuum_row: Vec<u32>,
    weights: Vec<f64>,
    target: f64,
    tolerance: f64,
    bilinear: &'a [Vec<i64>],
    involutions: Vec<Vec<usize>>,
    grid: Vec<Vec<u32>>,
    partial: Vec<f64>,
    weaker: BTreeSet<Vec<Vec<u32>>>,
    found: BTreeSet<Vec<Vec<u32>>>,
}

fn canonical(grid: &[Vec<u32>]) -> Vec<Vec<u32>> {
    let mut rows = grid.to_vec();
    rows.sort_unstable_by(|x, y| y.cmp(x));
    rows
}

impl Search<'_> {
    fn run(&mut self, depth: usize) {
        if depth == self.order.len() {
            self.finish();
            return;
        }
        let c = self.order[depth];
        let first = self.vacuum_row[c];
        if first > self.col_sum[c] {
            return;
        }
        let mut rest = vec![0u32; self.rows];
        rest[0] = first;
        self.distribute(depth, c, 1, self.col_sum[c] - first, &mut rest);
    }

    fn distribute(&mut self, depth: usize, c: usize, row: usize, left: u32, column: &mut Vec<u32>) {
        if row == self.rows - 1 || self.rows == 1 {
            if self.rows == 1 && left > 0 {
                return;
            }
            if self.rows > 1 {
                column[row] = left;
            }
            let fits = (0..self.rows).all(|i| {
                self.partial[i] + column[i] as f64 * self.weights[c] <= self.target + self.tolerance
            });
            if !fits {
                return;
            }
            for i in 0..self.rows {
                self.grid[i][c] = column[i];
                self.partial[i] += column[i] as f64 * self.weights[c];
            }
            self.run(depth + 1);
            for i in 0..self.rows {
                self.partial[i] -= column[i] as f64 * self.weights[c];
                self.grid[i][c] = 0;
            }
            return;
        }
        for v in 0..=left {
            column[row] = v;
            self.distribute(depth, c, row + 1, left - v, column);
        }
        column[row] = 0;
    }

    fn finish(&mut self) {
        if self
            .partial
            .iter()
            .any(|&p| (p - self.target).abs() > self.tolerance)
        {
            return;
        }
        let form = canonical(&self.grid);
        self.weaker.insert(form.clone());
        let cols = self.grid[0].len();
        let grid = &self.grid;
        let bilinear = self.bilinear;
        let consistent = self.involutions.iter().any(|pi| {
            (0..cols).all(|c| {
                (0..cols).all(|d| {
                    let sum: i64 = (0..grid.len())
                        .map(|i| grid[i][c] as i64 * grid[pi[i]][d] as i64)
                        .sum();
                    sum == bilinear[c][d]
                })
            })
        });
        if consistent {
            self.found.insert(form);
        }
    }
}

// involutions of the split rows fixing row 0
fn row_involutions(rows: usize) -> Vec<Vec<usize>> {
    let identity: Vec<usize> = (0..rows).collect();
    let mut out = vec![identity.clone()];
    for i in 1..rows {
        for j in i + 1..rows {
            let mut p = identity.clone();
            p.swap(i, j);
            out.push(p);
        }
    }
    out
}

/// Enumerates the edge matrices E (split vertices × grade-0 fields) with
/// column sums N_{ff}^c, row weights Σ_c E_{ic}·qdim(c) = qdim(f)²/n, and the
/// path counts between odd vertices that the principal graph forces:
/// Σ_v E(v,c)E(v̄,d) summed over the whole dual graph equals the same count on
/// the principal graph, where the contragredient permutes split rows by an
/// involution fixing the vacuum row.
pub fn solve_split_edges(wzw: &Wzw) -> Result<SplitSearch> {
    let f = require_fixed_point(wzw)?;
    let table = wzw.table();
    let n = wzw.model().rank() as usize;
    let members = grade_zero(wzw);
    let m = members.len();
    let classes = ocneanu_classes(wzw)?;
    // fails early if some class has orbit-dependent edges
    non_split_edges(wzw, &classes, &members)?;
    let reps: Vec<(usize, usize)> = classes
        .iter()
        .filter(|cl| cl.split.is_none())
        .map(|cl| cl.representative())
        .collect();

    // principal count minus the non-split part, for every pair of odd vertices
    let mut bilinear = vec![vec![0i64; m]; m];
    for (ci, &c) in members.iter().enumerate() {
        for (di, &d) in members.iter().enumerate() {
            let mut total: i64 = 0;
            for &a in &members {
                for &b in &members {
                    total += wzw.n(a, b, c) as i64 * wzw.n(table.conj(a), table.conj(b), d) as i64;
                }
            }
            for &(a, b) in &reps {
                total -= wzw.n(a, b, c) as i64 * wzw.n(table.conj(a), table.conj(b), d) as i64;
            }
            bilinear[ci][di] = total;
        }
    }

    let col_sum: Vec<u32> = members.iter().map(|&c| wzw.n(f, f, c)).collect();
    // the vacuum column has N_ff^0 = 1, so row 0 is the only split row touching
    // the vacuum and the vacuum path counts fix it completely
    let vacuum_row: Vec<u32> = (0..m)
        .map(|ci| u32::try_from(bilinear[0][ci]).unwrap_or(u32::MAX))
        .collect();
    let weights: Vec<f64> = members.iter().map(|&c| wzw.qdim(c)).collect();
    let mut order: Vec<usize> = (0..m).filter(|&ci| col_sum[ci] > 0 || ci == 0).collect();
    order[1..].sort_by(|&x, &y| weights[y].total_cmp(&weights[x]).then(x.cmp(&y)));
    if (0..m).any(|ci| col_sum[ci] == 0 && vacuum_row[ci] != 0) {
        return Err(Error::NoSplitSolution {
            rank: n as u32,
            level: wzw.model().level(),
        });
    }

    let mut search = Search {
        rows: n,
        order,
        col_sum,
        vacuum_row,
        weights,
        target: wzw.qdim(f).powi(2) / n as f64,
        tolerance: wzw.tolerance(),
        bilinear: &bilinear,
        involutions: row_involutions(n),
        grid: vec![vec![0; m]; n],
        partial: vec![0.0; n],
        weaker: BTreeSet::new(),
        found: BTreeSet::new(),
    };
    search.run(0);
    if search.found.is_empty() {
        return Err(Error::NoSplitSolution {
            rank: n as u32,
            level: wzw.model().level(),
        });
    }
    Ok(SplitSearch {
        columns: members,
        weaker_count: search.weaker.len(),
        solutions: search.found.into_iter().rev().collect(),
    })
}

/// Dual principal graph; equal to the principal graph unless n | k.
pub fn dual_graph(wzw: &Wzw) -> Result<BipartiteGraph> {
    let principal = principal_graph(wzw)?;
    if !wzw.model().has_fixed_point() {
        let dual = BipartiteGraph {
            kind: GraphKind::Dual,
            ..principal.clone()
        };
        require_checks(&check_graph_pair(&principal, &dual, wzw))?;
        return Ok(dual);
    }
    let table = wzw.table();
    let f = require_fixed_point(wzw)?;
    let members = grade_zero(wzw);
    let classes = ocneanu_classes(wzw)?;
    let fixed = non_split_edges(wzw, &classes, &members)?;
    let search = solve_split_edges(wzw)?;
    let split = search.unique().ok_or(Error::AmbiguousSplit {
        rank: wzw.model().rank(),
        level: wzw.model().level(),
        count: search.solutions.len(),
    })?;

    let mut even = Vec::with_capacity(classes.len());
    let mut edges = Vec::with_capacity(classes.len());
    let mut fixed_rows = fixed.into_iter();
    for cl in &classes {
        match cl.split {
            Some(i) => {
                even.push(EvenVertex {
                    label: split_label(table, f, i),
                    pairs: cl.orbit.clone(),
                    split: Some(i),
                    dim: cl.dim,
                });
                edges.push(split[i].clone());
            }
            None => {
                let labels: Vec<String> =
                    cl.orbit.iter().map(|&(a, b)| pair_label(table, a, b)).collect();
                even.push(EvenVertex {
                    label: labels.join("/"),
                    pairs: cl.orbit.clone(),
                    split: None,
                    dim: cl.dim,
                });
                edges.push(fixed_rows.next().expect("one edge row per non-split class"));
            }
        }
    }
    let dual = BipartiteGraph {
        kind: GraphKind::Dual,
        even,
        edges,
        ..principal.clone()
    };
    dual.ensure_connected()?;
    require_checks(&check_graph_pair(&principal, &dual, wzw))?;
    Ok(dual)
}

fn require_checks(report: &[GraphCheck]) -> Result<()> {
    match report.iter().find(|c| !c.passed) {
        Some(c) => Err(Error::GraphCheck {
            name: c.name,
            residual: c.residual,
        }),
        None => Ok(()),
    }
}

/// Number of even vertices of the constructed dual graph.
pub fn even_vertex_count(wzw: &Wzw) -> Result<usize> {
    Ok(dual_graph(wzw)?.even.len())
}

/// Closed-form even-vertex count, defined for k > 2.
pub fn closed_form_count(rank: u32, level: u32) -> Result<usize> {
    if level <= 2 {
        return Err(Error::InvalidParameter(format!(
            "closed form count needs level > 2, got {level}"
        )));
    }
    let k = level as usize;
    match rank {
        2 if k % 2 == 1 => Ok((k + 1) * (k + 1) / 4),
        2 => Ok(k * k / 4 + k / 2 + 2),
        3 if k % 3 != 0 => Ok((k + 1) * (k + 1) * (k + 2) * (k + 2) / 36),
        3 => Ok((k.pow(4) + 6 * k.pow(3) + 13 * k * k + 12 * k + 108) / 36),
        r => Err(Error::UnsupportedRank(r)),
    }
}

/// Compares the constructed count with the closed form.
pub fn checked_even_vertex_count(wzw: &Wzw) -> Result<usize> {
    let computed = even_vertex_count(wzw)?;
    let expected = closed_form_count(wzw.model().rank(), wzw.model().level())?;
    if computed != expected {
        return Err(Error::CountMismatch { computed, expected });
    }
    Ok(computed)
}

#[derive(Debug, Clone, PartialEq)]
pub struct GraphCheck {
    pub name: &'static str,
    pub residual: f64,
    pub passed: bool,
}

fn check(name: &'static str, residual: f64, tolerance: f64) -> GraphCheck {
    GraphCheck {
        name,
        residual,
        passed: residual <= tolerance,
    }
}

fn pf_even_residual(g: &BipartiteGraph) -> f64 {
    g.even
        .iter()
        .zip(&g.edges)
        .map(|(v, row)| {
            let sum: f64 = row.iter().zip(&g.odd).map(|(&e, o)| e as f64 * o.dim).sum();
            (sum - v.dim).abs()
        })
        .fold(0.0, f64::max)
}

fn pf_odd_residual(g: &BipartiteGraph, global: f64) -> f64 {
    (0..g.odd.len())
        .map(|c| {
            let sum: f64 = g
                .even
                .iter()
                .zip(&g.edges)
                .map(|(v, row)| row[c] as f64 * v.dim)
                .sum();
            (sum - global * g.odd[c].dim).abs()
        })
        .fold(0.0, f64::max)
}

/// Global index, Perron–Frobenius balance on both graphs, and path counts
/// from the vacuum compared between the graphs and with Σ_a N_{aā}^c.
pub fn check_graph_pair(principal: &BipartiteGraph, dual: &BipartiteGraph, wzw: &Wzw) -> Vec<GraphCheck> {
    let tol = wzw.tolerance();
    let table = wzw.table();
    let global: f64 = principal.odd.iter().map(|o| o.dim * o.dim).sum();
    let dual_sum: f64 = dual.even.iter().map(|v| v.dim * v.dim).sum();
    let same_odd = principal.odd.len() == dual.odd.len()
        && principal.odd.iter().zip(&dual.odd).all(|(x, y)| x.field == y.field);
    let path_residual = if same_odd {
        (0..principal.odd.len())
            .map(|c| {
                let members: Vec<usize> = principal.odd.iter().map(|o| o.field).collect();
                let expected: i64 = members
                    .iter()
                    .map(|&a| wzw.n(a, table.conj(a), principal.odd[c].field) as i64)
                    .sum();
                let p = principal.paths(0, c) as i64;
                let d = dual.paths(0, c) as i64;
                (p - d).abs().max((d - expected).abs()) as f64
            })
            .fold(0.0, f64::max)
    } else {
        f64::INFINITY
    };
    vec![
        check("global index", (dual_sum - global * global).abs(), tol * global * global),
        check("principal even balance", pf_even_residual(principal), tol),
        check("dual even balance", pf_even_residual(dual), tol),
        check("principal odd balance", pf_odd_residual(principal, global), tol * global),
        check("dual odd balance", pf_odd_residual(dual, global), tol * global),
        check("vacuum path counts", path_residual, 0.0),
    ]
}

/// Structural properties of a solved dual graph in the degenerate case.
#[derive(Debug, Clone, PartialEq)]
pub struct SplitProperties {
    /// Number of non-split classes whose representative has a non-zero grade.
    pub ghosts: usize,
    /// Every c with N_ff^c = 1 has exactly one edge, from one split vertex.
    pub single_edges: bool,
    /// Σ_i E(i,0)² over split vertices.
    pub vacuum_loops: u32,
    /// Σ_a N_{aā}^0 minus the non-split contribution to the vacuum loop count.
    pub vacuum_deficit: i64,
    /// Entry of the vacuum split row at the adjoint field (1,1), for SU(3).
    pub vacuum_row_adjoint: Option<u32>,
}

pub fn split_properties(wzw: &Wzw, dual: &BipartiteGraph) -> Result<SplitProperties> {
    let f = require_fixed_point(wzw)?;
    let table = wzw.table();
    let split: Vec<usize> = (0..dual.even.len())
        .filter(|&v| dual.even[v].split.is_some())
        .collect();
    let ghosts = dual
        .even
        .iter()
        .filter(|v| v.split.is_none())
        .filter(|v| {
            let (a, b) = v.pairs[0];
            table.grade(a) != 0 || table.grade(b) != 0
        })
        .count();
    let single_edges = dual.odd.iter().enumerate().all(|(ci, o)| {
        if wzw.n(f, f, o.field) != 1 {
            return true;
        }
        let touching: Vec<u32> = split
            .iter()
            .map(|&v| dual.edge(v, ci))
            .filter(|&e| e > 0)
            .collect();
        touching == [1]
    });
    let vacuum_loops = split.iter().map(|&v| dual.edge(v, 0).pow(2)).sum();
    let principal_loops: i64 = dual
        .odd
        .iter()
        .map(|o| wzw.n(o.field, table.conj(o.field), 0) as i64)
        .sum();
    let non_split_loops: i64 = (0..dual.even.len())
        .filter(|&v| dual.even[v].split.is_none())
        .map(|v| (dual.edge(v, 0) as i64).pow(2))
        .sum();
    let vacuum_row_adjoint = if wzw.model().rank() == 3 {
        let adjoint = table.index_of_labels(&[1, 1]).and_then(|i| dual.odd_position(i));
        let vacuum_row = split.iter().copied().find(|&v| dual.edge(v, 0) > 0);
        match (adjoint, vacuum_row) {
            (Some(c), Some(v)) => Some(dual.edge(v, c)),
            _ => None,
        }
    } else {
        None
    };
    Ok(SplitProperties {
        ghosts,
        single_edges,
        vacuum_loops,
        vacuum_deficit: principal_loops - non_split_loops,
        vacuum_row_adjoint,
    })
}

/// Split rows as maps from display label to multiplicity, for readable comparisons.
pub fn split_rows_by_label(dual: &BipartiteGraph) -> Vec<BTreeMap<String, u32>> {
    dual.even
        .iter()
        .zip(&dual.edges)
        .filter(|(v, _)| v.split.is_some())
        .map(|(_, row)| {
            row.iter()
                .zip(&dual.odd)
                .filter(|(&e, _)| e > 0)
                .map(|(&e, o)| (o.label.clone(), e))
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alcove::Model;
    use crate::modular::DEFAULT_TOLERANCE;

    fn wzw(rank: u32, level: u32) -> Wzw {
        Wzw::new(Model::new(rank, level).unwrap(), DEFAULT_TOLERANCE).unwrap()
    }

    fn row(pairs: &[(&str, u32)]) -> BTreeMap<String, u32> {
        pairs.iter().map(|&(l, e)| (l.to_string(), e)).collect()
    }

    #[test]
    fn principal_sizes() {
        let g = principal_graph(&wzw(2, 4)).unwrap();
        assert_eq!((g.odd.len(), g.even.len()), (3, 9));
        assert_eq!(principal_graph(&wzw(3, 6)).unwrap().even.len(), 100);
        assert_eq!(principal_graph(&wzw(2, 5)).unwrap().even.len(), 9);
    }

    #[test]
    fn class_counts() {
        let count = |r, k| {
            let classes = ocneanu_classes(&wzw(r, k)).unwrap();
            let split = classes.iter().filter(|c| c.split.is_some()).count();
            (classes.len() - split, split)
        };
        assert_eq!(count(2, 4), (6, 2));
        assert_eq!(count(3, 3), (11, 3));
        assert_eq!(count(3, 6), (87, 3));
        assert!(ocneanu_classes(&wzw(3, 4)).is_err());
    }

    #[test]
    fn su2_split_rows() {
        let d4 = dual_graph(&wzw(2, 4)).unwrap();
        assert_eq!(
            split_rows_by_label(&d4),
            vec![row(&[("0", 1), ("4", 1)]), row(&[("2", 1)])]
        );
        let d6 = dual_graph(&wzw(2, 6)).unwrap();
        assert_eq!(
            split_rows_by_label(&d6),
            vec![row(&[("0", 1), ("4", 1)]), row(&[("2", 1), ("6", 1)])]
        );
        let labels: Vec<&str> = d4.even.iter().filter(|v| v.split.is_some()).map(|v| v.label.as_str()).collect();
        assert_eq!(labels, vec!["22+", "22\u{2212}"]);
    }

    #[test]
    fn su3_level_three_split_rows() {
        let d = dual_graph(&wzw(3, 3)).unwrap();
        assert_eq!(d.even.len(), 14);
        assert_eq!(
            split_rows_by_label(&d),
            vec![
                row(&[("(0)", 1), ("(3)", 1), ("(33)", 1)]),
                row(&[("(21)", 1)]),
                row(&[("(21)", 1)])
            ]
        );
    }

    #[test]
    fn su3_level_six_split_rows_are_unique() {
        let w = wzw(3, 6);
        let search = solve_split_edges(&w).unwrap();
        assert_eq!(search.solutions.len(), 1);
        assert!(search.weaker_count > 1);
        let d = dual_graph(&w).unwrap();
        assert_eq!(d.even.len(), 90);
        let tail = row(&[("(42)", 1), ("(21)", 1), ("(51)", 1), ("(54)", 1)]);
        assert_eq!(
            split_rows_by_label(&d),
            vec![
                row(&[
                    ("(0)", 1),
                    ("(6)", 1),
                    ("(66)", 1),
                    ("(3)", 1),
                    ("(33)", 1),
                    ("(63)", 1),
                    ("(42)", 1)
                ]),
                tail.clone(),
                tail
            ]
        );
    }

    #[test]
    fn coprime_dual_is_principal() {
        let w = wzw(2, 5);
        let p = principal_graph(&w).unwrap();
        let d = dual_graph(&w).unwrap();
        assert_eq!(d.kind, GraphKind::Dual);
        assert_eq!(BipartiteGraph { kind: GraphKind::Principal, ..d }, p);
    }

    #[test]
    fn pair_checks_pass() {
        for (r, k, global) in [(2, 4, 36.0), (3, 3, 144.0)] {
            let w = wzw(r, k);
            let p = principal_graph(&w).unwrap();
            let d = dual_graph(&w).unwrap();
            let sum: f64 = d.even.iter().map(|v| v.dim * v.dim).sum();
            assert!((sum - global).abs() < 1e-9);
            assert!(check_graph_pair(&p, &d, &w).iter().all(|c| c.passed));
        }
    }

    #[test]
    fn closed_forms() {
        assert_eq!(closed_form_count(2, 5).unwrap(), 9);
        assert_eq!(closed_form_count(3, 4).unwrap(), 25);
        assert_eq!(closed_form_count(3, 3).unwrap(), 14);
        assert_eq!(closed_form_count(3, 6).unwrap(), 90);
        assert!(closed_form_count(2, 2).is_err());
        assert_eq!(checked_even_vertex_count(&wzw(2, 6)).unwrap(), 14);
    }

    #[test]
    fn split_structure() {
        for (r, k) in [(2, 4), (2, 6), (3, 3), (3, 6)] {
            let w = wzw(r, k);
            let props = split_properties(&w, &dual_graph(&w).unwrap()).unwrap();
            assert!(props.ghosts > 0);
            assert!(props.single_edges);
            assert_eq!(props.vacuum_loops, 1);
            assert_eq!(props.vacuum_deficit, 1);
            if r == 3 {
                assert_eq!(props.vacuum_row_adjoint, Some(0));
            }
        }
    }

    #[test]
    fn tampered_split_row_fails_checks() {
        let w = wzw(2, 4);
        let p = principal_graph(&w).unwrap();
        let mut d = dual_graph(&w).unwrap();
        let v = d.even.iter().position(|v| v.split == Some(1)).unwrap();
        d.edges[v][0] += 1;
        assert!(check_graph_pair(&p, &d, &w).iter().any(|c| !c.passed));
    }
}
