//! Order-two simple-current quotients of weighted object lists: the even part
//! of A_{4n−3} folds onto the even part of D_{2n}, and the pairs-of-evens part
//! of its quantum double folds to a system of a quarter of the global index.

use crate::alcove::Model;
use crate::doublegraph::{dual_graph, BipartiteGraph};
use crate::error::{Error, Result};
use crate::wzw::Wzw;

/// Objects with quantum dimensions and an invertible object β of order two,
/// given by the permutation β ⊗ − induces on the objects.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedSystem {
    pub objects: Vec<(String, f64)>,
    pub current: usize,
    pub action: Vec<usize>,
}

impl WeightedSystem {
    pub fn global_index(&self) -> f64 {
        self.objects.iter().map(|(_, d)| d * d).sum()
    }

    pub fn len(&self) -> usize {
        self.objects.len()
    }

    pub fn is_empty(&self) -> bool {
        self.objects.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MergedObject {
    pub label: String,
    pub members: [usize; 2],
    pub qdim: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SplitObject {
    pub label: String,
    pub source: usize,
    pub qdim: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct QuotientStructure {
    pub merged: Vec<MergedObject>,
    pub split: Vec<SplitObject>,
}

impl QuotientStructure {
    pub fn objects(&self) -> Vec<(String, f64)> {
        self.merged
            .iter()
            .map(|m| (m.label.clone(), m.qdim))
            .chain(self.split.iter().map(|s| (s.label.clone(), s.qdim)))
            .collect()
    }

    pub fn len(&self) -> usize {
        self.merged.len() + self.split.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn global_index(&self) -> f64 {
        self.objects().iter().map(|(_, d)| d * d).sum()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IndexCase {
    StronglyOuterTrivialLoi,
    StronglyOuterNontrivialLoi,
    NotStronglyOuter,
}

impl IndexCase {
    pub fn description(self) -> &'static str {
        match self {
            IndexCase::StronglyOuterTrivialLoi => "strongly outer, trivial Loi invariant",
            IndexCase::StronglyOuterNontrivialLoi => "strongly outer, non-trivial Loi invariant",
            IndexCase::NotStronglyOuter => "not strongly outer",
        }
    }
}

/// Candidate global indices of the intermediate system for ambient index γ.
pub fn index_cases(gamma: f64) -> Result<[(IndexCase, f64); 3]> {
    if !(gamma > 0.0 && gamma.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "global index must be positive, got {gamma}"
        )));
    }
    Ok([
        (IndexCase::StronglyOuterTrivialLoi, gamma / 4.0),
        (IndexCase::StronglyOuterNontrivialLoi, gamma / 2.0),
        (IndexCase::NotStronglyOuter, gamma / 8.0),
    ])
}

fn level_for(n_param: u32) -> Result<u32> {
    if n_param <= 2 {
        return Err(Error::InvalidParameter(format!(
            "orbifold parameter must exceed 2, got {n_param}"
        )));
    }
    Ok(4 * n_param - 4)
}

/// Even labels of SU(2)_{4n−4} (the even vertices of A_{4n−3}) with β = k.
pub fn evens_system(wzw: &Wzw) -> Result<WeightedSystem> {
    let model = wzw.model();
    if model.rank() != 2 || model.level() % 2 != 0 {
        return Err(Error::InvalidParameter(format!(
            "evens system needs SU(2) at even level, got {model}"
        )));
    }
    let k = model.level() as usize;
    let evens: Vec<usize> = (0..=k).step_by(2).collect();
    Ok(WeightedSystem {
        objects: evens
            .iter()
            .map(|&j| (j.to_string(), wzw.qdim(j)))
            .collect(),
        current: evens.len() - 1,
        action: (0..evens.len()).rev().collect(),
    })
}

/// Dual-graph even vertices of SU(2)_{4n−4} whose pairs consist of even labels,
/// with β the class of (0,k) acting by (a,b) ↦ (a,k−b).
pub fn pairs_of_evens_subsystem(n_param: u32, tolerance: f64) -> Result<(Wzw, WeightedSystem)> {
    let k = level_for(n_param)?;
    let wzw = Wzw::new(Model::su2(k)?, tolerance)?;
    let dual = dual_graph(&wzw)?;
    let system = pairs_of_evens(&dual, k as usize)?;
    Ok((wzw, system))
}

fn pairs_of_evens(dual: &BipartiteGraph, k: usize) -> Result<WeightedSystem> {
    let chosen: Vec<usize> = (0..dual.even.len())
        .filter(|&v| {
            let (a, b) = dual.even[v].pairs[0];
            a % 2 == 0 && b % 2 == 0
        })
        .collect();
    let find = |pair: (usize, usize), split: Option<usize>| {
        chosen
            .iter()
            .position(|&v| dual.even[v].split == split && dual.even[v].pairs.contains(&pair))
    };
    let action = chosen
        .iter()
        .map(|&v| {
            let vertex = &dual.even[v];
            let (a, b) = vertex.pairs[0];
            find((a, k - b), vertex.split).ok_or_else(|| {
                Error::Internal(format!("no class contains ({a},{})", k - b))
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let current = find((0, k), None)
        .ok_or_else(|| Error::Internal("class of (0,k) missing".into()))?;
    Ok(WeightedSystem {
        objects: chosen
            .iter()
            .map(|&v| (dual.even[v].label.clone(), dual.even[v].dim))
            .collect(),
        current,
        action,
    })
}

/// Merges free β-orbits and splits β-fixed objects into two of half dimension.
pub fn quotient_by_current(sys: &WeightedSystem, tolerance: f64) -> Result<QuotientStructure> {
    let size = sys.len();
    if sys.action.len() != size || sys.current >= size {
        return Err(Error::InvalidParameter("action does not match the objects".into()));
    }
    if sys.action[0] == 0 {
        return Err(Error::InvalidParameter(
            "current acts trivially on the vacuum".into(),
        ));
    }
    if (sys.objects[sys.current].1 - 1.0).abs() > tolerance || sys.action[0] != sys.current {
        return Err(Error::InvalidParameter(format!(
            "{} is not an invertible current",
            sys.objects[sys.current].0
        )));
    }
    let mut merged = Vec::new();
    let mut split = Vec::new();
    for x in 0..size {
        let y = sys.action[x];
        if y >= size || sys.action[y] != x {
            return Err(Error::InvalidParameter(
                "current does not act as an involution".into(),
            ));
        }
        let (label, dim) = &sys.objects[x];
        if (sys.objects[y].1 - dim).abs() > tolerance * dim.max(1.0) {
            return Err(Error::IndexMismatch {
                what: "dimension inside an orbit",
                computed: sys.objects[y].1,
                expected: *dim,
            });
        }
        if y == x {
            for sign in ["+", "\u{2212}"] {
                split.push(SplitObject {
                    label: format!("{label}{sign}"),
                    source: x,
                    qdim: dim / 2.0,
                });
            }
        } else if x < y {
            merged.push(MergedObject {
                label: format!("{label}~{}", sys.objects[y].0),
                members: [x, y],
                qdim: *dim,
            });
        }
    }
    Ok(QuotientStructure { merged, split })
}

/// Objects of dimension one.
pub fn invertible_objects(objects: &[(String, f64)], tolerance: f64) -> Vec<String> {
    objects
        .iter()
        .filter(|(_, d)| (d - 1.0).abs() < tolerance)
        .map(|(l, _)| l.clone())
        .collect()
}

/// Global-index bookkeeping for one value of the orbifold parameter.
#[derive(Debug, Clone, PartialEq)]
pub struct OrbifoldReport {
    pub n_param: u32,
    pub level: u32,
    /// [M] for the even system of A_{4n−3}.
    pub global_m: f64,
    /// γ = [M]².
    pub gamma: f64,
    pub n0_index: f64,
    pub n0_objects: usize,
    pub n1_index: f64,
    pub n1_objects: usize,
    pub quotient: QuotientStructure,
    pub invertibles: Vec<String>,
    pub cases: [(IndexCase, f64); 3],
}

fn require_close(what: &'static str, computed: f64, expected: f64, tolerance: f64) -> Result<()> {
    if (computed - expected).abs() > tolerance * expected.abs().max(1.0) {
        return Err(Error::IndexMismatch {
            what,
            computed,
            expected,
        });
    }
    Ok(())
}

pub fn orbifold_report(n_param: u32, tolerance: f64) -> Result<OrbifoldReport> {
    let (wzw, n0) = pairs_of_evens_subsystem(n_param, tolerance)?;
    let evens = evens_system(&wzw)?;
    let global_m = evens.global_index();
    let gamma = global_m * global_m;
    let n0_index = n0.global_index();
    require_close("pairs-of-evens global index", n0_index, gamma / 2.0, tolerance)?;

    let n1 = quotient_by_current(&n0, tolerance)?;
    let n1_index = n1.global_index();
    require_close("quotient of pairs-of-evens", n1_index, n0_index / 2.0, tolerance)?;
    require_close("quotient against gamma/4", n1_index, gamma / 4.0, tolerance)?;

    let quotient = quotient_by_current(&evens, tolerance)?;
    let half = quotient.global_index();
    require_close("even quotient global index", half, global_m / 2.0, tolerance)?;
    require_close("quotient double", n1_index, half * half, tolerance)?;

    let invertibles = invertible_objects(&quotient.objects(), tolerance);
    Ok(OrbifoldReport {
        n_param,
        level: wzw.model().level(),
        global_m,
        gamma,
        n0_index,
        n0_objects: n0.len(),
        n1_index,
        n1_objects: n1.len(),
        quotient,
        invertibles,
        cases: index_cases(gamma)?,
    })
}
