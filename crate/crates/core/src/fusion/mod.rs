//! Exact fusion coefficients N_{ab}^c and the fusion ring they define.
//!
//! Coefficients come from Kac–Walton folding of classical Littlewood–Richardson
//! products; SU(2) additionally has a closed form used as a cross-check. The
//! numeric Verlinde route lives in [`crate::modular`].

pub mod kac_walton;
pub mod lr;

use std::collections::{BTreeMap, HashSet};
use std::sync::Arc;

use rayon::prelude::*;

use crate::alcove::{Field, FieldTable, Model};
use crate::error::{Error, Result};
use kac_walton::Folded;

/// Subsystem search works on bitmasks and refuses larger rings.
pub const SUBSYSTEM_FIELD_LIMIT: usize = 32;

/// SU(2)_k closed form: 1 iff |j−l| ≤ m ≤ j+l, j+l+m even and j+l+m ≤ 2k.
pub fn fusion_su2(j: u32, l: u32, m: u32, level: u32) -> Result<u32> {
    for x in [j, l, m] {
        if x > level {
            return Err(Error::OutsideAlcove {
                labels: vec![x],
                rank: 2,
                level,
            });
        }
    }
    let sum = j + l + m;
    let ok = j.abs_diff(l) <= m && m <= j + l && sum % 2 == 0 && sum <= 2 * level;
    Ok(ok as u32)
}

fn check_field(model: Model, x: &Field) -> Result<()> {
    if x.model() != model {
        return Err(Error::InvalidParameter(format!(
            "field {x} belongs to {}, expected {model}",
            x.model()
        )));
    }
    Ok(())
}

/// Truncated tensor product a ⊗ b as signed contributions per alcove weight.
fn folded_product(model: Model, a: &Field, b: &Field) -> Result<BTreeMap<Vec<u32>, i64>> {
    let mut out: BTreeMap<Vec<u32>, i64> = BTreeMap::new();
    for (nu, mult) in lr::classical_product(a.labels(), b.labels()) {
        if let Folded::Alcove { labels, sign } = kac_walton::fold(model, &nu)? {
            *out.entry(labels).or_default() += sign * mult as i64;
        }
    }
    Ok(out)
}

/// N_{ab}^c by Kac–Walton folding of classical LR coefficients.
pub fn fusion_coeff(a: &Field, b: &Field, c: &Field) -> Result<u32> {
    let model = a.model();
    check_field(model, b)?;
    check_field(model, c)?;
    let product = folded_product(model, a, b)?;
    let value = product.get(c.labels()).copied().unwrap_or(0);
    u32::try_from(value).map_err(|_| {
        Error::Internal(format!("negative fusion coefficient {value} for {a} x {b} -> {c}"))
    })
}

/// Dense fusion tensor over a model's canonical field order, optionally viewed
/// through a member subset (a subsystem).
#[derive(Debug, Clone)]
pub struct FusionRing {
    table: Arc<FieldTable>,
    mult: Arc<Vec<u32>>,
    members: Vec<usize>,
}

pub fn build_ring(model: Model) -> Result<FusionRing> {
    FusionRing::build(model)
}

impl FusionRing {
    pub fn build(model: Model) -> Result<Self> {
        let table = FieldTable::new(model);
        let size = table.len();
        let pairs: Vec<(usize, usize)> = (0..size)
            .flat_map(|a| (a..size).map(move |b| (a, b)))
            .collect();
        let rows: Vec<((usize, usize), Vec<u32>)> = pairs
            .into_par_iter()
            .map(|(a, b)| {
                let product = folded_product(model, table.field(a), table.field(b))?;
                let mut row = vec![0u32; size];
                for (labels, value) in product {
                    let c = table.index_of_labels(&labels).ok_or_else(|| {
                        Error::Internal(format!("folded weight {labels:?} outside the alcove"))
                    })?;
                    row[c] = u32::try_from(value).map_err(|_| {
                        Error::Internal(format!(
                            "negative fusion coefficient {value} for {} x {}",
                            table.field(a),
                            table.field(b)
                        ))
                    })?;
                }
                Ok(((a, b), row))
            })
            .collect::<Result<_>>()?;
        let mut mult = vec![0u32; size * size * size];
        for ((a, b), row) in rows {
            mult[(a * size + b) * size..(a * size + b + 1) * size].copy_from_slice(&row);
            mult[(b * size + a) * size..(b * size + a + 1) * size].copy_from_slice(&row);
        }
        let ring = FusionRing {
            members: (0..size).collect(),
            table: Arc::new(table),
            mult: Arc::new(mult),
        };
        if model.rank() == 2 {
            ring.cross_check_su2()?;
        }
        Ok(ring)
    }

    /// Wraps an externally supplied tensor without any validation.
    /// Used to run the invariant checks against arbitrary (e.g. corrupted) data.
    pub fn from_tensor(table: FieldTable, mult: Vec<u32>) -> Result<Self> {
        let size = table.len();
        if mult.len() != size * size * size {
            return Err(Error::InvalidParameter(format!(
                "tensor has {} entries, expected {}",
                mult.len(),
                size * size * size
            )));
        }
        Ok(FusionRing {
            members: (0..size).collect(),
            table: Arc::new(table),
            mult: Arc::new(mult),
        })
    }

    fn cross_check_su2(&self) -> Result<()> {
        let k = self.model().level();
        for a in 0..self.size() {
            for b in 0..self.size() {
                for c in 0..self.size() {
                    let closed = fusion_su2(a as u32, b as u32, c as u32, k)?;
                    if closed != self.n(a, b, c) {
                        return Err(Error::Internal(format!(
                            "Kac-Walton N[{a},{b}->{c}] = {} but closed form gives {closed}",
                            self.n(a, b, c)
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn model(&self) -> Model {
        self.table.model()
    }

    pub fn table(&self) -> &FieldTable {
        &self.table
    }

    /// Number of fields of the ambient model.
    pub fn size(&self) -> usize {
        self.table.len()
    }

    /// N_{ab}^c on ambient indices.
    pub fn n(&self, a: usize, b: usize, c: usize) -> u32 {
        let size = self.size();
        self.mult[(a * size + b) * size + c]
    }

    pub fn tensor(&self) -> &[u32] {
        &self.mult
    }

    /// Member fields of this view, canonical order.
    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn is_member(&self, i: usize) -> bool {
        self.members.binary_search(&i).is_ok()
    }

    /// Restricts the view to `members`; fails unless they form a subsystem.
    pub fn restrict(&self, members: &[usize]) -> Result<FusionRing> {
        let mut members = members.to_vec();
        members.sort_unstable();
        members.dedup();
        if !self.is_closed(&members) {
            return Err(Error::InvalidParameter(format!(
                "{:?} is not closed under fusion and conjugation",
                self.labels(&members)
            )));
        }
        Ok(FusionRing {
            table: Arc::clone(&self.table),
            mult: Arc::clone(&self.mult),
            members,
        })
    }

    /// The grade-0 fields: the bimodule system of the associated subfactor.
    pub fn grade_zero_subring(&self) -> Result<FusionRing> {
        let members: Vec<usize> = self
            .members
            .iter()
            .copied()
            .filter(|&i| self.table.grade(i) == 0)
            .collect();
        self.restrict(&members)
    }

    pub fn labels(&self, set: &[usize]) -> Vec<String> {
        set.iter().map(|&i| self.table.field(i).to_string()).collect()
    }

    /// True if `set` contains the vacuum and is closed under fusion support and conjugation.
    pub fn is_closed(&self, set: &[usize]) -> bool {
        let inside: HashSet<usize> = set.iter().copied().collect();
        if !inside.contains(&0) {
            return false;
        }
        set.iter().all(|&a| {
            inside.contains(&self.table.conj(a))
                && set.iter().all(|&b| {
                    (0..self.size()).all(|c| self.n(a, b, c) == 0 || inside.contains(&c))
                })
        })
    }

    /// Γ_x with (Γ_x)_{ab} = N_{ax}^b over the ambient fields.
    pub fn fusion_matrix(&self, x: usize) -> Vec<Vec<u32>> {
        (0..self.size())
            .map(|a| (0..self.size()).map(|b| self.n(a, x, b)).collect())
            .collect()
    }

    /// All subsystems of this view: subsets containing the vacuum, closed under
    /// fusion and conjugation. Ordered by size, then lexicographically.
    pub fn subsystems(&self) -> Result<Vec<Vec<usize>>> {
        let count = self.members.len();
        if count > SUBSYSTEM_FIELD_LIMIT {
            return Err(Error::TooManyFields {
                count,
                limit: SUBSYSTEM_FIELD_LIMIT,
            });
        }
        let position = |i: usize| self.members.binary_search(&i).ok();
        // support mask of a ⊗ b and conjugate bit, over member positions
        let mut support = vec![0u64; count * count];
        let mut conj = vec![0u64; count];
        for (pa, &a) in self.members.iter().enumerate() {
            conj[pa] = 1 << position(self.table.conj(a)).expect("members closed under conjugation");
            for (pb, &b) in self.members.iter().enumerate() {
                for c in 0..self.size() {
                    if self.n(a, b, c) > 0 {
                        let pc = position(c).ok_or_else(|| {
                            Error::InvalidParameter("view is not closed under fusion".into())
                        })?;
                        support[pa * count + pb] |= 1 << pc;
                    }
                }
            }
        }
        let closure = |seed: u64| -> u64 {
            let mut set = seed;
            loop {
                let mut next = set;
                for pa in (0..count).filter(|&p| set >> p & 1 == 1) {
                    next |= conj[pa];
                    for pb in (0..count).filter(|&p| set >> p & 1 == 1) {
                        next |= support[pa * count + pb];
                    }
                }
                if next == set {
                    return set;
                }
                set = next;
            }
        };
        let vacuum = position(0).ok_or_else(|| {
            Error::InvalidParameter("view does not contain the vacuum".into())
        })?;
        let start = closure(1 << vacuum);
        let mut seen: HashSet<u64> = HashSet::from([start]);
        let mut frontier = vec![start];
        while let Some(set) = frontier.pop() {
            for p in (0..count).filter(|&p| set >> p & 1 == 0) {
                let grown = closure(set | 1 << p);
                if seen.insert(grown) {
                    frontier.push(grown);
                }
            }
        }
        let mut out: Vec<Vec<usize>> = seen
            .into_iter()
            .map(|mask| {
                (0..count)
                    .filter(|&p| mask >> p & 1 == 1)
                    .map(|p| self.members[p])
                    .collect()
            })
            .collect();
        out.sort_by(|x, y| x.len().cmp(&y.len()).then_with(|| x.cmp(y)));
        Ok(out)
    }
}

/// A finitely supported non-negative combination of fields.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RingElement {
    coeffs: BTreeMap<usize, u64>,
}

impl RingElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn unit() -> Self {
        Self::field(0)
    }

    pub fn field(i: usize) -> Self {
        RingElement {
            coeffs: BTreeMap::from([(i, 1)]),
        }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (usize, u64)>) -> Self {
        let mut out = RingElement::zero();
        for (i, c) in terms {
            out.add_term(i, c);
        }
        out
    }

    pub fn add_term(&mut self, i: usize, c: u64) {
        if c > 0 {
            *self.coeffs.entry(i).or_default() += c;
        }
    }

    pub fn coeff(&self, i: usize) -> u64 {
        self.coeffs.get(&i).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, u64)> + '_ {
        self.coeffs.iter().map(|(&i, &c)| (i, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

/// Bilinear extension of the fusion tensor.
pub fn multiply(ring: &FusionRing, u: &RingElement, v: &RingElement) -> RingElement {
    let mut out = RingElement::zero();
    for (a, x) in u.terms() {
        for (b, y) in v.terms() {
            for c in 0..ring.size() {
                out.add_term(c, x * y * ring.n(a, b, c) as u64);
            }
        }
    }
    out
}

pub fn power(ring: &FusionRing, u: &RingElement, exponent: u32) -> RingElement {
    (0..exponent).fold(RingElement::unit(), |acc, _| multiply(ring, &acc, u))
}

/// Σ_{x ∈ subset} qdim(x)².
pub fn global_index(subset: &[usize], qdims: &[f64]) -> f64 {
    subset.iter().map(|&i| qdims[i] * qdims[i]).sum()
}

/// Grade-restricted trace sums of an SU(3)_k ring with 3 | k, together with
/// the fusion of the fixed point f with itself into (3,0) and (1,1).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GradeSums {
    /// Σ_{gr(a)=g} N_{a,□³}^a for g = 0, 1.
    pub box_cube: [u64; 2],
    /// Σ_{gr(a)=g} N_{aā}^{(3,0)} for g = 0, 1.
    pub current: [u64; 2],
    /// Σ_{gr(a)=g} N_{aā}^{(1,1)} for g = 0, 1.
    pub adjoint: [u64; 2],
    /// Σ_{gr(a)=0} N_{aā}^0.
    pub vacuum_paths: u64,
    pub ff_current: u32,
    pub ff_adjoint: u32,
}

pub fn grade_sums(ring: &FusionRing) -> Result<GradeSums> {
    let model = ring.model();
    let t = ring.table();
    let f = t.fixed_point_index().filter(|_| model.rank() == 3).ok_or(Error::NoFixedPoint {
        rank: model.rank(),
        level: model.level(),
    })?;
    let idx = |labels: &[u32]| {
        t.index_of_labels(labels)
            .ok_or_else(|| Error::Internal(format!("{labels:?} missing at level {}", model.level())))
    };
    let (box1, current, adjoint) = (idx(&[1, 0])?, idx(&[3, 0])?, idx(&[1, 1])?);
    let cube = power(ring, &RingElement::field(box1), 3);
    let trace = |g: u32, c: usize| -> u64 {
        t.with_grade(g).into_iter().map(|a| ring.n(a, t.conj(a), c) as u64).sum()
    };
    let cube_trace = |g: u32| -> u64 {
        t.with_grade(g)
            .into_iter()
            .map(|a| cube.terms().map(|(c, m)| m * ring.n(a, c, a) as u64).sum::<u64>())
            .sum()
    };
    Ok(GradeSums {
        box_cube: [cube_trace(0), cube_trace(1)],
        current: [trace(0, current), trace(1, current)],
        adjoint: [trace(0, adjoint), trace(1, adjoint)],
        vacuum_paths: trace(0, 0),
        ff_current: ring.n(f, f, current),
        ff_adjoint: ring.n(f, f, adjoint),
    })
}

/// One identity of the ring sweep with the first counterexample found, if any.
#[derive(Debug, Clone, PartialEq)]
pub struct InvariantCheck {
    pub name: &'static str,
    pub violation: Option<String>,
}

impl InvariantCheck {
    pub fn passed(&self) -> bool {
        self.violation.is_none()
    }
}

/// Exhaustive sweep of the ring axioms and the simple-current twist over all triples.
pub fn invariant_report(ring: &FusionRing) -> Vec<InvariantCheck> {
    let size = ring.size();
    let t = ring.table();
    let n = ring.model().rank();
    let triples = || {
        (0..size).flat_map(move |a| (0..size).flat_map(move |b| (0..size).map(move |c| (a, b, c))))
    };
    let first = |pred: &dyn Fn(usize, usize, usize) -> bool| {
        triples()
            .find(|&(a, b, c)| !pred(a, b, c))
            .map(|(a, b, c)| format!("a={}, b={}, c={}", t.field(a), t.field(b), t.field(c)))
    };
    let mut out = vec![
        InvariantCheck {
            name: "commutativity",
            violation: first(&|a, b, c| ring.n(a, b, c) == ring.n(b, a, c)),
        },
        InvariantCheck {
            name: "unit",
            violation: first(&|_, b, c| ring.n(0, b, c) == (b == c) as u32),
        },
        InvariantCheck {
            name: "frobenius reciprocity",
            violation: first(&|a, b, c| {
                let v = ring.n(a, b, c);
                v == ring.n(c, t.conj(b), a) && v == ring.n(t.conj(a), c, b)
            }),
        },
        InvariantCheck {
            name: "grade additivity",
            violation: first(&|a, b, c| {
                ring.n(a, b, c) == 0 || t.grade(c) == (t.grade(a) + t.grade(b)) % n
            }),
        },
        InvariantCheck {
            name: "simple-current twist",
            violation: first(&|a, b, c| ring.n(a, b, c) == ring.n(a, t.sigma(b, 1), t.sigma(c, 1))),
        },
    ];
    let mut assoc = None;
    'outer: for a in 0..size {
        for b in 0..size {
            for c in 0..size {
                for d in 0..size {
                    let left: u64 = (0..size)
                        .map(|e| ring.n(a, b, e) as u64 * ring.n(e, c, d) as u64)
                        .sum();
                    let right: u64 = (0..size)
                        .map(|e| ring.n(b, c, e) as u64 * ring.n(a, e, d) as u64)
                        .sum();
                    if left != right {
                        assoc = Some(format!(
                            "(a={} b={}) c={} -> d={}",
                            t.field(a),
                            t.field(b),
                            t.field(c),
                            t.field(d)
                        ));
                        break 'outer;
                    }
                }
            }
        }
    }
    out.push(InvariantCheck {
        name: "associativity",
        violation: assoc,
    });
    out
}
