//! Verification suites: every published number and figure recomputed and compared.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::{Display, Write as _};

use asymdouble_core::doublegraph::{
    check_graph_pair, closed_form_count, dual_graph, principal_graph, solve_split_edges,
    split_properties, BipartiteGraph,
};
use asymdouble_core::fusion::{grade_sums, invariant_report, FusionRing};
use asymdouble_core::modular::{eigenvector_residual, perron_frobenius_deviation, verlinde_agreement};
use asymdouble_core::orbifold::{index_cases, orbifold_report};
use asymdouble_core::{Model, Wzw};

use crate::document::fmt12;
use crate::fixtures;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Suite {
    Quick,
    Paper,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub criterion: u32,
    pub claim: String,
    pub expected: String,
    pub computed: String,
    pub residual: f64,
    pub passed: bool,
}

fn exact(criterion: u32, claim: impl Into<String>, expected: impl Display, computed: impl Display) -> Check {
    let (expected, computed) = (expected.to_string(), computed.to_string());
    let passed = expected == computed;
    Check {
        criterion,
        claim: claim.into(),
        expected,
        computed,
        residual: if passed { 0.0 } else { 1.0 },
        passed,
    }
}

fn within(criterion: u32, claim: impl Into<String>, expected: f64, computed: f64, tol: f64) -> Check {
    let residual = (expected - computed).abs();
    Check {
        criterion,
        claim: claim.into(),
        expected: fmt12(expected),
        computed: fmt12(computed),
        residual,
        passed: residual <= tol,
    }
}

fn bounded(criterion: u32, claim: impl Into<String>, residual: f64, tol: f64) -> Check {
    Check {
        criterion,
        claim: claim.into(),
        expected: format!("< {tol:e}"),
        computed: format!("{residual:.3e}"),
        residual,
        passed: residual <= tol,
    }
}

fn failed(criterion: u32, claim: impl Into<String>, expected: impl Display, err: impl Display) -> Check {
    Check {
        criterion,
        claim: claim.into(),
        expected: expected.to_string(),
        computed: format!("error: {err}"),
        residual: f64::INFINITY,
        passed: false,
    }
}

struct Models {
    tolerance: f64,
    built: BTreeMap<(u32, u32), anyhow::Result<Wzw>>,
    duals: BTreeMap<(u32, u32), Result<BipartiteGraph, String>>,
}

impl Models {
    fn wzw(&mut self, rank: u32, level: u32) -> Result<&Wzw, String> {
        let tol = self.tolerance;
        self.built
            .entry((rank, level))
            .or_insert_with(|| Ok(Wzw::new(Model::new(rank, level)?, tol)?))
            .as_ref()
            .map_err(|e| e.to_string())
    }

    fn dual(&mut self, rank: u32, level: u32) -> Result<BipartiteGraph, String> {
        if !self.duals.contains_key(&(rank, level)) {
            let graph = self
                .wzw(rank, level)
                .and_then(|w| dual_graph(w).map_err(|e| e.to_string()));
            self.duals.insert((rank, level), graph);
        }
        self.duals[&(rank, level)].clone()
    }
}

fn name(rank: u32, level: u32) -> String {
    format!("SU({rank})_{level}")
}

struct Plan {
    agreement: Vec<(u32, u32)>,
    degenerate: Vec<(u32, u32)>,
    su2_counts: Vec<u32>,
    split_levels: Vec<u32>,
    fixtures: bool,
    su3_identities: Vec<u64>,
    su3_counts: Vec<u32>,
    subsystem_levels: Vec<u32>,
    orbifold: Vec<u32>,
}

fn plan(suite: Suite) -> Plan {
    match suite {
        Suite::Paper => Plan {
            agreement: (1..=12).map(|k| (2, k)).chain((1..=8).map(|k| (3, k))).collect(),
            degenerate: [(2, 4), (2, 6), (2, 8), (2, 10), (2, 12), (3, 3), (3, 6)]
                .into_iter()
                .chain([3, 5, 7, 9, 11].map(|k| (2, k)))
                .collect(),
            su2_counts: (3..=10).collect(),
            split_levels: vec![4, 6, 8, 10],
            fixtures: true,
            su3_identities: vec![1, 2, 3],
            su3_counts: vec![3, 4, 5, 6, 7, 8],
            subsystem_levels: (3..=8).collect(),
            orbifold: vec![3, 4],
        },
        Suite::Quick => Plan {
            agreement: vec![(2, 4), (2, 5), (3, 3)],
            degenerate: vec![(2, 4), (2, 5), (3, 3)],
            su2_counts: vec![4, 5, 6],
            split_levels: vec![4, 6],
            fixtures: true,
            su3_identities: vec![1],
            su3_counts: vec![3, 4],
            subsystem_levels: vec![4, 5],
            orbifold: vec![3],
        },
    }
}

pub fn ring_axiom_checks(label: &str, ring: &FusionRing) -> Vec<Check> {
    invariant_report(ring)
        .into_iter()
        .map(|c| match c.violation {
            None => exact(1, format!("{label} {}", c.name), "holds", "holds"),
            Some(v) => exact(1, format!("{label} {}", c.name), "holds", format!("violated at {v}")),
        })
        .collect()
}

/// Ring axiom checks run against an SU(2)_4 tensor with one entry corrupted,
/// as a negative control for the verification machinery.
pub fn tampered_checks(tolerance: f64) -> anyhow::Result<Vec<Check>> {
    let wzw = Wzw::new(Model::su2(4)?, tolerance)?;
    let mut mult = wzw.ring.tensor().to_vec();
    // N_{1,2}^3 only, so the tensor stops being symmetric
    mult[(5 + 2) * 5 + 3] += 1;
    let bad = FusionRing::from_tensor(wzw.table().clone(), mult)?;
    Ok(ring_axiom_checks("tampered SU(2)_4", &bad))
}

pub fn run_suite(suite: Suite, tolerance: f64) -> Vec<Check> {
    let plan = plan(suite);
    let mut m = Models {
        tolerance,
        built: BTreeMap::new(),
        duals: BTreeMap::new(),
    };
    let mut out = Vec::new();

    // 1: two fusion backends and the ring axioms
    for &(r, k) in &plan.agreement {
        let claim = format!("{} Kac-Walton = Verlinde on all triples", name(r, k));
        match m.wzw(r, k) {
            Err(e) => out.push(failed(1, claim, "max deviation < tol", e)),
            Ok(w) => {
                match verlinde_agreement(&w.modular, &w.ring) {
                    Ok(dev) => out.push(bounded(1, claim, dev, tolerance)),
                    Err(e) => out.push(failed(1, claim, "max deviation < tol", e)),
                }
                out.push(bounded(
                    1,
                    format!("{} qdim = Perron-Frobenius eigenvalue", name(r, k)),
                    perron_frobenius_deviation(&w.modular, &w.ring),
                    tolerance,
                ));
                out.push(bounded(
                    1,
                    format!("{} S columns are fusion eigenvectors", name(r, k)),
                    eigenvector_residual(&w.modular, &w.ring),
                    tolerance,
                ));
                out.extend(ring_axiom_checks(&name(r, k), &w.ring));
            }
        }
    }

    // 2: degenerate fields of the grade-0 system
    for &(r, k) in &plan.degenerate {
        let claim = format!("{} degenerate grade-0 fields = simple currents of grade 0", name(r, k));
        let result = m.wzw(r, k).and_then(|w| {
            let table = w.table();
            let g0 = table.with_grade(0);
            let got = w.modular.degenerate_set(&g0).map_err(|e| e.to_string())?;
            let mut currents: Vec<usize> = (0..r as i64)
                .map(|p| table.sigma(0, p))
                .filter(|&i| table.grade(i) == 0)
                .collect();
            currents.sort_unstable();
            currents.dedup();
            let show = |v: &[usize]| {
                let l: Vec<String> = v.iter().map(|&i| table.field(i).to_string()).collect();
                format!("{{{}}}", l.join(","))
            };
            let all: Vec<usize> = (0..table.len()).collect();
            let full = w.modular.degenerate_set(&all).map_err(|e| e.to_string())?;
            Ok((show(&currents), show(&got), show(&full), show(&[0])))
        });
        match result {
            Ok((want, got, full, vacuum)) => {
                out.push(exact(2, claim, want, got));
                out.push(exact(2, format!("{} full system is non-degenerate", name(r, k)), vacuum, full));
            }
            Err(e) => out.push(failed(2, claim, "simple currents", e)),
        }
    }

    // 3: SU(2) even-vertex counts
    for &k in &plan.su2_counts {
        let claim = format!("{} dual even-vertex count", name(2, k));
        let want = closed_form_count(2, k).map(|c| c.to_string()).unwrap_or_default();
        match m.dual(2, k) {
            Ok(g) => out.push(exact(3, claim, want, g.even.len())),
            Err(e) => out.push(failed(3, claim, want, e)),
        }
    }

    // 4: SU(2) split rows alternate between labels 0 and 2 mod 4
    for &k in &plan.split_levels {
        let claim = format!("{} split rows {{0,4,..}} and {{2,6,..}}, unique", name(2, k));
        let want_rows: Vec<String> = (0..2)
            .map(|i| {
                let l: Vec<String> = (0..=k).filter(|c| c % 4 == 2 * i).map(|c| c.to_string()).collect();
                l.join(",")
            })
            .collect();
        let want = format!("1 solution: [{}]", want_rows.join("] ["));
        let result = m.wzw(2, k).and_then(|w| solve_split_edges(w).map_err(|e| e.to_string()));
        match result {
            Ok(search) => {
                let rows: Vec<String> = search
                    .solutions
                    .iter()
                    .flat_map(|sol| {
                        sol.iter().map(|row| {
                            let l: Vec<String> = search
                                .columns
                                .iter()
                                .zip(row)
                                .flat_map(|(&c, &e)| std::iter::repeat(c.to_string()).take(e as usize))
                                .collect();
                            l.join(",")
                        })
                    })
                    .collect();
                let got = format!("{} solution: [{}]", search.solutions.len(), rows.join("] ["));
                out.push(exact(4, claim, want, got));
            }
            Err(e) => out.push(failed(4, claim, want, e)),
        }
    }

    // 5: transcribed figures
    if plan.fixtures {
        let figures = fixtures::graph_fixtures();
        match figures {
            Err(e) => out.push(failed(5, "fixtures parse", "ok", e)),
            Ok(figures) => {
                for fix in figures {
                    let (r, k) = (fix.model.rank, fix.model.level);
                    let claim = format!("{} dual graph matches transcribed figure", name(r, k));
                    let diffs = m
                        .dual(r, k)
                        .and_then(|g| fixtures::compare_graph(&fix, &g, tolerance).map_err(|e| e.to_string()));
                    out.push(match diffs {
                        Ok(d) if d.is_empty() => exact(5, claim, "match", "match"),
                        Ok(d) => exact(5, claim, "match", d.join("; ")),
                        Err(e) => failed(5, claim, "match", e),
                    });
                }
            }
        }
        if suite == Suite::Paper {
            let claim = "SU(3)_6 split-vertex neighbourhood matches transcribed figure";
            let diffs = fixtures::split_fixture(fixtures::SU3_6_SPLIT)
                .map_err(|e| e.to_string())
                .and_then(|fix| {
                    let g = m.dual(3, 6)?;
                    fixtures::compare_split(&fix, &g).map_err(|e| e.to_string())
                });
            out.push(match diffs {
                Ok(d) if d.is_empty() => exact(5, claim, "match", "match"),
                Ok(d) => exact(5, claim, "match", d.join("; ")),
                Err(e) => failed(5, claim, "match", e),
            });
        }
    }

    // 6: SU(3)_{3k} fusion identities
    for &k in &plan.su3_identities {
        let level = 3 * k as u32;
        let label = name(3, level);
        match m.wzw(3, level).and_then(|w| grade_sums(&w.ring).map_err(|e| e.to_string())) {
            Err(e) => out.push(failed(6, format!("{label} grade sums"), "identities", e)),
            Ok(s) => {
                out.push(exact(6, format!("{label} N_ff^(3,0)"), 1, s.ff_current));
                out.push(exact(6, format!("{label} N_ff^(1,1)"), 2, s.ff_adjoint));
                out.push(exact(6, format!("{label} grade-0 box-cube trace"), 9 * k * k, s.box_cube[0]));
                out.push(exact(6, format!("{label} grade-1 box-cube trace"), 9 * k * k, s.box_cube[1]));
                out.push(exact(
                    6,
                    format!("{label} (3,0) trace grade 0 minus grade 1"),
                    1,
                    s.current[0] as i64 - s.current[1] as i64,
                ));
                out.push(exact(
                    6,
                    format!("{label} (1,1) trace grade 0 minus grade 1"),
                    -1,
                    s.adjoint[0] as i64 - s.adjoint[1] as i64,
                ));
                out.push(exact(
                    6,
                    format!("{label} vacuum path count"),
                    3 * k * (k + 1) / 2 + 1,
                    s.vacuum_paths,
                ));
            }
        }
    }

    // 7: SU(3) even-vertex counts
    for &k in &plan.su3_counts {
        let claim = format!("{} dual even-vertex count", name(3, k));
        let want = closed_form_count(3, k).map(|c| c.to_string()).unwrap_or_default();
        match m.dual(3, k) {
            Ok(g) => out.push(exact(7, claim, want, g.even.len())),
            Err(e) => out.push(failed(7, claim, want, e)),
        }
    }

    // 8, 9: global index, Perron-Frobenius balance and path counts on every dual graph
    let graph_models: BTreeSet<(u32, u32)> = plan
        .su2_counts
        .iter()
        .chain(&plan.split_levels)
        .map(|&k| (2, k))
        .chain(plan.su3_counts.iter().map(|&k| (3, k)))
        .chain(plan.su3_identities.iter().map(|&k| (3, 3 * k as u32)))
        .collect();
    for (r, k) in graph_models {
        let label = name(r, k);
        let result = m.dual(r, k).and_then(|d| {
            let w = m.wzw(r, k)?;
            let p = principal_graph(w).map_err(|e| e.to_string())?;
            Ok(check_graph_pair(&p, &d, w))
        });
        match result {
            Err(e) => out.push(failed(8, format!("{label} graph pair"), "checks pass", e)),
            Ok(report) => {
                for c in report {
                    let criterion = if c.name == "vacuum path counts" { 9 } else { 8 };
                    out.push(Check {
                        criterion,
                        claim: format!("{label} {}", c.name),
                        expected: if criterion == 9 { "equal".into() } else { format!("< {tolerance:e} (relative)") },
                        computed: format!("{:.3e}", c.residual),
                        residual: c.residual,
                        passed: c.passed,
                    });
                }
            }
        }
        if k % r == 0 {
            let props = m.dual(r, k).and_then(|d| {
                let w = m.wzw(r, k)?;
                split_properties(w, &d).map_err(|e| e.to_string())
            });
            match props {
                Err(e) => out.push(failed(9, format!("{label} split structure"), "ok", e)),
                Ok(p) => {
                    out.push(exact(9, format!("{label} ghost classes present"), true, p.ghosts > 0));
                    out.push(exact(9, format!("{label} single edges from split vertices"), true, p.single_edges));
                    out.push(exact(9, format!("{label} split vacuum loops"), 1, p.vacuum_loops));
                    out.push(exact(9, format!("{label} vacuum loop deficit"), 1, p.vacuum_deficit));
                    if let Some(a) = p.vacuum_row_adjoint {
                        out.push(exact(9, format!("{label} vacuum split row avoids (1,1)"), 0, a));
                    }
                }
            }
        }
    }

    // 10: subsystems of SU(2)_k
    for &k in &plan.subsystem_levels {
        let claim = format!("{} subsystems", name(2, k));
        let mut want: Vec<Vec<usize>> = vec![
            vec![0],
            vec![0, k as usize],
            (0..=k as usize).step_by(2).collect(),
            (0..=k as usize).collect(),
        ];
        want.sort_by(|x, y| x.len().cmp(&y.len()).then_with(|| x.cmp(y)));
        want.dedup();
        match m.wzw(2, k).and_then(|w| w.ring.subsystems().map_err(|e| e.to_string())) {
            Ok(got) => out.push(exact(10, claim, format!("{want:?}"), format!("{got:?}"))),
            Err(e) => out.push(failed(10, claim, format!("{want:?}"), e)),
        }
    }

    // 11: orbifold index arithmetic
    for &n in &plan.orbifold {
        let label = format!("orbifold n={n}");
        match orbifold_report(n, tolerance) {
            Err(e) => out.push(failed(11, label, "consistent indices", e)),
            Ok(r) => {
                let rel = tolerance * r.gamma;
                out.push(within(11, format!("{label} [N0] = gamma/2"), r.gamma / 2.0, r.n0_index, rel));
                out.push(within(11, format!("{label} [N1] = gamma/4"), r.gamma / 4.0, r.n1_index, rel));
                out.push(within(
                    11,
                    format!("{label} [N1] = ([M]/2)^2"),
                    (r.global_m / 2.0).powi(2),
                    r.n1_index,
                    rel,
                ));
                let quarter = index_cases(r.gamma).map(|c| c[0].1).unwrap_or(f64::NAN);
                out.push(within(11, format!("{label} [N1] is the gamma/4 case"), quarter, r.n1_index, rel));
                out.push(exact(11, format!("{label} quotient objects"), n + 1, r.quotient.len()));
                out.push(exact(11, format!("{label} invertible quotient objects"), 1, r.invertibles.len()));
            }
        }
    }
    out
}

/// 0 if every check passed, 2 otherwise.
pub fn exit_status(checks: &[Check]) -> i32 {
    if checks.iter().all(|c| c.passed) {
        0
    } else {
        2
    }
}

pub fn render(checks: &[Check]) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{:<4} {:<58} {:<28} {:<28} {:<10} status",
        "#", "claim", "expected", "computed", "residual"
    );
    for c in checks {
        let _ = writeln!(
            out,
            "{:<4} {:<58} {:<28} {:<28} {:<10} {}",
            c.criterion,
            c.claim,
            c.expected,
            c.computed,
            format!("{:.2e}", c.residual),
            if c.passed { "pass" } else { "FAIL" }
        );
    }
    let passed = checks.iter().filter(|c| c.passed).count();
    let _ = writeln!(out, "{passed}/{} checks passed", checks.len());
    if let Some(first) = checks.iter().find(|c| !c.passed) {
        let _ = writeln!(out, "first failure: {}", first.claim);
    }
    out
}
