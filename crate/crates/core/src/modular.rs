//! Modular S-matrix, quantum dimensions, numeric Verlinde coefficients,
//! simple currents and degeneracy of subsystems.

use std::f64::consts::PI;

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;
use rayon::prelude::*;

use crate::alcove::{Field, FieldTable, Model};
use crate::error::{Error, Result};
use crate::fusion::FusionRing;

pub const DEFAULT_TOLERANCE: f64 = 1e-6;

/// The S-matrix of a model in canonical field order, with the tolerance used
/// for every numeric comparison made against it.
#[derive(Debug, Clone)]
pub struct ModularData {
    table: FieldTable,
    s: DMatrix<Complex64>,
    tolerance: f64,
}

pub fn s_matrix(model: Model, tolerance: f64) -> Result<ModularData> {
    ModularData::new(model, tolerance)
}

// (w x, y) on SU(3) weights written in the orthonormal basis of R³
fn su3_inner(x: [f64; 3], y: [f64; 3]) -> f64 {
    let dot: f64 = x.iter().zip(&y).map(|(a, b)| a * b).sum();
    dot - x.iter().sum::<f64>() * y.iter().sum::<f64>() / 3.0
}

const S3: [([usize; 3], f64); 6] = [
    ([0, 1, 2], 1.0),
    ([1, 2, 0], 1.0),
    ([2, 0, 1], 1.0),
    ([1, 0, 2], -1.0),
    ([0, 2, 1], -1.0),
    ([2, 1, 0], -1.0),
];

fn su2_entry(k: u32, j: u32, l: u32) -> Complex64 {
    let h = (k + 2) as f64;
    let v = (2.0 / h).sqrt() * (PI * (j + 1) as f64 * (l + 1) as f64 / h).sin();
    Complex64::new(v, 0.0)
}

fn su3_entry(k: u32, a: &[u32], b: &[u32]) -> Complex64 {
    let h = (k + 3) as f64;
    let shifted = |l: &[u32]| [(l[0] + l[1] + 2) as f64, (l[1] + 1) as f64, 0.0];
    let (x, y) = (shifted(a), shifted(b));
    let mut sum = Complex64::new(0.0, 0.0);
    for (perm, sign) in S3 {
        let wx = [x[perm[0]], x[perm[1]], x[perm[2]]];
        sum += sign * Complex64::from_polar(1.0, -2.0 * PI * su3_inner(wx, y) / h);
    }
    // i³ / (√3 (k+3))
    sum * Complex64::new(0.0, -1.0) / (3f64.sqrt() * h)
}

impl ModularData {
    pub fn new(model: Model, tolerance: f64) -> Result<Self> {
        if !(tolerance > 0.0 && tolerance.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "tolerance must be positive, got {tolerance}"
            )));
        }
        let table = FieldTable::new(model);
        let size = table.len();
        let k = model.level();
        let s = DMatrix::from_fn(size, size, |i, j| {
            let (a, b) = (table.field(i).labels(), table.field(j).labels());
            match model.rank() {
                2 => su2_entry(k, a[0], b[0]),
                _ => su3_entry(k, a, b),
            }
        });
        let md = ModularData {
            table,
            s,
            tolerance,
        };
        md.validate()?;
        Ok(md)
    }

    fn validate(&self) -> Result<()> {
        let size = self.size();
        let product = &self.s * self.s.adjoint();
        let unitarity = (product - DMatrix::<Complex64>::identity(size, size))
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max);
        if unitarity > self.tolerance {
            return Err(Error::Unitarity {
                what: "S S^dagger differs from the identity",
                residual: unitarity,
            });
        }
        let symmetry = (&self.s - self.s.transpose())
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max);
        if symmetry > self.tolerance {
            return Err(Error::Unitarity {
                what: "S is not symmetric",
                residual: symmetry,
            });
        }
        for x in 0..size {
            let z = self.s[(0, x)];
            if z.im.abs() > self.tolerance || z.re <= self.tolerance {
                return Err(Error::Unitarity {
                    what: "first row of S is not positive",
                    residual: z.im.abs().max(-z.re),
                });
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

    pub fn size(&self) -> usize {
        self.table.len()
    }

    pub fn tolerance(&self) -> f64 {
        self.tolerance
    }

    pub fn s(&self, x: usize, y: usize) -> Complex64 {
        self.s[(x, y)]
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.s
    }

    /// S_{0x}/S_{00}.
    pub fn qdim(&self, x: usize) -> f64 {
        self.s[(0, x)].re / self.s[(0, 0)].re
    }

    pub fn qdim_of(&self, field: &Field) -> Result<f64> {
        let i = self.index(field)?;
        Ok(self.qdim(i))
    }

    pub fn qdims(&self) -> Vec<f64> {
        (0..self.size()).map(|x| self.qdim(x)).collect()
    }

    fn index(&self, field: &Field) -> Result<usize> {
        self.table.index_of(field).ok_or_else(|| Error::OutsideAlcove {
            labels: field.labels().to_vec(),
            rank: self.model().rank(),
            level: self.model().level(),
        })
    }

    /// Σ_x S_{ax} S_{bx} conj(S_{cx}) / S_{0x} without the integrality check.
    pub fn verlinde_raw(&self, a: usize, b: usize, c: usize) -> Complex64 {
        (0..self.size())
            .map(|x| self.s[(a, x)] * self.s[(b, x)] * self.s[(c, x)].conj() / self.s[(0, x)])
            .sum()
    }

    /// Verlinde coefficient on indices; fails unless it is within tolerance of
    /// a non-negative integer.
    pub fn verlinde(&self, a: usize, b: usize, c: usize) -> Result<f64> {
        let z = self.verlinde_raw(a, b, c);
        let rounded = z.re.round();
        if (z - Complex64::new(rounded, 0.0)).norm() > self.tolerance || rounded < 0.0 {
            return Err(Error::NotIntegral {
                a: self.table.field(a).to_string(),
                b: self.table.field(b).to_string(),
                c: self.table.field(c).to_string(),
                value: z.re,
                tolerance: self.tolerance,
            });
        }
        Ok(z.re)
    }

    pub fn verlinde_coeff(&self, a: &Field, b: &Field, c: &Field) -> Result<f64> {
        self.verlinde(self.index(a)?, self.index(b)?, self.index(c)?)
    }

    /// All fields with S_{0x} = S_{00}, listed as 0, σ, σ², … .
    pub fn simple_currents(&self) -> Result<Vec<usize>> {
        let s00 = self.s[(0, 0)].re;
        let mut found: Vec<usize> = (0..self.size())
            .filter(|&x| (self.s[(0, x)].re - s00).abs() < self.tolerance)
            .collect();
        let n = self.model().rank() as i64;
        let orbit: Vec<usize> = (0..n).map(|p| self.table.sigma(0, p)).collect();
        found.sort_unstable();
        let mut expected = orbit.clone();
        expected.sort_unstable();
        if found != expected {
            return Err(Error::Internal(format!(
                "simple currents {:?} are not the vacuum orbit of sigma",
                found.iter().map(|&i| self.table.field(i).to_string()).collect::<Vec<_>>()
            )));
        }
        Ok(orbit)
    }

    /// x such that |S_{xy}S_{00} − S_{x0}S_{0y}| < tol for every y in the subsystem.
    pub fn necessary_degenerate(&self, subsystem: &[usize]) -> Vec<usize> {
        let s00 = self.s[(0, 0)];
        subsystem
            .iter()
            .copied()
            .filter(|&x| {
                subsystem.iter().all(|&y| {
                    (self.s[(x, y)] * s00 - self.s[(x, 0)] * self.s[(0, y)]).norm() < self.tolerance
                })
            })
            .collect()
    }

    /// x such that S_{0y} = S_{xy} for every y in the subsystem.
    pub fn sufficient_degenerate(&self, subsystem: &[usize]) -> Vec<usize> {
        subsystem
            .iter()
            .copied()
            .filter(|&x| {
                subsystem
                    .iter()
                    .all(|&y| (self.s[(0, y)] - self.s[(x, y)]).norm() < self.tolerance)
            })
            .collect()
    }

    pub fn degeneracy_report(&self, subsystem: &[usize]) -> Result<DegeneracyReport> {
        let mut members = subsystem.to_vec();
        members.sort_unstable();
        members.dedup();
        let currents: Vec<usize> = {
            let mut c: Vec<usize> = self
                .simple_currents()?
                .into_iter()
                .filter(|x| members.binary_search(x).is_ok())
                .collect();
            c.sort_unstable();
            c
        };
        let kind = if members.len() == self.size() {
            SubsystemKind::Full
        } else if members == self.table.with_grade(0) {
            SubsystemKind::GradeZero
        } else {
            SubsystemKind::Other
        };
        Ok(DegeneracyReport {
            necessary: self.necessary_degenerate(&members),
            sufficient: self.sufficient_degenerate(&members),
            currents,
            kind,
        })
    }

    /// Degenerate fields of a subsystem. For the full system the answer must
    /// be the vacuum alone; for the grade-0 subsystem it must coincide with
    /// the simple currents it contains. Other subsystems are not cross-checked.
    pub fn degenerate_set(&self, subsystem: &[usize]) -> Result<Vec<usize>> {
        let report = self.degeneracy_report(subsystem)?;
        let expected = match report.kind {
            SubsystemKind::Full => Some(vec![0]),
            SubsystemKind::GradeZero => Some(report.currents.clone()),
            SubsystemKind::Other => None,
        };
        if let Some(expected) = expected {
            if report.necessary != expected || report.sufficient != expected {
                let labels = |v: &[usize]| v.iter().map(|&i| self.table.field(i).to_string()).collect();
                return Err(Error::DegeneracyMismatch {
                    criterion: labels(&report.necessary),
                    currents: labels(&expected),
                });
            }
        }
        Ok(report.necessary)
    }

    /// |S_{0y} − S_{σy}| < tol for every grade-0 y. Requires n | k.
    pub fn sigma_row_check(&self) -> Result<bool> {
        let model = self.model();
        if !model.has_fixed_point() {
            return Err(Error::NoFixedPoint {
                rank: model.rank(),
                level: model.level(),
            });
        }
        let sigma = self.table.sigma(0, 1);
        Ok(self
            .table
            .with_grade(0)
            .into_iter()
            .all(|y| (self.s[(0, y)] - self.s[(sigma, y)]).norm() < self.tolerance))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SubsystemKind {
    Full,
    GradeZero,
    Other,
}

/// Both degeneracy criteria for a subsystem next to its simple currents.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegeneracyReport {
    pub necessary: Vec<usize>,
    pub sufficient: Vec<usize>,
    pub currents: Vec<usize>,
    pub kind: SubsystemKind,
}

/// Compares every Verlinde coefficient with the exact ring and returns the
/// largest deviation |N_verlinde − N_exact|.
pub fn verlinde_agreement(md: &ModularData, ring: &FusionRing) -> Result<f64> {
    if md.model() != ring.model() {
        return Err(Error::InvalidParameter(format!(
            "modular data for {} compared with ring for {}",
            md.model(),
            ring.model()
        )));
    }
    let size = md.size();
    let inv_s0: Vec<Complex64> = (0..size).map(|x| 1.0 / md.s[(0, x)]).collect();
    (0..size)
        .into_par_iter()
        .map(|a| {
            let mut worst: f64 = 0.0;
            for b in a..size {
                let w: Vec<Complex64> = (0..size)
                    .map(|x| md.s[(a, x)] * md.s[(b, x)] * inv_s0[x])
                    .collect();
                for c in 0..size {
                    let z: Complex64 = (0..size).map(|x| w[x] * md.s[(c, x)].conj()).sum();
                    let exact = ring.n(a, b, c);
                    let rounded = z.re.round();
                    if (z - Complex64::new(rounded, 0.0)).norm() > md.tolerance {
                        return Err(Error::NotIntegral {
                            a: md.table.field(a).to_string(),
                            b: md.table.field(b).to_string(),
                            c: md.table.field(c).to_string(),
                            value: z.re,
                            tolerance: md.tolerance,
                        });
                    }
                    if rounded != exact as f64 {
                        return Err(Error::BackendMismatch {
                            a: md.table.field(a).to_string(),
                            b: md.table.field(b).to_string(),
                            c: md.table.field(c).to_string(),
                            exact,
                            numeric: z.re,
                        });
                    }
                    worst = worst.max((z - Complex64::new(exact as f64, 0.0)).norm());
                }
            }
            Ok(worst)
        })
        .try_reduce(|| 0.0, |x, y| Ok(x.max(y)))
}

/// Perron–Frobenius eigenvalue of Γ_x, as the largest singular value
/// (fusion matrices are normal).
pub fn perron_frobenius(ring: &FusionRing, x: usize) -> f64 {
    let size = ring.size();
    let gamma = DMatrix::from_fn(size, size, |a, b| ring.n(a, x, b) as f64);
    let gram = &gamma * gamma.transpose();
    SymmetricEigen::new(gram)
        .eigenvalues
        .iter()
        .copied()
        .fold(0.0, f64::max)
        .sqrt()
}

/// Largest |qdim(x) − PF(Γ_x)| over all fields.
pub fn perron_frobenius_deviation(md: &ModularData, ring: &FusionRing) -> f64 {
    (0..md.size())
        .into_par_iter()
        .map(|x| (md.qdim(x) - perron_frobenius(ring, x)).abs())
        .reduce(|| 0.0, f64::max)
}

/// Largest residual of Σ_b N_{az}^b S_{bx} = (S_{zx}/S_{0x}) S_{ax} over all
/// fields a, x and grade-0 z: columns of S are common eigenvectors of the
/// grade-preserving fusion matrices.
pub fn eigenvector_residual(md: &ModularData, ring: &FusionRing) -> f64 {
    let size = md.size();
    let s = md.matrix();
    md.table()
        .with_grade(0)
        .into_par_iter()
        .map(|z| {
            let mut worst: f64 = 0.0;
            for x in 0..size {
                let eig = s[(z, x)] / s[(0, x)];
                for a in 0..size {
                    let lhs: Complex64 = (0..size)
                        .map(|b| ring.n(a, z, b) as f64 * s[(b, x)])
                        .sum();
                    worst = worst.max((lhs - eig * s[(a, x)]).norm());
                }
            }
            worst
        })
        .reduce(|| 0.0, f64::max)
}
