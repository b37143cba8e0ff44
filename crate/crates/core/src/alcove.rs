//! Primary fields of SU(n)_k: the level-k alcove, its Z/nZ grading,
//! charge conjugation and the simple-current rotation σ.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};

/// A WZW model SU(n)_k.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Model {
    rank: u32,
    level: u32,
}

impl Model {
    pub fn new(rank: u32, level: u32) -> Result<Self> {
        if !(2..=3).contains(&rank) {
            return Err(Error::UnsupportedRank(rank));
        }
        if level == 0 {
            return Err(Error::NonPositiveLevel(level));
        }
        Ok(Model { rank, level })
    }

    pub fn su2(level: u32) -> Result<Self> {
        Model::new(2, level)
    }

    pub fn su3(level: u32) -> Result<Self> {
        Model::new(3, level)
    }

    pub fn rank(&self) -> u32 {
        self.rank
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    /// k + n, the denominator appearing in S-matrix phases.
    pub fn shifted_level(&self) -> u32 {
        self.level + self.rank
    }

    /// True when n | k, i.e. σ has a fixed point and the grade-0 system is degenerate.
    pub fn has_fixed_point(&self) -> bool {
        self.level % self.rank == 0
    }

    /// Number of primary fields, C(k+n-1, n-1).
    pub fn field_count(&self) -> usize {
        let k = self.level as usize;
        match self.rank {
            2 => k + 1,
            _ => (k + 1) * (k + 2) / 2,
        }
    }
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SU({})_{}", self.rank, self.level)
    }
}

/// A primary field: Dynkin labels λ₁..λ_{n−1} with Σλᵢ ≤ k.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Field {
    labels: Vec<u32>,
    model: Model,
}

impl Field {
    pub fn new(model: Model, labels: &[u32]) -> Result<Self> {
        let sum: u64 = labels.iter().map(|&l| l as u64).sum();
        if labels.len() != (model.rank - 1) as usize || sum > model.level as u64 {
            return Err(Error::OutsideAlcove {
                labels: labels.to_vec(),
                rank: model.rank,
                level: model.level,
            });
        }
        Ok(Field {
            labels: labels.to_vec(),
            model,
        })
    }

    pub fn vacuum(model: Model) -> Self {
        Field {
            labels: vec![0; (model.rank - 1) as usize],
            model,
        }
    }

    /// Builds a field from Young-diagram row lengths r₁ ≥ r₂ ≥ … (trailing rows may be omitted).
    pub fn from_young(model: Model, rows: &[u32]) -> Result<Self> {
        let n = model.rank as usize;
        if rows.len() > n - 1 || rows.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidParameter(format!(
                "{rows:?} is not a Young diagram with at most {} rows",
                n - 1
            )));
        }
        let mut padded = rows.to_vec();
        padded.resize(n, 0);
        let labels: Vec<u32> = padded.windows(2).map(|w| w[0] - w[1]).collect();
        Field::new(model, &labels)
    }

    pub fn labels(&self) -> &[u32] {
        &self.labels
    }

    pub fn model(&self) -> Model {
        self.model
    }

    pub fn is_vacuum(&self) -> bool {
        self.labels.iter().all(|&l| l == 0)
    }

    /// The zeroth affine label k − Σλᵢ.
    pub fn affine_label(&self) -> u32 {
        self.model.level - self.labels.iter().sum::<u32>()
    }

    /// n-ality Σ i·λᵢ mod n.
    pub fn grading(&self) -> u32 {
        let n = self.model.rank;
        self.labels
            .iter()
            .enumerate()
            .map(|(i, &l)| ((i as u32 + 1) * l) % n)
            .sum::<u32>()
            % n
    }

    /// Charge conjugation reverses the Dynkin labels.
    pub fn conjugate(&self) -> Field {
        let mut labels = self.labels.clone();
        labels.reverse();
        Field {
            labels,
            model: self.model,
        }
    }

    /// Applies the outer rotation of the affine diagram `power` times
    /// (SU(2): j ↦ k−j, SU(3): (λ₁,λ₂) ↦ (k−λ₁−λ₂, λ₁)).
    pub fn sigma_act(&self, power: i64) -> Field {
        let n = self.model.rank as i64;
        let mut out = self.clone();
        for _ in 0..power.rem_euclid(n) {
            let zeroth = out.affine_label();
            out.labels.pop();
            out.labels.insert(0, zeroth);
        }
        out
    }

    /// Young-diagram rows r₁ ≥ … ≥ r_{n−1}, with rᵢ = Σ_{j≥i} λⱼ.
    pub fn young_rows(&self) -> Vec<u32> {
        let mut rows = Vec::with_capacity(self.labels.len());
        let mut acc = 0;
        for &l in self.labels.iter().rev() {
            acc += l;
            rows.push(acc);
        }
        rows.reverse();
        rows
    }

    /// Display label: the integer j for SU(2), the Young diagram "(r₁r₂)" for SU(3).
    pub fn display_label(&self) -> String {
        if self.model.rank == 2 {
            return self.labels[0].to_string();
        }
        let rows: Vec<u32> = self.young_rows().into_iter().filter(|&r| r > 0).collect();
        if rows.is_empty() {
            "(0)".to_string()
        } else if rows.iter().all(|&r| r < 10) {
            format!("({})", rows.iter().map(u32::to_string).collect::<String>())
        } else {
            let parts: Vec<String> = rows.iter().map(u32::to_string).collect();
            format!("({})", parts.join(","))
        }
    }

    /// Dynkin labels joined by commas, as accepted on the command line.
    pub fn dynkin_label(&self) -> String {
        let parts: Vec<String> = self.labels.iter().map(u32::to_string).collect();
        parts.join(",")
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_label())
    }
}

/// All primary fields of a model in canonical order (lexicographic on Dynkin
/// labels, vacuum first), with grading, conjugation and σ as index maps.
#[derive(Debug, Clone)]
pub struct FieldTable {
    model: Model,
    fields: Vec<Field>,
    index: HashMap<Vec<u32>, usize>,
    grade: Vec<u32>,
    conj: Vec<usize>,
    sigma: Vec<usize>,
}

pub fn enumerate_fields(model: Model) -> FieldTable {
    FieldTable::new(model)
}

fn push_labels(prefix: &mut Vec<u32>, slots: usize, budget: u32, out: &mut Vec<Vec<u32>>) {
    if slots == 0 {
        out.push(prefix.clone());
        return;
    }
    for l in 0..=budget {
        prefix.push(l);
        push_labels(prefix, slots - 1, budget - l, out);
        prefix.pop();
    }
}

impl FieldTable {
    pub fn new(model: Model) -> Self {
        let mut all = Vec::with_capacity(model.field_count());
        push_labels(
            &mut Vec::new(),
            (model.rank - 1) as usize,
            model.level,
            &mut all,
        );
        let fields: Vec<Field> = all
            .into_iter()
            .map(|labels| Field { labels, model })
            .collect();
        let index: HashMap<Vec<u32>, usize> = fields
            .iter()
            .enumerate()
            .map(|(i, f)| (f.labels.clone(), i))
            .collect();
        let grade = fields.iter().map(Field::grading).collect();
        let conj = fields
            .iter()
            .map(|f| index[f.conjugate().labels()])
            .collect();
        let sigma = fields
            .iter()
            .map(|f| index[f.sigma_act(1).labels()])
            .collect();
        FieldTable {
            model,
            fields,
            index,
            grade,
            conj,
            sigma,
        }
    }

    pub fn model(&self) -> Model {
        self.model
    }

    pub fn len(&self) -> usize {
        self.fields.len()
    }

    pub fn is_empty(&self) -> bool {
        self.fields.is_empty()
    }

    pub fn fields(&self) -> &[Field] {
        &self.fields
    }

    pub fn field(&self, i: usize) -> &Field {
        &self.fields[i]
    }

    pub fn index_of(&self, field: &Field) -> Option<usize> {
        if field.model != self.model {
            return None;
        }
        self.index.get(field.labels()).copied()
    }

    pub fn index_of_labels(&self, labels: &[u32]) -> Option<usize> {
        self.index.get(labels).copied()
    }

    pub fn grade(&self, i: usize) -> u32 {
        self.grade[i]
    }

    pub fn conj(&self, i: usize) -> usize {
        self.conj[i]
    }

    /// Index of σ^power applied to field `i`.
    pub fn sigma(&self, i: usize, power: i64) -> usize {
        let n = self.model.rank as i64;
        (0..power.rem_euclid(n)).fold(i, |j, _| self.sigma[j])
    }

    /// Indices of fields with the given grade, canonical order.
    pub fn with_grade(&self, g: u32) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.grade[i] == g).collect()
    }

    /// Index of the σ-fixed field, if n | k.
    pub fn fixed_point_index(&self) -> Option<usize> {
        (0..self.len()).find(|&i| self.sigma[i] == i)
    }
}

/// The unique field f with σf = f; exists iff n | k.
pub fn fixed_point(model: Model) -> Result<Field> {
    if !model.has_fixed_point() {
        return Err(Error::NoFixedPoint {
            rank: model.rank,
            level: model.level,
        });
    }
    let third = model.level / model.rank;
    Field::new(model, &vec![third; (model.rank - 1) as usize])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(model: Model, labels: &[u32]) -> Field {
        Field::new(model, labels).unwrap()
    }

    #[test]
    fn alcove_sizes() {
        assert_eq!(enumerate_fields(Model::su2(4).unwrap()).len(), 5);
        assert_eq!(enumerate_fields(Model::su3(3).unwrap()).len(), 10);
        // pairs λ₁+λ₂ ≤ 6
        let brute = (0..=6u32)
            .flat_map(|a| (0..=6u32).map(move |b| (a, b)))
            .filter(|(a, b)| a + b <= 6)
            .count();
        assert_eq!(brute, 28);
        assert_eq!(enumerate_fields(Model::su3(6).unwrap()).len(), brute);
    }

    #[test]
    fn canonical_order_starts_at_vacuum() {
        let t = enumerate_fields(Model::su3(3).unwrap());
        assert!(t.field(0).is_vacuum());
        let labels: Vec<&[u32]> = t.fields().iter().map(Field::labels).collect();
        let mut sorted = labels.clone();
        sorted.sort();
        assert_eq!(labels, sorted);
        let su2 = enumerate_fields(Model::su2(4).unwrap());
        for (j, field) in su2.fields().iter().enumerate() {
            assert_eq!(field.labels(), &[j as u32]);
        }
    }

    #[test]
    fn rejects_bad_models_and_labels() {
        assert_eq!(Model::new(4, 2), Err(Error::UnsupportedRank(4)));
        assert_eq!(Model::new(2, 0), Err(Error::NonPositiveLevel(0)));
        let m = Model::su3(3).unwrap();
        assert!(Field::new(m, &[2, 2]).is_err());
        assert!(Field::new(m, &[1]).is_err());
    }

    #[test]
    fn grading_examples() {
        let su2 = Model::su2(4).unwrap();
        let su3 = Model::su3(3).unwrap();
        assert_eq!(f(su2, &[2]).grading(), 0);
        assert_eq!(f(su3, &[1, 0]).grading(), 1);
        assert_eq!(f(su3, &[1, 1]).grading(), 0);
    }

    #[test]
    fn conjugation_examples() {
        let su3 = Model::su3(3).unwrap();
        assert_eq!(f(su3, &[3, 0]).conjugate(), f(su3, &[0, 3]));
        assert_eq!(f(su3, &[1, 1]).conjugate(), f(su3, &[1, 1]));
        let su2 = Model::su2(7).unwrap();
        for j in 0..=7 {
            assert_eq!(f(su2, &[j]).conjugate(), f(su2, &[j]));
        }
    }

    #[test]
    fn sigma_examples() {
        let su2 = Model::su2(4).unwrap();
        let su3 = Model::su3(3).unwrap();
        assert_eq!(f(su2, &[0]).sigma_act(1), f(su2, &[4]));
        assert_eq!(f(su3, &[0, 0]).sigma_act(1), f(su3, &[3, 0]));
        assert_eq!(f(su3, &[1, 1]).sigma_act(1), f(su3, &[1, 1]));
        assert_eq!(f(su3, &[0, 0]).sigma_act(-1), f(su3, &[0, 3]));
    }

    #[test]
    fn fixed_point_examples() {
        assert_eq!(
            fixed_point(Model::su2(4).unwrap()).unwrap().labels(),
            &[2]
        );
        assert_eq!(
            fixed_point(Model::su3(3).unwrap()).unwrap().labels(),
            &[1, 1]
        );
        assert_eq!(
            fixed_point(Model::su3(4).unwrap()),
            Err(Error::NoFixedPoint { rank: 3, level: 4 })
        );
    }

    #[test]
    fn table_invariants_exhaustive() {
        for rank in 2..=3 {
            for level in 1..=12 {
                let model = Model::new(rank, level).unwrap();
                let t = enumerate_fields(model);
                assert_eq!(t.len(), model.field_count());
                assert_eq!(t.grade(0), 0);
                let fixed: Vec<usize> = (0..t.len()).filter(|&i| t.sigma(i, 1) == i).collect();
                if model.has_fixed_point() {
                    let expected = t.index_of(&fixed_point(model).unwrap()).unwrap();
                    assert_eq!(fixed, vec![expected]);
                } else {
                    assert!(fixed.is_empty());
                }
                let step = t.grade(t.sigma(0, 1));
                for i in 0..t.len() {
                    let x = t.field(i);
                    assert_eq!(t.sigma(i, rank as i64), i);
                    assert_eq!(x.conjugate().conjugate(), *x);
                    assert_eq!((t.grade(i) + t.grade(t.conj(i))) % rank, 0);
                    assert_eq!(t.grade(t.sigma(i, 1)), (t.grade(i) + step) % rank);
                }
                if model.has_fixed_point() {
                    assert_eq!(step, 0);
                }
            }
        }
    }

    #[test]
    fn young_alias_round_trips() {
        let su3 = Model::su3(6).unwrap();
        let f42 = Field::from_young(su3, &[4, 2]).unwrap();
        assert_eq!(f42.labels(), &[2, 2]);
        assert_eq!(f42.display_label(), "(42)");
        assert_eq!(Field::vacuum(su3).display_label(), "(0)");
        assert_eq!(f(su3, &[3, 0]).display_label(), "(3)");
        assert_eq!(f(su3, &[0, 3]).display_label(), "(33)");
        assert_eq!(f(su3, &[1, 4]).display_label(), "(54)");
        for field in enumerate_fields(su3).fields() {
            assert_eq!(&Field::from_young(su3, &field.young_rows()).unwrap(), field);
        }
    }
}
