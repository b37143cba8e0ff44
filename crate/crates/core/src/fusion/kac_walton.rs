//! Kac–Walton folding: classical weights are moved into the level-k alcove by
//! the shifted action of the affine Weyl group, each reflection flipping sign.

use crate::alcove::Model;
use crate::error::{Error, Result};

pub const MAX_REFLECTIONS: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Folded {
    /// The shifted weight lies on a wall of the alcove; contributes nothing.
    Wall,
    /// w·ν lands on this alcove weight with sign ε(w).
    Alcove { labels: Vec<u32>, sign: i64 },
}

/// Folds a dominant classical weight (Dynkin labels) into the level-k alcove.
pub fn fold(model: Model, weight: &[u32]) -> Result<Folded> {
    let n = model.rank() as usize;
    // affine Dynkin labels of ν + ρ at level k + n
    let mut m: Vec<i64> = Vec::with_capacity(n);
    let shifted: i64 = weight.iter().map(|&l| l as i64 + 1).sum();
    m.push(model.shifted_level() as i64 - shifted);
    m.extend(weight.iter().map(|&l| l as i64 + 1));
    let mut sign = 1;
    for _ in 0..=MAX_REFLECTIONS {
        let Some(i) = m.iter().position(|&x| x < 0) else {
            if m.contains(&0) {
                return Ok(Folded::Wall);
            }
            let labels = m[1..].iter().map(|&x| (x - 1) as u32).collect();
            return Ok(Folded::Alcove { labels, sign });
        };
        reflect(&mut m, i);
        sign = -sign;
    }
    Err(Error::WeylDepth {
        weight: weight.iter().map(|&l| l as i64).collect(),
        depth: MAX_REFLECTIONS,
    })
}

// simple reflection s_i of the affine SU(n) diagram, acting on affine Dynkin labels
fn reflect(m: &mut [i64], i: usize) {
    let n = m.len();
    let mi = m[i];
    m[i] = -mi;
    if n == 2 {
        m[1 - i] += 2 * mi;
    } else {
        m[(i + 1) % n] += mi;
        m[(i + n - 1) % n] += mi;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn alcove_weights_are_fixed() {
        let model = Model::su3(3).unwrap();
        assert_eq!(
            fold(model, &[1, 1]).unwrap(),
            Folded::Alcove {
                labels: vec![1, 1],
                sign: 1
            }
        );
    }

    #[test]
    fn su2_boundary_and_reflection() {
        let model = Model::su2(4).unwrap();
        // j = k+1 sits on the wall
        assert_eq!(fold(model, &[5]).unwrap(), Folded::Wall);
        // j = k+2 reflects to k with a sign flip
        assert_eq!(
            fold(model, &[6]).unwrap(),
            Folded::Alcove {
                labels: vec![4],
                sign: -1
            }
        );
    }

    #[test]
    fn su3_level_one() {
        let model = Model::su3(1).unwrap();
        // (2,0) at level 1: λ+ρ = (3,1), m0 = 4 − 4 = 0 → wall
        assert_eq!(fold(model, &[2, 0]).unwrap(), Folded::Wall);
        // (1,1) at level 1: m0 = 4 − 4 = 0 → wall
        assert_eq!(fold(model, &[1, 1]).unwrap(), Folded::Wall);
        // (2,1): m = (−1, 3, 2) → s0 → (1, 2, 1) → field (1,0), sign −1
        assert_eq!(
            fold(model, &[2, 1]).unwrap(),
            Folded::Alcove {
                labels: vec![1, 0],
                sign: -1
            }
        );
    }
}
