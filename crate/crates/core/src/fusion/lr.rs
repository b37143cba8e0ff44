//! Classical Littlewood–Richardson coefficients by exhaustive enumeration of
//! LR skew tableaux, and the resulting SU(n) tensor-product decomposition.

/// Number of semistandard fillings of ν/λ with content μ whose reverse
/// reading word is a lattice word.
///
/// Partitions are given as weakly decreasing row lengths; trailing zeros are
/// allowed and lengths may differ.
pub fn lr_coefficient(lambda: &[u32], mu: &[u32], nu: &[u32]) -> u64 {
    let rows = lambda.len().max(mu.len()).max(nu.len());
    let pad = |p: &[u32]| {
        let mut v = p.to_vec();
        v.resize(rows, 0);
        v
    };
    let (lambda, mu, nu) = (pad(lambda), pad(mu), pad(nu));
    let size = |p: &[u32]| p.iter().map(|&r| r as u64).sum::<u64>();
    if size(&nu) != size(&lambda) + size(&mu) || lambda.iter().zip(&nu).any(|(l, n)| l > n) {
        return 0;
    }
    let content: Vec<u32> = mu.iter().copied().filter(|&m| m > 0).collect();
    // cells in reading order: rows top to bottom, each row right to left
    let cells: Vec<(usize, usize)> = (0..rows)
        .flat_map(|i| {
            (lambda[i] as usize..nu[i] as usize)
                .rev()
                .map(move |c| (i, c))
        })
        .collect();
    let width = nu.first().copied().unwrap_or(0) as usize;
    let mut filling = Tableau {
        lambda: &lambda,
        nu: &nu,
        content: &content,
        grid: vec![0u32; rows * width.max(1)],
        width: width.max(1),
        counts: vec![0; content.len() + 1],
    };
    filling.count(&cells, 0)
}

struct Tableau<'a> {
    lambda: &'a [u32],
    nu: &'a [u32],
    content: &'a [u32],
    grid: Vec<u32>,
    width: usize,
    counts: Vec<u32>,
}

impl Tableau<'_> {
    fn at(&self, i: usize, c: usize) -> u32 {
        self.grid[i * self.width + c]
    }

    fn count(&mut self, cells: &[(usize, usize)], pos: usize) -> u64 {
        if pos == cells.len() {
            return 1;
        }
        let (i, c) = cells[pos];
        // rows weakly increase left to right; we fill right to left
        let mut hi = self.content.len() as u32;
        if c + 1 < self.nu[i] as usize {
            hi = hi.min(self.at(i, c + 1));
        }
        // columns strictly increase downwards
        let mut lo = 1;
        if i > 0 && c >= self.lambda[i - 1] as usize {
            lo = self.at(i - 1, c) + 1;
        }
        let mut total = 0;
        for v in lo..=hi {
            let vi = v as usize;
            if self.counts[vi] >= self.content[vi - 1] {
                continue;
            }
            if vi > 1 && self.counts[vi] + 1 > self.counts[vi - 1] {
                continue;
            }
            self.counts[vi] += 1;
            self.grid[i * self.width + c] = v;
            total += self.count(cells, pos + 1);
            self.counts[vi] -= 1;
        }
        self.grid[i * self.width + c] = 0;
        total
    }
}

/// Young-diagram rows (length n) of an SU(n) weight in Dynkin labels.
pub fn dynkin_to_rows(labels: &[u32]) -> Vec<u32> {
    let mut rows = vec![0; labels.len() + 1];
    for i in (0..labels.len()).rev() {
        rows[i] = rows[i + 1] + labels[i];
    }
    rows
}

/// Dynkin labels of a partition with at most n rows (full columns dropped).
pub fn rows_to_dynkin(rows: &[u32]) -> Vec<u32> {
    rows.windows(2).map(|w| w[0] - w[1]).collect()
}

/// Classical decomposition a ⊗ b = Σ mult·ν for SU(n), with n = a.len()+1.
/// Returned as (Dynkin labels, multiplicity), multiplicities positive.
pub fn classical_product(a: &[u32], b: &[u32]) -> Vec<(Vec<u32>, u64)> {
    let n = a.len() + 1;
    let lambda = dynkin_to_rows(a);
    let mu = dynkin_to_rows(b);
    let total: u32 = lambda.iter().sum::<u32>() + mu.iter().sum::<u32>();
    let mut out = Vec::new();
    let mut nu = Vec::with_capacity(n);
    enumerate_nu(&lambda, mu[0], total, u32::MAX, &mut nu, &mut |nu| {
        let c = lr_coefficient(&lambda, &mu, nu);
        if c > 0 {
            out.push((rows_to_dynkin(nu), c));
        }
    });
    out
}

// ν ⊇ λ with ν_i ≤ λ_i + μ_1 and |ν| = total, at most n rows.
fn enumerate_nu(
    lambda: &[u32],
    mu_first: u32,
    remaining: u32,
    cap: u32,
    nu: &mut Vec<u32>,
    visit: &mut dyn FnMut(&[u32]),
) {
    let i = nu.len();
    if i == lambda.len() {
        if remaining == 0 {
            visit(nu);
        }
        return;
    }
    let lo = lambda[i];
    let hi = (lambda[i] + mu_first).min(cap).min(remaining);
    if lo > hi {
        return;
    }
    for r in lo..=hi {
        nu.push(r);
        enumerate_nu(lambda, mu_first, remaining - r, r, nu, visit);
        nu.pop();
    }
}
