//! Orbit decompositions of `X × Y` for finite `G`-sets and the convolution
//! algebra of orbit indicator operators.
//!
//! An operator `Σ_Ω a_Ω g_Ω` with `g_Ω f(x) = Σ_{y : (x,y) ∈ Ω} f(y)` is
//! stored by its orbit coefficients; products are computed from structure
//! constants read off at one representative per orbit.

use std::collections::HashMap;

use num::Zero;
use petgraph::unionfind::UnionFind;
use rayon::prelude::*;

use crate::qlinalg::q;
use crate::Q;

/// A partition of `X × Y` into orbits, labeled `0..count`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairOrbits {
    n_rows: usize,
    n_cols: usize,
    labels: Vec<u32>,
    reps: Vec<(usize, usize)>,
    sizes: Vec<usize>,
}

impl PairOrbits {
    /// From row-major labels; labels must be `0..count` with every value used.
    pub fn from_labels(n_rows: usize, n_cols: usize, labels: Vec<u32>) -> Self {
        assert_eq!(labels.len(), n_rows * n_cols);
        let count = labels.iter().map(|&l| l as usize + 1).max().unwrap_or(0);
        let mut reps = vec![None; count];
        let mut sizes = vec![0; count];
        for (k, &l) in labels.iter().enumerate() {
            sizes[l as usize] += 1;
            reps[l as usize].get_or_insert((k / n_cols, k % n_cols));
        }
        let reps = reps.into_iter().map(|r| r.expect("every label occurs")).collect();
        PairOrbits { n_rows, n_cols, labels, reps, sizes }
    }

    /// Labels by `f(x, y)`, numbered in the order of `keys`. Every pair must
    /// map to a key in `keys`; unused keys are dropped from the numbering.
    pub fn from_invariant<K, F>(n_rows: usize, n_cols: usize, keys: &[K], f: F) -> (Self, Vec<K>)
    where
        K: Eq + std::hash::Hash + Clone + Send + Sync,
        F: Fn(usize, usize) -> K + Sync,
    {
        let position: HashMap<&K, u32> = keys.iter().enumerate().map(|(i, k)| (k, i as u32)).collect();
        let raw: Vec<u32> = (0..n_rows)
            .into_par_iter()
            .flat_map_iter(|x| {
                let f = &f;
                let position = &position;
                (0..n_cols).map(move |y| *position.get(&f(x, y)).expect("invariant outside key set"))
            })
            .collect();
        let mut used = vec![false; keys.len()];
        for &l in &raw {
            used[l as usize] = true;
        }
        let mut renumber = vec![u32::MAX; keys.len()];
        let mut kept = Vec::new();
        for (i, k) in keys.iter().enumerate() {
            if used[i] {
                renumber[i] = kept.len() as u32;
                kept.push(k.clone());
            }
        }
        let labels = raw.into_iter().map(|l| renumber[l as usize]).collect();
        (Self::from_labels(n_rows, n_cols, labels), kept)
    }

    pub fn n_rows(&self) -> usize {
        self.n_rows
    }

    pub fn n_cols(&self) -> usize {
        self.n_cols
    }

    pub fn count(&self) -> usize {
        self.reps.len()
    }

    pub fn label(&self, x: usize, y: usize) -> usize {
        self.labels[x * self.n_cols + y] as usize
    }

    pub fn rep(&self, orbit: usize) -> (usize, usize) {
        self.reps[orbit]
    }

    pub fn size(&self, orbit: usize) -> usize {
        self.sizes[orbit]
    }

    /// Number of `y` with `(x, y)` in the orbit, for any `x` (the row sums
    /// of `g_Ω`; constant when `G` is transitive on `X`).
    pub fn row_degree(&self, orbit: usize) -> usize {
        let (x, _) = self.reps[orbit];
        (0..self.n_cols).filter(|&y| self.label(x, y) == orbit).count()
    }

    /// Whether two labelings define the same partition of `X × Y`.
    pub fn same_partition(&self, other: &PairOrbits) -> bool {
        if self.n_rows != other.n_rows || self.n_cols != other.n_cols || self.count() != other.count() {
            return false;
        }
        let mut map = vec![u32::MAX; self.count()];
        self.labels.iter().zip(&other.labels).all(|(&a, &b)| {
            let slot = &mut map[a as usize];
            if *slot == u32::MAX {
                *slot = b;
            }
            *slot == b
        })
    }

    /// The labels of the transposed pairs: `op[Ω]` is the orbit of `(y, x)`
    /// for `(x, y) ∈ Ω`, computed in `transposed` (an orbit partition of `Y × X`).
    pub fn op_into(&self, transposed: &PairOrbits) -> Vec<usize> {
        self.reps.iter().map(|&(x, y)| transposed.label(y, x)).collect()
    }

    /// Dense 0/1 matrix of `g_Ω` (rows `X`, columns `Y`).
    pub fn indicator(&self, orbit: usize) -> Vec<Vec<Q>> {
        (0..self.n_rows)
            .map(|x| (0..self.n_cols).map(|y| if self.label(x, y) == orbit { q(1) } else { Q::zero() }).collect())
            .collect()
    }
}

/// Orbits of `X × Y` under a group given by the permutations its generators
/// induce on `X` and on `Y`, computed by union-find.
pub fn orbits_by_generators(
    n_rows: usize,
    n_cols: usize,
    row_perms: &[Vec<usize>],
    col_perms: &[Vec<usize>],
) -> PairOrbits {
    let mut uf = UnionFind::<usize>::new(n_rows * n_cols);
    for (rp, cp) in row_perms.iter().zip(col_perms) {
        for x in 0..n_rows {
            for y in 0..n_cols {
                uf.union(x * n_cols + y, rp[x] * n_cols + cp[y]);
            }
        }
    }
    let mut names: HashMap<usize, u32> = HashMap::new();
    let labels = (0..n_rows * n_cols)
        .map(|k| {
            let root = uf.find(k);
            let next = names.len() as u32;
            *names.entry(root).or_insert(next)
        })
        .collect();
    PairOrbits::from_labels(n_rows, n_cols, labels)
}

/// Structure constants of convolution: `s[a][b][d]` is the coefficient of
/// `g_d` in `g_a ∘ g_b`, where `a` runs over orbits of `X × Y`, `b` over
/// `Y × Z` and `d` over `X × Z`. It equals the number of `y` with
/// `(x, y) ∈ a` and `(y, z) ∈ b` for a representative `(x, z)` of `d`.
pub fn structure_constants(xy: &PairOrbits, yz: &PairOrbits, xz: &PairOrbits) -> Vec<Vec<Vec<u64>>> {
    assert_eq!(xy.n_cols, yz.n_rows);
    let per_d: Vec<Vec<u64>> = (0..xz.count())
        .into_par_iter()
        .map(|d| {
            let (x, z) = xz.rep(d);
            let mut counts = vec![0u64; xy.count() * yz.count()];
            for y in 0..xy.n_cols {
                counts[xy.label(x, y) * yz.count() + yz.label(y, z)] += 1;
            }
            counts
        })
        .collect();
    (0..xy.count())
        .map(|a| (0..yz.count()).map(|b| per_d.iter().map(|c| c[a * yz.count() + b]).collect()).collect())
        .collect()
}

/// Product of orbit-coordinate operators using precomputed structure constants.
pub fn convolve(s: &[Vec<Vec<u64>>], a: &[Q], b: &[Q], out_len: usize) -> Vec<Q> {
    let mut out = vec![Q::zero(); out_len];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if y.is_zero() {
                continue;
            }
            let xy = x * y;
            for (d, &c) in s[i][j].iter().enumerate() {
                if c != 0 {
                    out[d] += &xy * q(c as i64);
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qlinalg::mat_mul;

    /// `S_3` acting on `{0, 1, 2}`.
    fn s3() -> Vec<Vec<usize>> {
        vec![vec![1, 0, 2], vec![0, 2, 1]]
    }

    #[test]
    fn orbits_of_symmetric_group_on_pairs() {
        let o = orbits_by_generators(3, 3, &s3(), &s3());
        assert_eq!(o.count(), 2);
        assert_eq!(o.size(o.label(0, 0)), 3);
        assert_eq!(o.size(o.label(0, 1)), 6);
        let by_equality = PairOrbits::from_labels(3, 3, (0..9).map(|k| u32::from(k / 3 != k % 3)).collect());
        assert!(o.same_partition(&by_equality));
        assert_eq!(o.op_into(&o), vec![0, 1]);
    }

    #[test]
    fn constants_match_matrix_products() {
        let o = orbits_by_generators(3, 3, &s3(), &s3());
        let s = structure_constants(&o, &o, &o);
        for a in 0..2 {
            for b in 0..2 {
                let prod = mat_mul(&o.indicator(a), &o.indicator(b), 3);
                let mut expect = vec![vec![Q::zero(); 3]; 3];
                for (d, &c) in s[a][b].iter().enumerate() {
                    for (x, row) in o.indicator(d).iter().enumerate() {
                        for (y, v) in row.iter().enumerate() {
                            expect[x][y] += v * q(c as i64);
                        }
                    }
                }
                assert_eq!(prod, expect);
            }
        }
        // g_{≠}^2 = 2 g_= + g_{≠}
        let ne = o.label(0, 1);
        let eq = o.label(0, 0);
        assert_eq!(s[ne][ne][eq], 2);
        assert_eq!(s[ne][ne][ne], 1);
    }
}
