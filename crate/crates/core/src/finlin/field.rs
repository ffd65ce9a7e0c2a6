use std::fmt;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use super::{all_tuples, inv_mod_p};
use crate::{Error, Result};

/// A subspace of `F_p^n`, stored by its reduced row echelon basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Subspace {
    p: u32,
    n: usize,
    rows: Vec<Vec<u32>>,
}

/// Reduced row echelon form of the row space of `m` over `F_p`. Entries
/// are reduced mod `p` first.
pub fn rref(p: u32, n: usize, m: &[Vec<u32>]) -> Subspace {
    let mut rows: Vec<Vec<u32>> = m
        .iter()
        .map(|r| {
            debug_assert_eq!(r.len(), n);
            r.iter().map(|&x| x % p).collect()
        })
        .collect();
    let mut r = 0;
    for c in 0..n {
        let Some(k) = (r..rows.len()).find(|&k| rows[k][c] != 0) else {
            continue;
        };
        rows.swap(r, k);
        let inv = inv_mod_p(rows[r][c], p);
        for x in rows[r].iter_mut() {
            *x = *x * inv % p;
        }
        let pivot = rows[r].clone();
        for (k, row) in rows.iter_mut().enumerate() {
            if k != r && row[c] != 0 {
                let f = row[c];
                for (x, &y) in row.iter_mut().zip(&pivot) {
                    *x = (*x + (p - f) * y) % p;
                }
            }
        }
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    Subspace { p, n, rows }
}

impl Subspace {
    pub fn zero(p: u32, n: usize) -> Self {
        Subspace { p, n, rows: Vec::new() }
    }

    pub fn full(p: u32, n: usize) -> Self {
        Subspace { p, n, rows: (0..n).map(|i| unit(n, i)).collect() }
    }

    /// The span of the standard basis vectors with the given indices.
    pub fn coordinate(p: u32, n: usize, indices: &[usize]) -> Self {
        rref(p, n, &indices.iter().map(|&i| unit(n, i)).collect_vec())
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn basis(&self) -> &[Vec<u32>] {
        &self.rows
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.rows.iter().map(|r| r.iter().position(|&x| x != 0).expect("nonzero row")).collect()
    }

    /// Reduces `v` against the basis; zero iff `v` lies in the subspace.
    pub fn reduce(&self, v: &[u32]) -> Vec<u32> {
        let p = self.p;
        let mut v: Vec<u32> = v.iter().map(|&x| x % p).collect();
        for (row, c) in self.rows.iter().zip(self.pivots()) {
            let f = v[c];
            if f != 0 {
                for (x, &y) in v.iter_mut().zip(row) {
                    *x = (*x + (p - f) * y) % p;
                }
            }
        }
        v
    }

    pub fn contains_vector(&self, v: &[u32]) -> bool {
        self.reduce(v).iter().all(|&x| x == 0)
    }

    pub fn contains(&self, other: &Subspace) -> bool {
        other.rows.iter().all(|r| self.contains_vector(r))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let rows = self.rows.iter().chain(&other.rows).cloned().collect_vec();
        rref(self.p, self.n, &rows)
    }

    pub fn dim_intersection(&self, other: &Subspace) -> usize {
        self.dim() + other.dim() - self.sum(other).dim()
    }

    /// Zassenhaus: the intersection from the echelon form of `[[u, u], [w, 0]]`.
    pub fn intersection(&self, other: &Subspace) -> Subspace {
        let n = self.n;
        let mut block: Vec<Vec<u32>> = self.rows.iter().map(|r| r.iter().chain(r).copied().collect()).collect();
        block.extend(other.rows.iter().map(|r| r.iter().copied().chain(std::iter::repeat_n(0, n)).collect()));
        let big = rref(self.p, 2 * n, &block);
        let rows = big
            .rows
            .iter()
            .filter(|r| r[..n].iter().all(|&x| x == 0))
            .map(|r| r[n..].to_vec())
            .collect_vec();
        rref(self.p, n, &rows)
    }

    /// All `p^dim` vectors.
    pub fn elements(&self) -> Vec<Vec<u32>> {
        let p = self.p;
        all_tuples(self.dim(), p)
            .into_iter()
            .map(|coeffs| {
                let mut v = vec![0; self.n];
                for (c, row) in coeffs.iter().zip(&self.rows) {
                    for (x, &y) in v.iter_mut().zip(row) {
                        *x = (*x + c * y) % p;
                    }
                }
                v
            })
            .collect()
    }

    /// The image under `v ↦ v g`.
    pub fn act(&self, g: &[Vec<u32>]) -> Subspace {
        let rows = self.rows.iter().map(|r| super::apply_matrix(r, g, self.p)).collect_vec();
        rref(self.p, self.n, &rows)
    }

    /// The image in `F_p^n / v ≅ F_p^{n - dim v}`, coordinates taken on the
    /// non-pivot columns of `v`. Requires `v ⊆ self`.
    pub fn quotient(&self, v: &Subspace) -> Result<Subspace> {
        if !self.contains(v) {
            return Err(Error::NotContained(format!("{v} is not inside {self}")));
        }
        Ok(self.project(v))
    }

    /// The image in `F_p^n / v` without any containment requirement.
    pub fn project(&self, v: &Subspace) -> Subspace {
        let pivots = v.pivots();
        let keep = (0..self.n).filter(|c| !pivots.contains(c)).collect_vec();
        let rows = self
            .rows
            .iter()
            .map(|r| {
                let red = v.reduce(r);
                keep.iter().map(|&c| red[c]).collect_vec()
            })
            .collect_vec();
        rref(self.p, keep.len(), &rows)
    }
}

fn unit(n: usize, i: usize) -> Vec<u32> {
    let mut v = vec![0; n];
    v[i] = 1;
    v
}

impl fmt::Display for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows = self.rows.iter().map(|r| r.iter().join(",")).join(";");
        write!(f, "<{rows}>")
    }
}

/// All `d`-dimensional subspaces of `F_p^n`, by pivot set in lexicographic
/// order and then free entries.
pub fn subspaces(n: usize, d: usize, p: u32) -> Vec<Subspace> {
    if d > n {
        return Vec::new();
    }
    let mut out = Vec::new();
    for pivots in (0..n).combinations(d) {
        // free positions: (row, col) with col > pivot and col not a pivot
        let free = pivots
            .iter()
            .enumerate()
            .flat_map(|(r, &pc)| (pc + 1..n).filter(|c| !pivots.contains(c)).map(move |c| (r, c)))
            .collect_vec();
        for values in all_tuples(free.len(), p) {
            let mut rows = vec![vec![0; n]; d];
            for (r, &pc) in pivots.iter().enumerate() {
                rows[r][pc] = 1;
            }
            for (&(r, c), &x) in free.iter().zip(&values) {
                rows[r][c] = x;
            }
            out.push(Subspace { p, n, rows });
        }
    }
    out
}

/// Quotients every member of a flag by `v`.
pub fn quotient_flag(x: &[Subspace], v: &Subspace) -> Result<Vec<Subspace>> {
    x.iter().map(|m| m.quotient(v)).collect()
}

#[cfg(test)]
mod tests {
    use rand::{Rng, SeedableRng};

    use super::*;

    fn gaussian_binomial(n: usize, d: usize, p: u64) -> u64 {
        let num: u64 = (0..d).map(|i| p.pow((n - i) as u32) - 1).product();
        let den: u64 = (0..d).map(|i| p.pow((i + 1) as u32) - 1).product();
        num / den
    }

    #[test]
    fn subspace_counts() {
        assert_eq!(subspaces(3, 0, 2).len(), 1);
        assert_eq!(subspaces(3, 1, 2).len(), 7);
        assert_eq!(subspaces(4, 2, 2).len(), 35);
        for p in [2, 3] {
            for n in 0..=4 {
                for d in 0..=n {
                    let all = subspaces(n, d, p);
                    assert_eq!(all.len() as u64, gaussian_binomial(n, d, p as u64));
                    let distinct: std::collections::HashSet<_> = all.iter().collect();
                    assert_eq!(distinct.len(), all.len());
                    assert!(all.iter().all(|s| s.dim() == d && rref(p, n, s.basis()) == *s));
                }
            }
        }
    }

    #[test]
    fn canonical_form_is_unique() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(3);
        for _ in 0..1000 {
            let p = if rng.gen_bool(0.5) { 2 } else { 3 };
            let n = 4;
            let m: Vec<Vec<u32>> = (0..rng.gen_range(0..5))
                .map(|_| (0..n).map(|_| rng.gen_range(0..p)).collect())
                .collect();
            let s = rref(p, n, &m);
            assert_eq!(rref(p, n, s.basis()), s);
            // a random recombination has the same span
            let mut mixed = m.clone();
            for _ in 0..3 {
                if mixed.len() >= 2 {
                    let (i, j) = (rng.gen_range(0..mixed.len()), rng.gen_range(0..mixed.len()));
                    if i != j {
                        let f = rng.gen_range(0..p);
                        let src = mixed[j].clone();
                        for (x, y) in mixed[i].iter_mut().zip(src) {
                            *x = (*x + f * y) % p;
                        }
                    }
                }
                mixed.reverse();
            }
            assert_eq!(rref(p, n, &mixed), s);
            let elements: std::collections::BTreeSet<_> = s.elements().into_iter().collect();
            let from_mixed: std::collections::BTreeSet<_> =
                rref(p, n, &mixed).elements().into_iter().collect();
            assert_eq!(elements, from_mixed);
        }
        assert_eq!(rref(2, 3, &[vec![0, 0, 0]]), Subspace::zero(2, 3));
        assert_eq!(rref(2, 3, &[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]), Subspace::full(2, 3));
    }

    #[test]
    fn intersection_matches_elementwise() {
        for p in [2, 3] {
            let all = subspaces(3, 1, p).into_iter().chain(subspaces(3, 2, p)).collect_vec();
            for a in &all {
                for b in &all {
                    let i = a.intersection(b);
                    let brute = a.elements().into_iter().filter(|v| b.contains_vector(v)).count();
                    assert_eq!(i.elements().len(), brute);
                    assert_eq!(i.dim(), a.dim_intersection(b));
                    assert!(a.contains(&i) && b.contains(&i));
                }
            }
        }
    }

    #[test]
    fn quotients() {
        let p = 2;
        let line = rref(p, 3, &[vec![1, 1, 0]]);
        let plane = rref(p, 3, &[vec![1, 1, 0], vec![0, 0, 1]]);
        let full = Subspace::full(p, 3);
        let flag = vec![full.clone(), plane.clone(), line.clone()];
        let q = quotient_flag(&flag, &line).unwrap();
        assert_eq!(q.iter().map(Subspace::dim).collect_vec(), vec![2, 1, 0]);
        assert_eq!(q[0], Subspace::full(p, 2));
        let unchanged = quotient_flag(&flag, &Subspace::zero(p, 3)).unwrap();
        assert_eq!(unchanged, flag);
        assert!(line.quotient(&plane).is_err());
        // the quotient map is linear with kernel v
        for w in subspaces(3, 2, p) {
            if w.contains(&line) {
                assert_eq!(w.quotient(&line).unwrap().dim(), 1);
            }
        }
    }
}
