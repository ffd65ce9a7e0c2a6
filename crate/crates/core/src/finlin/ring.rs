use std::fmt;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use super::field::{rref, Subspace};
use super::{all_tuples, inv_mod_p};
use crate::combinat::Partition;
use crate::{Error, Result};

/// A submodule of `(Z/p^2)^n`, stored in Howell normal form: echelon rows
/// whose pivots are `1` or `p`, entries above a pivot reduced below it, and
/// every element vanishing on the first `k` columns in the span of the rows
/// with pivot beyond `k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Module2 {
    p: u32,
    n: usize,
    rows: Vec<Vec<u32>>,
}

fn valuation(x: u32, p: u32) -> u32 {
    match x {
        0 => 2,
        _ if x % p == 0 => 1,
        _ => 0,
    }
}

impl Module2 {
    /// The submodule generated by `gens` (entries reduced mod `p^2`).
    pub fn new(p: u32, n: usize, gens: &[Vec<u32>]) -> Self {
        let big = p * p;
        let mut pool: Vec<Vec<u32>> = gens.iter().map(|r| r.iter().map(|&x| x % big).collect()).collect();
        let mut rows: Vec<Vec<u32>> = Vec::new();
        let mut pivots: Vec<(usize, u32)> = Vec::new();
        for c in 0..n {
            pool.retain(|r| r.iter().any(|&x| x != 0));
            let Some(best) = (0..pool.len()).filter(|&k| pool[k][c] != 0).min_by_key(|&k| valuation(pool[k][c], p))
            else {
                continue;
            };
            let mut row = pool.swap_remove(best);
            let v = valuation(row[c], p);
            // scale the pivot to p^v by a unit
            let unit = inv_mod_p((row[c] / p.pow(v)) % p, p);
            // lift the inverse mod p to an inverse mod p^2
            let unit = lift_inverse(row[c] / p.pow(v), unit, p);
            for x in row.iter_mut() {
                *x = (*x as u64 * unit as u64 % big as u64) as u32;
            }
            let pivot = p.pow(v);
            for other in pool.iter_mut() {
                if other[c] != 0 {
                    let f = other[c] / pivot;
                    for (x, &y) in other.iter_mut().zip(&row) {
                        *x = ((*x as u64 + (big - f % big) as u64 * y as u64) % big as u64) as u32;
                    }
                }
            }
            if v == 1 {
                pool.push(row.iter().map(|&x| x * p % big).collect());
            }
            pivots.push((c, pivot));
            rows.push(row);
        }
        for r in 0..rows.len() {
            let (c, pivot) = pivots[r];
            let (above, rest) = rows.split_at_mut(r);
            let row = &rest[0];
            for other in above.iter_mut() {
                let f = other[c] / pivot;
                if f != 0 {
                    for (x, &y) in other.iter_mut().zip(row) {
                        *x = ((*x as u64 + (big - f) as u64 * y as u64) % big as u64) as u32;
                    }
                }
            }
        }
        Module2 { p, n, rows }
    }

    pub fn zero(p: u32, n: usize) -> Self {
        Module2 { p, n, rows: Vec::new() }
    }

    pub fn full(p: u32, n: usize) -> Self {
        let rows = (0..n).map(|i| (0..n).map(|j| u32::from(i == j)).collect()).collect_vec();
        Module2::new(p, n, &rows)
    }

    /// `p · F_p^n`-style embedding of a subspace of the torsion copy.
    pub fn from_torsion(s: &Subspace) -> Self {
        let p = s.p();
        let rows = s.basis().iter().map(|r| r.iter().map(|&x| x * p).collect_vec()).collect_vec();
        Module2::new(p, s.ambient_dim(), &rows)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> &[Vec<u32>] {
        &self.rows
    }

    fn pivot_info(&self) -> Vec<(usize, u32)> {
        self.rows
            .iter()
            .map(|r| {
                let c = r.iter().position(|&x| x != 0).expect("nonzero row");
                (c, r[c])
            })
            .collect()
    }

    /// `log_p |x|`.
    pub fn log_order(&self) -> usize {
        self.pivot_info().iter().map(|&(_, pv)| if pv == 1 { 2 } else { 1 }).sum()
    }

    /// `(a, b)`: the type `2^a 1^b`.
    pub fn type_ab(&self) -> (usize, usize) {
        let a = self.image().dim();
        (a, self.log_order() - 2 * a)
    }

    pub fn type_partition(&self) -> Partition {
        let (a, b) = self.type_ab();
        Partition::from_unsorted(&std::iter::repeat_n(2, a).chain(std::iter::repeat_n(1, b)).collect_vec())
    }

    /// `π x`, divided by `p`, as a subspace of `F_p^n`.
    pub fn image(&self) -> Subspace {
        rref(self.p, self.n, &self.rows)
    }

    /// `x[π] = {v ∈ x : p v = 0}`, divided by `p`.
    pub fn torsion(&self) -> Subspace {
        let p = self.p;
        let big = p * p;
        let reduced = self.rows.iter().map(|r| r.iter().map(|&x| x % p).collect_vec()).collect_vec();
        // kernel of k ↦ Σ k_i r̄_i over F_p
        let kernel = left_kernel(&reduced, p, self.n);
        let mut gens: Vec<Vec<u32>> = self.image().basis().to_vec();
        for k in kernel {
            let mut v = vec![0u32; self.n];
            for (&ki, row) in k.iter().zip(&self.rows) {
                for (x, &y) in v.iter_mut().zip(row) {
                    *x = (*x + ki * y) % big;
                }
            }
            debug_assert!(v.iter().all(|&x| x % p == 0));
            gens.push(v.iter().map(|&x| x / p).collect());
        }
        rref(p, self.n, &gens)
    }

    /// Reduces `v` by the rows; the result is zero iff `v ∈ x`.
    fn reduce(&self, v: &[u32]) -> Vec<u32> {
        let big = self.p * self.p;
        let mut v: Vec<u32> = v.iter().map(|&x| x % big).collect();
        for (row, (c, pivot)) in self.rows.iter().zip(self.pivot_info()) {
            if v[c] % pivot != 0 {
                return v;
            }
            let f = v[c] / pivot;
            if f != 0 {
                for (x, &y) in v.iter_mut().zip(row) {
                    *x = ((*x as u64 + (big - f) as u64 * y as u64) % big as u64) as u32;
                }
            }
        }
        v
    }

    pub fn contains_vector(&self, v: &[u32]) -> bool {
        self.reduce(v).iter().all(|&x| x == 0)
    }

    pub fn contains(&self, other: &Module2) -> bool {
        other.rows.iter().all(|r| self.contains_vector(r))
    }

    pub fn sum(&self, other: &Module2) -> Module2 {
        Module2::new(self.p, self.n, &self.rows.iter().chain(&other.rows).cloned().collect_vec())
    }

    pub fn intersection(&self, other: &Module2) -> Module2 {
        let (small, big) = if self.log_order() <= other.log_order() { (self, other) } else { (other, self) };
        let gens = small.elements().into_iter().filter(|v| big.contains_vector(v)).collect_vec();
        Module2::new(self.p, self.n, &gens)
    }

    /// `p x` as a submodule.
    pub fn times_p(&self) -> Module2 {
        Module2::from_torsion(&self.image())
    }

    /// All elements (there are `p^{log_order}`).
    pub fn elements(&self) -> Vec<Vec<u32>> {
        let big = self.p * self.p;
        let orders = self.pivot_info().iter().map(|&(_, pv)| big / pv).collect_vec();
        let mut out = vec![vec![0u32; self.n]];
        for (row, &ord) in self.rows.iter().zip(&orders) {
            out = out
                .into_iter()
                .flat_map(|v| {
                    (0..ord).map(move |k| v.iter().zip(row).map(|(&x, &y)| (x + k * y) % big).collect_vec())
                })
                .collect();
        }
        out
    }

    /// The image under `v ↦ v g`.
    pub fn act(&self, g: &[Vec<u32>]) -> Module2 {
        let big = self.p * self.p;
        let rows = self.rows.iter().map(|r| super::apply_matrix(r, g, big)).collect_vec();
        Module2::new(self.p, self.n, &rows)
    }
}

fn lift_inverse(a: u32, inv_mod_p: u32, p: u32) -> u32 {
    let big = (p * p) as u64;
    // Newton step: x' = x (2 - a x)
    let x = inv_mod_p as u64;
    let ax = a as u64 % big * x % big;
    (x * ((2 + 2 * big - ax) % big) % big) as u32
}

/// Basis of `{k ∈ F_p^m : Σ k_i rows_i = 0}`.
fn left_kernel(rows: &[Vec<u32>], p: u32, n: usize) -> Vec<Vec<u32>> {
    let m = rows.len();
    // echelon form of [rows | I]; rows whose left half vanishes give the kernel
    let aug = rows
        .iter()
        .enumerate()
        .map(|(i, r)| r.iter().copied().chain((0..m).map(|j| u32::from(i == j))).collect_vec())
        .collect_vec();
    let red = rref(p, n + m, &aug);
    red.basis().iter().filter(|r| r[..n].iter().all(|&x| x == 0)).map(|r| r[n..].to_vec()).collect()
}

impl fmt::Display for Module2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{}>", self.rows.iter().map(|r| r.iter().join(",")).join(";"))
    }
}

pub fn torsion_and_image(x: &Module2) -> (Subspace, Subspace) {
    (x.torsion(), x.image())
}

/// Submodules of type `2^a 1^b`: one for each `W ⊆ V` with `dim W = a`,
/// `dim V = a + b` and each lift of a basis of `W` modulo `V`.
fn submodules_ab(n: usize, p: u32, a: usize, b: usize) -> Vec<Module2> {
    let mut out = Vec::new();
    for v in super::subspaces(n, a + b, p) {
        let v_pivots = v.pivots();
        let complement = (0..n).filter(|c| !v_pivots.contains(c)).collect_vec();
        for w in super::subspaces(n, a, p) {
            if !v.contains(&w) {
                continue;
            }
            for shifts in all_tuples(a * complement.len(), p) {
                let mut gens = v.basis().iter().map(|r| r.iter().map(|&x| x * p).collect_vec()).collect_vec();
                for (i, wrow) in w.basis().iter().enumerate() {
                    let mut g = wrow.clone();
                    for (k, &c) in complement.iter().enumerate() {
                        g[c] += p * shifts[i * complement.len() + k];
                    }
                    gens.push(g);
                }
                out.push(Module2::new(p, n, &gens));
            }
        }
    }
    out
}

/// All submodules of `(Z/p^2)^n`, grouped by type `2^a 1^b` in order of
/// increasing `a` then `b`.
pub fn submodules2(n: usize, p: u32) -> Vec<Module2> {
    (0..=n).flat_map(|a| (0..=n - a).flat_map(move |b| submodules_ab(n, p, a, b))).collect()
}

pub fn submodules2_of_type(n: usize, p: u32, mu: &Partition) -> Result<Vec<Module2>> {
    if mu.parts().iter().any(|&x| x > 2) || mu.len() > n {
        return Err(Error::InvalidType(format!("{mu} is not a type of a submodule of (Z/p^2)^{n}")));
    }
    let a = mu.parts().iter().filter(|&&x| x == 2).count();
    let b = mu.len() - a;
    Ok(submodules_ab(n, p, a, b))
}

#[cfg(test)]
mod tests {
    use std::collections::{BTreeSet, HashSet};

    use rand::{Rng, SeedableRng};

    use super::*;

    fn element_set(m: &Module2) -> BTreeSet<Vec<u32>> {
        m.elements().into_iter().collect()
    }

    fn closure(p: u32, n: usize, gens: &[Vec<u32>]) -> BTreeSet<Vec<u32>> {
        let big = p * p;
        let mut set = BTreeSet::from([vec![0; n]]);
        loop {
            let mut next = set.clone();
            for x in &set {
                for g in gens {
                    next.insert(x.iter().zip(g).map(|(&a, &b)| (a + b) % big).collect());
                }
            }
            if next.len() == set.len() {
                return set;
            }
            set = next;
        }
    }

    #[test]
    fn howell_form_is_canonical() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(11);
        let mut by_set: std::collections::HashMap<(u32, BTreeSet<Vec<u32>>), Module2> = Default::default();
        for _ in 0..1000 {
            let p = if rng.gen_bool(0.5) { 2 } else { 3 };
            let n = rng.gen_range(1..=3);
            let gens: Vec<Vec<u32>> = (0..rng.gen_range(0..4))
                .map(|_| (0..n).map(|_| rng.gen_range(0..p * p)).collect())
                .collect();
            let m = Module2::new(p, n, &gens);
            let set = closure(p, n, &gens);
            assert_eq!(element_set(&m), set);
            assert_eq!(set.len(), (p as usize).pow(m.log_order() as u32));
            assert_eq!(Module2::new(p, n, m.rows()), m);
            if let Some(prev) = by_set.insert((p, set), m.clone()) {
                assert_eq!(prev, m);
            }
            for g in &gens {
                assert!(m.contains_vector(g));
            }
        }
    }

    #[test]
    fn count_matches_subgroup_lattice_for_z4_squared() {
        // every subset of (Z/4)^2 containing 0 and closed under addition
        let elems: Vec<Vec<u32>> = all_tuples(2, 4);
        let index = |v: &[u32]| (v[0] * 4 + v[1]) as usize;
        let mut count = 0;
        for mask in 0u32..(1 << 16) {
            if mask & 1 == 0 {
                continue;
            }
            let inside = |v: &[u32]| mask >> index(v) & 1 == 1;
            let closed = elems.iter().filter(|a| inside(a)).all(|a| {
                elems.iter().filter(|b| inside(b)).all(|b| inside(&[(a[0] + b[0]) % 4, (a[1] + b[1]) % 4]))
            });
            if closed {
                count += 1;
            }
        }
        let all = submodules2(2, 2);
        assert_eq!(all.len(), count);
        assert_eq!(all.iter().collect::<HashSet<_>>().len(), all.len());
    }

    #[test]
    fn types_and_counts() {
        let t = |v: Vec<usize>| Partition::from_unsorted(&v);
        assert_eq!(submodules2_of_type(2, 2, &t(vec![2])).unwrap().len(), 6);
        assert_eq!(submodules2_of_type(2, 2, &t(vec![1])).unwrap().len(), 3);
        assert_eq!(submodules2_of_type(2, 2, &t(vec![])).unwrap(), vec![Module2::zero(2, 2)]);
        assert!(submodules2_of_type(2, 2, &t(vec![3])).is_err());
        for p in [2, 3] {
            for n in 1..=3 {
                let all = submodules2(n, p);
                assert_eq!(all.iter().collect::<HashSet<_>>().len(), all.len());
                let mut total = 0;
                for a in 0..=n {
                    for b in 0..=n - a {
                        let ty = t(std::iter::repeat_n(2, a).chain(std::iter::repeat_n(1, b)).collect());
                        let of_type = submodules2_of_type(n, p, &ty).unwrap();
                        total += of_type.len();
                        for x in &of_type {
                            assert_eq!(x.type_ab(), (a, b));
                            let (tor, img) = torsion_and_image(x);
                            assert_eq!((tor.dim(), img.dim()), (a + b, a));
                            assert!(tor.contains(&img));
                            // torsion elements checked directly
                            let big = p * p;
                            let brute = x
                                .elements()
                                .into_iter()
                                .filter(|v| v.iter().all(|&e| e * p % big == 0))
                                .count();
                            assert_eq!(brute, (p as usize).pow(tor.dim() as u32));
                        }
                    }
                }
                assert_eq!(total, all.len());
            }
        }
    }

    #[test]
    fn torsion_examples() {
        let free = Module2::full(2, 2);
        assert_eq!((free.torsion().dim(), free.image().dim()), (2, 2));
        let small = Module2::new(2, 2, &[vec![2, 0]]);
        assert_eq!((small.torsion().dim(), small.image().dim()), (1, 0));
        let mixed = Module2::new(2, 2, &[vec![1, 0], vec![0, 2]]);
        assert_eq!(mixed.type_ab(), (1, 1));
        assert_eq!((mixed.torsion().dim(), mixed.image().dim()), (2, 1));
        let cyclic = Module2::new(2, 2, &[vec![2, 1]]);
        assert_eq!(cyclic.type_ab(), (1, 0));
    }

    #[test]
    fn intersections_and_sums() {
        let all = submodules2(2, 2);
        for a in &all {
            for b in &all {
                let i = a.intersection(b);
                let brute: BTreeSet<_> = element_set(a).intersection(&element_set(b)).cloned().collect();
                assert_eq!(element_set(&i), brute);
                let s = a.sum(b);
                assert!(s.contains(a) && s.contains(b));
                assert_eq!(a.contains(b), element_set(b).is_subset(&element_set(a)));
            }
        }
    }
}
