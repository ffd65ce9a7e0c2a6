//! Permutations, Young subgroups, double cosets and the dictionary between
//! tableaux and permutations.
//!
//! Permutations are functions on `{0, .., n-1}` stored in one-line notation
//! and composed as functions: `a.compose(b)(i) = a(b(i))`. The product `ws`
//! used by the Hecke algebra is `w.compose(s)`.

use std::fmt;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::combinat::{Composition, ContingencyMatrix, Partition, Tableau};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation { images: (0..n).collect() }
    }

    /// From 0-based images.
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n || std::mem::replace(&mut seen[x], true) {
                return Err(Error::DimensionMismatch(format!("{images:?} is not a bijection")));
            }
        }
        Ok(Permutation { images })
    }

    /// From 1-based one-line notation, e.g. `[2, 1, 3]`.
    pub fn from_one_line(images: &[usize]) -> Result<Self> {
        if images.contains(&0) {
            return Err(Error::DimensionMismatch("one-line notation is 1-based".into()));
        }
        Self::from_images(images.iter().map(|&x| x - 1).collect())
    }

    /// The adjacent transposition swapping `i` and `i + 1` (0-based).
    pub fn simple(n: usize, i: usize) -> Self {
        let mut images: Vec<usize> = (0..n).collect();
        images.swap(i, i + 1);
        Permutation { images }
    }

    pub fn longest(n: usize) -> Self {
        Permutation { images: (0..n).rev().collect() }
    }

    pub fn n(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn one_line(&self) -> Vec<usize> {
        self.images.iter().map(|&x| x + 1).collect()
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation { images: other.images.iter().map(|&i| self.images[i]).collect() }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.n()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x] = i;
        }
        Permutation { images: inv }
    }

    /// `self ∘ s_i`, i.e. swap positions `i` and `i + 1` of the one-line form.
    pub fn times_simple(&self, i: usize) -> Permutation {
        let mut images = self.images.clone();
        images.swap(i, i + 1);
        Permutation { images }
    }

    /// A reduced word `[i_1, .., i_k]` with `self = s_{i_1} ∘ .. ∘ s_{i_k}`.
    pub fn reduced_word(&self) -> Vec<usize> {
        let mut w = self.clone();
        let mut word = Vec::new();
        while let Some(i) = (0..w.n().saturating_sub(1)).find(|&i| w.images[i] > w.images[i + 1]) {
            word.push(i);
            w = w.times_simple(i);
        }
        word.reverse();
        word
    }

    /// The permutation matrix with `P[w(j)][j] = 1`.
    pub fn matrix(&self) -> Vec<Vec<u8>> {
        let n = self.n();
        let mut m = vec![vec![0; n]; n];
        for (j, &i) in self.images.iter().enumerate() {
            m[i][j] = 1;
        }
        m
    }

    pub fn all(n: usize) -> Vec<Permutation> {
        (0..n).permutations(n).map(|images| Permutation { images }).collect()
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.one_line().iter().join(" "))
    }
}

/// Number of inversions.
pub fn length(w: &Permutation) -> usize {
    let im = w.images();
    (0..im.len()).map(|i| (i + 1..im.len()).filter(|&j| im[i] > im[j]).count()).sum()
}

/// The Young subgroup `S_c` preserving consecutive blocks of sizes `c`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct YoungSubgroup {
    shape: Composition,
    block_of: Vec<usize>,
}

impl YoungSubgroup {
    pub fn new(shape: &Composition) -> Self {
        let block_of = shape
            .parts()
            .iter()
            .enumerate()
            .flat_map(|(b, &len)| std::iter::repeat_n(b, len))
            .collect();
        YoungSubgroup { shape: shape.clone(), block_of }
    }

    pub fn shape(&self) -> &Composition {
        &self.shape
    }

    pub fn n(&self) -> usize {
        self.block_of.len()
    }

    /// Block index of each point.
    pub fn block_of(&self, i: usize) -> usize {
        self.block_of[i]
    }

    pub fn contains(&self, w: &Permutation) -> bool {
        (0..self.n()).all(|i| self.block_of[w.apply(i)] == self.block_of[i])
    }

    /// All elements, as products of permutations of each block.
    pub fn elements(&self) -> Vec<Permutation> {
        let mut out = vec![Permutation::identity(self.n())];
        let mut start = 0;
        for &len in self.shape.parts() {
            let block: Vec<usize> = (start..start + len).collect();
            let mut next = Vec::new();
            for w in &out {
                for perm in block.iter().copied().permutations(len) {
                    let mut images = w.images.clone();
                    for (k, &x) in perm.iter().enumerate() {
                        images[start + k] = x;
                    }
                    next.push(Permutation { images });
                }
            }
            out = next;
            start += len;
        }
        out
    }
}

/// The contingency matrix recording the double coset `S_a w S_b`: entry
/// `(i, j)` counts the points of block `j` of `b` sent into block `i` of `a`.
pub fn double_coset_matrix(a: &Composition, b: &Composition, w: &Permutation) -> ContingencyMatrix {
    let ya = YoungSubgroup::new(a);
    let yb = YoungSubgroup::new(b);
    let mut m = vec![vec![0; b.len()]; a.len()];
    for j in 0..w.n() {
        m[ya.block_of(w.apply(j))][yb.block_of(j)] += 1;
    }
    ContingencyMatrix::new(m)
}

/// The minimal-length element of the double coset with matrix `m`
/// (`m` in `M_{a,b}`): increasing on every block of `b`, with increasing
/// inverse on every block of `a`.
pub fn min_rep_of_matrix(a: &Composition, b: &Composition, m: &ContingencyMatrix) -> Permutation {
    let n = a.n();
    let a_start: Vec<usize> = prefix_starts(a);
    let b_start: Vec<usize> = prefix_starts(b);
    let mut next_value = a_start.clone();
    let mut images = vec![0; n];
    for j in 0..b.len() {
        let mut pos = b_start[j];
        for i in 0..a.len() {
            for _ in 0..m.get(i, j) {
                images[pos] = next_value[i];
                next_value[i] += 1;
                pos += 1;
            }
        }
    }
    Permutation { images }
}

fn prefix_starts(c: &Composition) -> Vec<usize> {
    let mut acc = 0;
    c.parts()
        .iter()
        .map(|&x| {
            let s = acc;
            acc += x;
            s
        })
        .collect()
}

/// Minimal representatives of the `(S_a, S_b)` double cosets in `S_n`, one
/// per matrix of `M_{a,b}` in its enumeration order.
pub fn double_coset_min_reps(a: &Composition, b: &Composition, n: usize) -> Result<Vec<Permutation>> {
    if a.n() != n || b.n() != n {
        return Err(Error::IncomparableSizes(a.n(), b.n()));
    }
    Ok(crate::combinat::contingency_matrices(a, b)?
        .iter()
        .map(|m| min_rep_of_matrix(a, b, m))
        .collect())
}

/// The row-reading standard tableau `φ^shape` (entries `1..=n` along rows).
pub fn superstandard_reading(shape: &Partition) -> Tableau {
    let mut next = 0;
    Tableau::from_rows_unchecked(
        shape
            .parts()
            .iter()
            .map(|&len| {
                (0..len)
                    .map(|_| {
                        next += 1;
                        next
                    })
                    .collect()
            })
            .collect(),
    )
}

/// The permutation `d(θ)` with `θ = φ^ν d(θ)`: `θ` is obtained from `φ^ν`
/// by letting `d(θ)` act on the right of the entries, so entry `i` of `φ^ν`
/// becomes `d(θ)^{-1}(i)` in our function notation. With this convention
/// `d(θ)` is the minimal element of its coset `S_ν d(θ)` whenever `θ` is
/// row standard.
pub fn d_of_tableau(theta: &Tableau) -> Result<Permutation> {
    if !theta.is_row_standard() {
        return Err(Error::NotStandard);
    }
    let phi = superstandard_reading(&theta.shape());
    let n = theta.size();
    // entry k of φ sits in the box holding θ-entry t; d^{-1}(k) = t
    let mut inv = vec![0; n];
    for (prow, trow) in phi.rows().iter().zip(theta.rows()) {
        for (&k, &t) in prow.iter().zip(trow) {
            inv[k - 1] = t - 1;
        }
    }
    Ok(Permutation { images: inv }.inverse())
}

/// Applies `w` on the right of the entries of a tableau (the inverse of
/// [`d_of_tableau`] when applied to `φ^ν`).
pub fn act_on_tableau(t: &Tableau, w: &Permutation) -> Tableau {
    let inv = w.inverse();
    t.relabel(|x| inv.apply(x - 1) + 1)
}

/// `μ(θ)`: replaces each entry `i` of a (row) standard tableau by the index
/// of the row of `φ^μ` containing `i`. `mu` may have zero parts.
pub fn collapse(theta: &Tableau, mu: &Composition) -> Tableau {
    let yb = YoungSubgroup::new(mu);
    theta.relabel(|x| yb.block_of(x - 1) + 1)
}

/// `first(Θ)`: within each label class `r`, replace the entries of `Θ` by
/// the elements of row `r` of `φ^μ` in increasing order along the row-major
/// reading order of `Θ`.
pub fn first_tableau(big_theta: &Tableau, mu: &Composition) -> Result<Tableau> {
    if !big_theta.is_semistandard() {
        return Err(Error::NotSemistandard);
    }
    let content = big_theta.content(mu.len());
    if content != mu.parts() || big_theta.max_label() > mu.len() {
        return Err(Error::ShapeMismatch(format!("content {content:?} is not of type {mu}")));
    }
    let mut next = prefix_starts(mu);
    let rows = big_theta
        .rows()
        .iter()
        .map(|row| {
            row.iter()
                .map(|&r| {
                    next[r - 1] += 1;
                    next[r - 1]
                })
                .collect()
        })
        .collect();
    Ok(Tableau::from_rows_unchecked(rows))
}

/// Whether the permutation matrix of `w` is in `λμ`-echelon form: its
/// `λ`-row blocks are row reduced echelon and its `μ`-column blocks are
/// column reduced echelon.
pub fn is_lambda_mu_echelon(w: &Permutation, lambda: &Composition, mu: &Composition) -> bool {
    let m = w.matrix();
    let n = w.n();
    let pivot_col = |i: usize| (0..n).find(|&j| m[i][j] == 1).expect("permutation row");
    let pivot_row = |j: usize| (0..n).find(|&i| m[i][j] == 1).expect("permutation column");
    let blocks = |c: &Composition| {
        prefix_starts(c).into_iter().zip(c.parts().iter().copied()).collect::<Vec<_>>()
    };
    let rows_ok = blocks(lambda).into_iter().all(|(start, len)| {
        (start..start + len).tuple_windows().all(|(i, k)| pivot_col(i) < pivot_col(k))
    });
    let cols_ok = blocks(mu).into_iter().all(|(start, len)| {
        (start..start + len).tuple_windows().all(|(j, k)| pivot_row(j) < pivot_row(k))
    });
    rows_ok && cols_ok
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeMap;

    use super::*;
    use crate::combinat::{
        contingency_matrices, partitions_of, sstd_enumerate, std_enumerate,
    };

    fn c(v: &[usize]) -> Composition {
        Composition::new(v.to_vec())
    }

    fn compositions(n: usize) -> Vec<Composition> {
        // all compositions of n with positive parts
        fn go(rem: usize, cur: &mut Vec<usize>, out: &mut Vec<Composition>) {
            if rem == 0 {
                out.push(Composition::new(cur.clone()));
                return;
            }
            for x in 1..=rem {
                cur.push(x);
                go(rem - x, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        go(n, &mut Vec::new(), &mut out);
        out
    }

    #[test]
    fn length_examples() {
        assert_eq!(length(&Permutation::identity(4)), 0);
        assert_eq!(length(&Permutation::longest(3)), 3);
        assert_eq!(length(&Permutation::from_one_line(&[2, 1, 3]).unwrap()), 1);
    }

    #[test]
    fn length_changes_by_one() {
        for n in 2..=5 {
            for w in Permutation::all(n) {
                for i in 0..n - 1 {
                    let a = length(&w) as isize;
                    let b = length(&w.times_simple(i)) as isize;
                    assert_eq!((a - b).abs(), 1);
                }
                let word = w.reduced_word();
                assert_eq!(word.len(), length(&w));
                let rebuilt = word
                    .iter()
                    .fold(Permutation::identity(n), |acc, &i| acc.times_simple(i));
                assert_eq!(rebuilt, w);
            }
        }
    }

    #[test]
    fn double_coset_examples() {
        assert_eq!(double_coset_min_reps(&c(&[1, 1, 1]), &c(&[1, 1, 1]), 3).unwrap().len(), 6);
        assert_eq!(
            double_coset_min_reps(&c(&[3]), &c(&[3]), 3).unwrap(),
            vec![Permutation::identity(3)]
        );
        assert_eq!(double_coset_min_reps(&c(&[2, 1]), &c(&[2, 1]), 3).unwrap().len(), 2);
    }

    #[test]
    fn min_reps_match_brute_force_minimum() {
        for n in 1..=5 {
            let all = Permutation::all(n);
            for a in compositions(n) {
                for b in compositions(n) {
                    let mut best: BTreeMap<ContingencyMatrix, Permutation> = BTreeMap::new();
                    for w in &all {
                        let key = double_coset_matrix(&a, &b, w);
                        let e = best.entry(key).or_insert_with(|| w.clone());
                        if length(w) < length(e) {
                            *e = w.clone();
                        }
                    }
                    let reps = double_coset_min_reps(&a, &b, n).unwrap();
                    assert_eq!(reps.len(), contingency_matrices(&a, &b).unwrap().len());
                    assert_eq!(reps.len(), best.len());
                    for r in &reps {
                        assert_eq!(&best[&double_coset_matrix(&a, &b, r)], r);
                    }
                }
            }
        }
    }

    #[test]
    fn d_of_tableau_examples() {
        let nu = Partition::new(vec![2, 1]).unwrap();
        let phi = superstandard_reading(&nu);
        assert_eq!(d_of_tableau(&phi).unwrap(), Permutation::identity(3));
        let theta = Tableau::new(vec![vec![1, 3], vec![2]]).unwrap();
        assert_eq!(d_of_tableau(&theta).unwrap(), Permutation::from_one_line(&[1, 3, 2]).unwrap());
        assert!(d_of_tableau(&Tableau::new(vec![vec![1, 1], vec![2]]).unwrap()).is_err());
    }

    #[test]
    fn d_of_tableau_reproduces_and_is_injective() {
        for n in 1..=5 {
            for nu in partitions_of(n) {
                let phi = superstandard_reading(&nu);
                let young = YoungSubgroup::new(&nu.to_composition());
                let mut seen = std::collections::HashSet::new();
                for theta in std_enumerate(&nu) {
                    let d = d_of_tableau(&theta).unwrap();
                    assert_eq!(act_on_tableau(&phi, &d), theta);
                    assert!(seen.insert(d.clone()));
                    // minimal in its coset S_ν d
                    for v in young.elements() {
                        assert!(length(&v.compose(&d)) == length(&v) + length(&d));
                    }
                }
            }
        }
    }

    #[test]
    fn first_tableau_examples() {
        let nu = Partition::new(vec![2, 1]).unwrap();
        let mu = c(&[2, 1]);
        let big = Tableau::new(vec![vec![1, 1], vec![2]]).unwrap();
        assert_eq!(first_tableau(&big, &mu).unwrap().rows(), &[vec![1, 2], vec![3]]);
        assert_eq!(
            first_tableau(&Tableau::superstandard(&nu), &nu.to_composition()).unwrap(),
            superstandard_reading(&nu)
        );
        for n in 1..=5 {
            for nu in partitions_of(n) {
                for mu in partitions_of(n) {
                    let mu = mu.to_composition();
                    for big in sstd_enumerate(&nu, &mu) {
                        let f = first_tableau(&big, &mu).unwrap();
                        assert!(f.is_row_standard());
                        assert_eq!(collapse(&f, &mu), big);
                    }
                }
            }
        }
    }

    #[test]
    fn echelon_examples() {
        for n in 1..=4 {
            let id = Permutation::identity(n);
            for a in compositions(n) {
                for b in compositions(n) {
                    assert!(is_lambda_mu_echelon(&id, &a, &b));
                }
            }
            if n >= 2 {
                assert!(!is_lambda_mu_echelon(&Permutation::longest(n), &c(&[n]), &c(&[n])));
            }
        }
    }

    #[test]
    fn exactly_one_echelon_member_per_double_coset() {
        for n in 1..=4 {
            for a in compositions(n) {
                for b in compositions(n) {
                    let mut count: BTreeMap<ContingencyMatrix, usize> = BTreeMap::new();
                    for w in Permutation::all(n) {
                        if is_lambda_mu_echelon(&w, &a, &b) {
                            *count.entry(double_coset_matrix(&a, &b, &w)).or_default() += 1;
                        }
                    }
                    assert_eq!(count.len(), contingency_matrices(&a, &b).unwrap().len());
                    assert!(count.values().all(|&k| k == 1));
                    for r in double_coset_min_reps(&a, &b, n).unwrap() {
                        assert!(is_lambda_mu_echelon(&r, &a, &b));
                    }
                }
            }
        }
    }
}
