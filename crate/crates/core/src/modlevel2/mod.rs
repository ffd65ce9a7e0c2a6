//! Pairs `πx₂ ⊆ x₁ ⊆ x₂[π]` of submodules of `(Z/p²)^n`, their orbits under
//! `GL_n(Z/p²)`, and the cellular structure of the Hecke algebra of the
//! permutation representation on submodules of a fixed type.

mod cells;
mod space;
#[cfg(test)]
mod tests;

use std::fmt;

use itertools::Itertools;
use petgraph::unionfind::UnionFind;
use serde::{Deserialize, Serialize};

use crate::combinat::{is_permissible, Composition, Partition};
use crate::finlin::{submodules2_of_type, unit_generator, Matrix, Module2, Subspace};
use crate::flagcalc::{intersection_matrix, Flag};
use crate::{Error, Result};

pub use cells::{
    module_cellular_basis, module_decompose, module_rsk_check, multiplicity, reduction_check, ModuleCell,
    ModuleCellStructure, ModuleComponent,
};
pub use space::{orbits_on_module_pairs, ModuleOrbit, ModuleSpace, ModuleSpaces};

/// Isomorphism type of a pair: `x₂ ≅ o₂^a ⊕ o₁^b` and `dim x₁ = k`, with
/// `a ≤ k ≤ a + b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PairClass {
    pub a: usize,
    pub b: usize,
    pub k: usize,
}

impl PairClass {
    pub fn new(a: usize, b: usize, k: usize) -> Result<Self> {
        if k < a || k > a + b {
            return Err(Error::InvalidType(format!("x₁ of dimension {k} cannot lie between πx₂ and x₂[π] for 2^{a}1^{b}")));
        }
        Ok(PairClass { a, b, k })
    }

    /// `ι(λ) = [(x, πx)]` for `x` of type `λ`.
    pub fn iota(lambda: &Partition) -> Result<Self> {
        let (a, b) = type_counts(lambda)?;
        Ok(PairClass { a, b, k: a })
    }

    pub fn from_types(mu2: &Partition, mu1: &Partition) -> Result<Self> {
        let (a, b) = type_counts(mu2)?;
        if mu1.parts().iter().any(|&x| x != 1) {
            return Err(Error::InvalidType(format!("{mu1} is not killed by π")));
        }
        PairClass::new(a, b, mu1.len())
    }

    pub fn mu2(&self) -> Partition {
        Partition::from_unsorted(&[vec![2; self.a], vec![1; self.b]].concat())
    }

    pub fn mu1(&self) -> Partition {
        Partition::column(self.k)
    }

    pub fn rank(&self) -> usize {
        self.a + self.b
    }

    /// The embedding order: `self ≤ other` iff some embedding `y₂ → x₂`
    /// carries `y₁` into `x₁`.
    pub fn embeds_in(&self, other: &PairClass) -> bool {
        self.a <= other.a && self.k <= other.k && self.rank() <= other.rank()
    }

    /// The refinement `R`: `self ≤_R other` iff `self ≤ other` or
    /// `πy₂ < πx₂`.
    pub fn r_leq(&self, other: &PairClass) -> bool {
        self.embeds_in(other) || self.a < other.a
    }

    /// `c(ξ)`, the composition of `k^n ⊇ x₂[π] ⊇ x₁ ⊇ πx₂ ⊇ 0`.
    pub fn torsion_composition(&self, n: usize) -> Composition {
        Composition::new(vec![n - self.rank(), self.rank() - self.k, self.k - self.a, self.a])
    }
}

impl fmt::Display for PairClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.mu2(), self.mu1())
    }
}

fn type_counts(mu: &Partition) -> Result<(usize, usize)> {
    if mu.parts().iter().any(|&x| x > 2) {
        return Err(Error::InvalidType(format!("{mu} has a part larger than 2")));
    }
    let a = mu.parts().iter().filter(|&&x| x == 2).count();
    Ok((a, mu.len() - a))
}

/// A pair `(x₂, x₁)` with `πx₂ ⊆ x₁ ⊆ x₂[π]`; `x₁` is stored divided by `p`
/// as a subspace of `F_p^n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ModulePair {
    x2: Module2,
    x1: Subspace,
}

impl ModulePair {
    pub fn new(x2: Module2, x1: Subspace) -> Result<Self> {
        if x2.p() != x1.p() || x2.ambient_dim() != x1.ambient_dim() {
            return Err(Error::ParameterMismatch("x₁ and x₂ live in different ambients".into()));
        }
        if !x1.contains(&x2.image()) || !x2.torsion().contains(&x1) {
            return Err(Error::NotContained(format!("{x1} does not lie between πx₂ and x₂[π] for x₂ = {x2}")));
        }
        Ok(ModulePair { x2, x1 })
    }

    /// `(x, πx)`.
    pub fn iota(x: Module2) -> Self {
        let x1 = x.image();
        ModulePair { x2: x, x1 }
    }

    pub fn x2(&self) -> &Module2 {
        &self.x2
    }

    pub fn x1(&self) -> &Subspace {
        &self.x1
    }

    pub fn x1_module(&self) -> Module2 {
        Module2::from_torsion(&self.x1)
    }

    pub fn p(&self) -> u32 {
        self.x2.p()
    }

    pub fn n(&self) -> usize {
        self.x2.ambient_dim()
    }

    pub fn class(&self) -> PairClass {
        let (a, b) = self.x2.type_ab();
        PairClass { a, b, k: self.x1.dim() }
    }

    pub fn act(&self, g: &Matrix) -> ModulePair {
        let p = self.p();
        let g_bar: Matrix = g.iter().map(|r| r.iter().map(|&x| x % p).collect()).collect();
        ModulePair { x2: self.x2.act(g), x1: self.x1.act(&g_bar) }
    }

    /// Inclusion of pairs: `y₂ ⊆ x₂` and `y₁ ⊆ x₁`.
    pub fn contains(&self, y: &ModulePair) -> bool {
        self.x2.contains(&y.x2) && self.x1.contains(&y.x1)
    }
}

impl fmt::Display for ModulePair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} ⊇ {})", self.x2, self.x1_module())
    }
}

/// The flag `k^n ⊇ x₂[π] ⊇ x₁ ⊇ πx₂` of type `c(ξ)`; equal members give
/// zero parts.
pub fn pi_torsion_flag(x: &ModulePair) -> Flag {
    let c = x.class().torsion_composition(x.n());
    Flag::new(c, vec![x.x2.torsion(), x.x1.clone(), x.x2.image()], x.p()).expect("pair invariants give a flag")
}

/// The flag of the distinct proper nonzero members of a descending chain.
fn strict_flag(chain: &[Subspace], n: usize, p: u32) -> Flag {
    let members: Vec<Subspace> =
        chain.iter().filter(|s| s.dim() > 0 && s.dim() < n).dedup().cloned().collect();
    let mut parts = Vec::new();
    let mut above = n;
    for m in &members {
        parts.push(above - m.dim());
        above = m.dim();
    }
    parts.push(above);
    Flag::new(Composition::new(parts), members, p).expect("strictly descending chain")
}

/// `y` embeds permissibly in `x`: `y ⊆ x` and `y_π/πy₂` embeds permissibly
/// in `x_π/πy₂`.
pub fn permissible_module_embedding(y: &ModulePair, x: &ModulePair) -> bool {
    if y.p() != x.p() || y.n() != x.n() || !x.contains(y) {
        return false;
    }
    let v = y.x2.image();
    let quot = |s: &Subspace| s.quotient(&v).expect("πy₂ lies in every member");
    let m = x.n() - v.dim();
    let zf = strict_flag(&[quot(&y.x2.torsion()), quot(&y.x1)], m, x.p());
    let xf = strict_flag(&[quot(&x.x2.torsion()), quot(&x.x1), quot(&x.x2.image())], m, x.p());
    let e = intersection_matrix(&zf, &xf).expect("flags in the same quotient");
    // a non-partition row margin means the smaller flag is not of partition type
    is_permissible(&e).unwrap_or(false)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Embedding {
    None,
    Unique,
    Several(usize),
}

impl Embedding {
    pub fn is_unique(&self) -> bool {
        matches!(self, Embedding::Unique)
    }
}

/// Generators of `Aut(o₂^a ⊕ o₁^b)`, realized on the standard copy
/// `⟨e_1, .., e_a, p e_{a+1}, .., p e_{a+b}⟩ ⊆ (Z/p²)^{a+b}`.
fn automorphism_generators(a: usize, b: usize, p: u32) -> Vec<Matrix> {
    let m = a + b;
    let identity = || -> Matrix { (0..m).map(|i| (0..m).map(|j| u32::from(i == j)).collect()).collect() };
    let mut gens = Vec::new();
    for i in 0..m {
        for j in 0..m {
            if i != j {
                let mut g = identity();
                // a free generator may only move by a torsion element
                g[i][j] = if i < a && j >= a { p } else { 1 };
                gens.push(g);
            }
        }
    }
    if a > 0 {
        let mut g = identity();
        g[0][0] = unit_generator(p * p);
        gens.push(g);
    }
    if b > 0 {
        let mut g = identity();
        g[a][a] = unit_generator(p);
        gens.push(g);
    }
    gens
}

/// The number of `Aut(x₂)`-orbits of submodules of type `mu1` in a module
/// `x₂` of type `mu2`; with `over_pi` only submodules containing `πx₂`
/// are counted.
pub fn embedding_orbits(mu2: &Partition, mu1: &Partition, p: u32, over_pi: bool) -> Result<Embedding> {
    let (a, b) = type_counts(mu2)?;
    type_counts(mu1)?;
    let m = a + b;
    if mu1.len() > m {
        return Ok(Embedding::None);
    }
    let rows: Vec<Vec<u32>> =
        (0..m).map(|i| (0..m).map(|j| if i != j { 0 } else if i < a { 1 } else { p }).collect()).collect();
    let x2 = Module2::new(p, m, &rows);
    let pi_x2 = x2.times_p();
    let subs: Vec<Module2> = submodules2_of_type(m, p, mu1)?
        .into_iter()
        .filter(|s| x2.contains(s) && (!over_pi || s.contains(&pi_x2)))
        .collect();
    if subs.is_empty() {
        return Ok(Embedding::None);
    }
    let index: std::collections::HashMap<&Module2, usize> = subs.iter().enumerate().map(|(i, s)| (s, i)).collect();
    let mut uf = UnionFind::<usize>::new(subs.len());
    for g in automorphism_generators(a, b, p) {
        debug_assert_eq!(x2.act(&g), x2);
        for (i, s) in subs.iter().enumerate() {
            uf.union(i, index[&s.act(&g)]);
        }
    }
    let orbits = (0..subs.len()).map(|i| uf.find(i)).unique().count();
    Ok(if orbits == 1 { Embedding::Unique } else { Embedding::Several(orbits) })
}

/// Whether every submodule of type `mu1` of a module of type `mu2` is
/// equivalent under automorphisms to every other.
pub fn unique_embedding(mu2: &Partition, mu1: &Partition, p: u32) -> Result<Embedding> {
    embedding_orbits(mu2, mu1, p, false)
}

/// `n ≥ 2 Rank(x)` for `x` of type `λ`. The companion bound
/// `Rank(x) ≥ 2 Rank(πx)` is reported by [`rank_bound_holds`] but not
/// enforced, since it excludes `λ = (2)`.
pub fn check_standing_assumptions(lambda: &Partition, n: usize) -> Result<()> {
    let (a, b) = type_counts(lambda)?;
    if n < 2 * (a + b) {
        return Err(Error::Precondition(format!("n ≥ 2·Rank(x) fails: n = {n}, Rank = {}", a + b)));
    }
    Ok(())
}

/// `Rank(x) ≥ 2 Rank(πx)`.
pub fn rank_bound_holds(lambda: &Partition) -> Result<bool> {
    let (a, b) = type_counts(lambda)?;
    Ok(b >= a)
}

/// The classes `ξ = (μ⁽²⁾, μ⁽¹⁾)` satisfying: `x₁` embeds uniquely in `x₂`
/// among submodules containing `πx₂`; `ξ ≤ ι(λ)`; `Rank(x₁) ≤ Rank(x₂/x₁)`.
/// Sorted so that `η ≤ ξ` implies `η` comes first.
pub fn param_set(lambda: &Partition, n: usize, p: u32) -> Result<Vec<PairClass>> {
    check_standing_assumptions(lambda, n)?;
    let iota = PairClass::iota(lambda)?;
    let mut out = Vec::new();
    for a in 0..=n {
        for b in 0..=n - a {
            for k in a..=a + b {
                let c = PairClass { a, b, k };
                // x₂/x₁ is killed by π, so its rank is its dimension
                if !c.embeds_in(&iota) || 2 * k > 2 * a + b {
                    continue;
                }
                if embedding_orbits(&c.mu2(), &c.mu1(), p, true)?.is_unique() {
                    out.push(c);
                }
            }
        }
    }
    out.sort_by_key(|c| (2 * c.a + c.b + c.k, c.a, c.b, c.k));
    Ok(out)
}
