//! Flags of subspaces of `F_p^n`, their intersection matrices, the orbits
//! of `GL_n(F_p)` on pairs of flags, and the operators `g_Ω`.
//!
//! A flag of type `c = (c_1, .., c_l)` is a chain `0 = x_0 ⊆ x_1 ⊆ .. ⊆ x_l
//! = F_p^n` with `dim x_{l-i+1}/x_{l-i} = c_i`, so `c_1` is the top
//! quotient. Members are stored top-down, without `F_p^n` and `0`.

mod cache;
mod operator;

use std::collections::HashMap;
use std::fmt;
use std::path::PathBuf;
use std::sync::{Arc, Mutex};

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::combinat::{contingency_matrices, Composition, ContingencyMatrix};
use crate::finlin::{gl_generators, rref, subspaces, Matrix, Subspace};
use crate::orbit::{orbits_by_generators, PairOrbits};
use crate::symgroup::Permutation;
use crate::{Error, Result};

pub use cache::{load_or_build, CACHE_SCHEMA_VERSION};
pub use operator::{compose, geometric_operator, op_transpose, LinearOperator};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Flag {
    shape: Composition,
    members: Vec<Subspace>,
}

/// Dimensions of the stored members, top-down.
fn member_dims(c: &Composition) -> Vec<usize> {
    let n = c.n();
    let mut acc = 0;
    c.parts()[..c.len().saturating_sub(1)]
        .iter()
        .map(|&x| {
            acc += x;
            n - acc
        })
        .collect()
}

impl Flag {
    pub fn new(shape: Composition, members: Vec<Subspace>, p: u32) -> Result<Self> {
        let dims = member_dims(&shape);
        if members.len() != dims.len() {
            return Err(Error::ShapeMismatch(format!("{} members for type {shape}", members.len())));
        }
        let n = shape.n();
        let mut above = Subspace::full(p, n);
        for (m, &d) in members.iter().zip(&dims) {
            if m.ambient_dim() != n || m.p() != p || m.dim() != d || !above.contains(m) {
                return Err(Error::ShapeMismatch(format!("{m} does not fit type {shape}")));
            }
            above = m.clone();
        }
        Ok(Flag { shape, members })
    }

    /// The standard flag: `x_i = span(e_{n-i'+1}, .., e_n)` where `i'` is
    /// the dimension of `x_i`.
    pub fn standard(shape: &Composition, p: u32) -> Self {
        let n = shape.n();
        let members = member_dims(shape)
            .into_iter()
            .map(|d| Subspace::coordinate(p, n, &(n - d..n).collect_vec()))
            .collect();
        Flag { shape: shape.clone(), members }
    }

    /// The image of the standard full flag under the permutation matrix
    /// `e_j ↦ e_{w(j)}`, coarsened to `shape`.
    pub fn permuted_standard(shape: &Composition, w: &Permutation, p: u32) -> Self {
        let n = shape.n();
        let members = member_dims(shape)
            .into_iter()
            .map(|d| Subspace::coordinate(p, n, &(n - d..n).map(|j| w.apply(j)).collect_vec()))
            .collect();
        Flag { shape: shape.clone(), members }
    }

    pub fn shape(&self) -> &Composition {
        &self.shape
    }

    pub fn members(&self) -> &[Subspace] {
        &self.members
    }

    pub fn n(&self) -> usize {
        self.shape.n()
    }

    fn p(&self) -> Option<u32> {
        self.members.first().map(Subspace::p)
    }

    /// `x_i` in the bottom-up indexing, `0 ≤ i ≤ l`.
    pub fn bottom_up(&self, i: usize, p: u32) -> Subspace {
        let l = self.shape.len();
        if i == 0 {
            Subspace::zero(p, self.n())
        } else if i >= l {
            Subspace::full(p, self.n())
        } else {
            self.members[l - 1 - i].clone()
        }
    }

    pub fn act(&self, g: &Matrix) -> Flag {
        Flag { shape: self.shape.clone(), members: self.members.iter().map(|m| m.act(g)).collect() }
    }

    /// The coarser flag of type `c`, taking the members of the required
    /// dimensions. Fails if some required dimension is not present.
    pub fn coarsen(&self, c: &Composition, p: u32) -> Result<Flag> {
        if c.n() != self.n() {
            return Err(Error::IncomparableSizes(c.n(), self.n()));
        }
        let n = self.n();
        let members = member_dims(c)
            .into_iter()
            .map(|d| {
                if d == n {
                    Ok(Subspace::full(p, n))
                } else if d == 0 {
                    Ok(Subspace::zero(p, n))
                } else {
                    self.members
                        .iter()
                        .find(|m| m.dim() == d)
                        .cloned()
                        .ok_or_else(|| Error::ShapeMismatch(format!("{c} does not coarsen {}", self.shape)))
                }
            })
            .collect::<Result<_>>()?;
        Ok(Flag { shape: c.clone(), members })
    }
}

impl fmt::Display for Flag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.members.iter().join(" ⊃ "))
    }
}

/// The intersection matrix of `x` (rows) and `y` (columns). Entry `(r, s)`
/// is `a_{ij}` for `i = l - r + 1`, `j = m - s + 1` with
/// `a_{ij} = dim (x_i ∩ y_j) / (x_i ∩ y_{j-1} + x_{i-1} ∩ y_j)`, so row `r`
/// sums to `type(x)_r` and column `s` to `type(y)_s`.
pub fn intersection_matrix(x: &Flag, y: &Flag) -> Result<ContingencyMatrix> {
    if x.n() != y.n() {
        return Err(Error::DimensionMismatch(format!("F^{} vs F^{}", x.n(), y.n())));
    }
    let p = match (x.p(), y.p()) {
        (Some(a), Some(b)) if a != b => return Err(Error::ParameterMismatch(format!("p = {a} vs p = {b}"))),
        (Some(a), _) | (_, Some(a)) => a,
        (None, None) => 2,
    };
    Ok(intersection_matrix_unchecked(x, y, p))
}

fn intersection_matrix_unchecked(x: &Flag, y: &Flag, p: u32) -> ContingencyMatrix {
    let (l, m) = (x.shape.len(), y.shape.len());
    let xs = (0..=l).map(|i| x.bottom_up(i, p)).collect_vec();
    let ys = (0..=m).map(|j| y.bottom_up(j, p)).collect_vec();
    let dims = xs.iter().map(|a| ys.iter().map(|b| a.dim_intersection(b) as isize).collect_vec()).collect_vec();
    let rows = (1..=l)
        .rev()
        .map(|i| {
            (1..=m)
                .rev()
                .map(|j| (dims[i][j] - dims[i - 1][j] - dims[i][j - 1] + dims[i - 1][j - 1]) as usize)
                .collect()
        })
        .collect();
    ContingencyMatrix::new(rows)
}

/// The intersection-matrix key of the orbit of `(e_•, w e_•)` on full flags:
/// the permutation matrix with `1` at `(w(s), s)`.
pub fn permutation_key(w: &Permutation) -> ContingencyMatrix {
    ContingencyMatrix::new(
        w.matrix().into_iter().map(|row| row.into_iter().map(usize::from).collect()).collect(),
    )
}

/// All subspaces of dimension `d` inside `u`.
fn subspaces_within(u: &Subspace, d: usize) -> Vec<Subspace> {
    let p = u.p();
    let n = u.ambient_dim();
    subspaces(u.dim(), d, p)
        .into_iter()
        .map(|s| {
            let rows = s
                .basis()
                .iter()
                .map(|coeffs| {
                    let mut v = vec![0; n];
                    for (&c, b) in coeffs.iter().zip(u.basis()) {
                        for (x, &y) in v.iter_mut().zip(b) {
                            *x = (*x + c * y) % p;
                        }
                    }
                    v
                })
                .collect_vec();
            rref(p, n, &rows)
        })
        .collect()
}

/// `X_c`: all flags of type `c` in `F_p^n`, top member chosen first.
pub fn enumerate_flags(c: &Composition, n: usize, p: u32) -> Result<Vec<Flag>> {
    if c.n() != n {
        return Err(Error::IncomparableSizes(c.n(), n));
    }
    let dims = member_dims(c);
    let mut chains: Vec<Vec<Subspace>> = vec![Vec::new()];
    for &d in &dims {
        chains = chains
            .into_iter()
            .flat_map(|chain| {
                let top = chain.last().cloned().unwrap_or_else(|| Subspace::full(p, n));
                subspaces_within(&top, d).into_iter().map(move |s| {
                    let mut next = chain.clone();
                    next.push(s);
                    next
                })
            })
            .collect();
    }
    Ok(chains.into_iter().map(|members| Flag { shape: c.clone(), members }).collect())
}

/// An enumerated flag space with stable indices.
#[derive(Clone, Debug)]
pub struct FlagSpace {
    shape: Composition,
    p: u32,
    flags: Vec<Flag>,
    index: HashMap<Flag, usize>,
}

impl FlagSpace {
    pub fn new(c: &Composition, p: u32) -> Result<Self> {
        Ok(Self::from_flags(c, p, enumerate_flags(c, c.n(), p)?))
    }

    pub(crate) fn from_flags(c: &Composition, p: u32, flags: Vec<Flag>) -> Self {
        let index = flags.iter().cloned().enumerate().map(|(i, f)| (f, i)).collect();
        FlagSpace { shape: c.clone(), p, flags, index }
    }

    pub fn shape(&self) -> &Composition {
        &self.shape
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn n(&self) -> usize {
        self.shape.n()
    }

    pub fn len(&self) -> usize {
        self.flags.len()
    }

    pub fn is_empty(&self) -> bool {
        self.flags.is_empty()
    }

    pub fn flags(&self) -> &[Flag] {
        &self.flags
    }

    pub fn index_of(&self, f: &Flag) -> Option<usize> {
        self.index.get(f).copied()
    }

    /// The permutation of indices induced by `g`.
    pub fn permutation_of(&self, g: &Matrix) -> Vec<usize> {
        self.flags.iter().map(|f| self.index[&f.act(g)]).collect()
    }

    /// Permutations induced by the standard generators of `GL_n(F_p)`.
    pub fn generator_permutations(&self) -> Vec<Vec<usize>> {
        gl_generators(self.n(), self.p).iter().map(|g| self.permutation_of(g)).collect()
    }
}

/// A memo of flag spaces over one `F_p`, optionally backed by an on-disk cache.
#[derive(Debug)]
pub struct FlagSpaces {
    p: u32,
    cache_dir: Option<PathBuf>,
    spaces: Mutex<HashMap<Composition, Arc<FlagSpace>>>,
}

impl FlagSpaces {
    pub fn new(p: u32) -> Self {
        FlagSpaces { p, cache_dir: None, spaces: Mutex::new(HashMap::new()) }
    }

    pub fn with_cache_dir(p: u32, dir: Option<PathBuf>) -> Self {
        FlagSpaces { p, cache_dir: dir, spaces: Mutex::new(HashMap::new()) }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn get(&self, c: &Composition) -> Result<Arc<FlagSpace>> {
        if let Some(s) = self.spaces.lock().expect("flag space memo").get(c) {
            return Ok(s.clone());
        }
        let space = Arc::new(load_or_build(c, self.p, self.cache_dir.as_deref())?);
        self.spaces.lock().expect("flag space memo").insert(c.clone(), space.clone());
        Ok(space)
    }
}

/// `|X_c|`, the `q`-multinomial coefficient `[n]_p! / Π [c_i]_p!`.
pub fn count_flags(c: &Composition, p: u32) -> u128 {
    let fact = |m: usize| -> u128 {
        (1..=m).map(|k| (0..k).map(|e| (p as u128).pow(e as u32)).sum::<u128>()).product()
    };
    fact(c.n()) / c.parts().iter().map(|&x| fact(x)).product::<u128>()
}

/// Orbits on `X_{c₁} × X_{c₂}` keyed by intersection matrix; the orbit
/// numbering follows [`contingency_matrices`].
pub fn orbits_on_spaces(xs: &FlagSpace, ys: &FlagSpace) -> Result<(PairOrbits, Vec<ContingencyMatrix>)> {
    if xs.p != ys.p || xs.n() != ys.n() {
        return Err(Error::ParameterMismatch("flag spaces over different F_p^n".into()));
    }
    let keys = contingency_matrices(&xs.shape, &ys.shape)?;
    let p = xs.p;
    let (orbits, kept) = PairOrbits::from_invariant(xs.len(), ys.len(), &keys, |i, j| {
        intersection_matrix_unchecked(&xs.flags[i], &ys.flags[j], p)
    });
    if kept.len() != keys.len() {
        return Err(Error::Inconsistent(format!(
            "only {} of {} intersection matrices occur",
            kept.len(),
            keys.len()
        )));
    }
    Ok((orbits, kept))
}

/// The orbits of `GL_n(F_p)` on `X_{c₁} × X_{c₂}`: each intersection matrix
/// with the list of flag pairs realizing it.
pub fn orbits_on_pairs(
    c1: &Composition,
    c2: &Composition,
    n: usize,
    p: u32,
) -> Result<Vec<(ContingencyMatrix, Vec<(Flag, Flag)>)>> {
    let xs = FlagSpace::new(c1, p)?;
    let ys = FlagSpace::new(c2, p)?;
    if c1.n() != n || c2.n() != n {
        return Err(Error::IncomparableSizes(c1.n(), n));
    }
    let (orbits, keys) = orbits_on_spaces(&xs, &ys)?;
    let mut fibers: Vec<Vec<(Flag, Flag)>> = vec![Vec::new(); keys.len()];
    for (i, x) in xs.flags.iter().enumerate() {
        for (j, y) in ys.flags.iter().enumerate() {
            fibers[orbits.label(i, j)].push((x.clone(), y.clone()));
        }
    }
    Ok(keys.into_iter().zip(fibers).collect())
}

/// The group orbits on `X_{c₁} × X_{c₂}` computed by union-find over the
/// generators of `GL_n(F_p)`; independent of intersection matrices.
pub fn orbits_by_group(xs: &FlagSpace, ys: &FlagSpace) -> PairOrbits {
    orbits_by_generators(xs.len(), ys.len(), &xs.generator_permutations(), &ys.generator_permutations())
}

#[cfg(test)]
mod tests;
