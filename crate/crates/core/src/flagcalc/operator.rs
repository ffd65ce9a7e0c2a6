use std::collections::BTreeMap;

use num::Zero;

use super::{orbits_on_spaces, FlagSpace};
use crate::combinat::{Composition, ContingencyMatrix};
use crate::orbit::PairOrbits;
use crate::qlinalg::q;
use crate::{Error, Result, Q};

/// A sparse matrix over `Q` with rows indexed by one flag space and
/// columns by another; it maps functions on the column space to functions
/// on the row space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearOperator {
    n_rows: usize,
    n_cols: usize,
    rows: Vec<BTreeMap<usize, Q>>,
}

impl LinearOperator {
    pub fn zero(n_rows: usize, n_cols: usize) -> Self {
        LinearOperator { n_rows, n_cols, rows: vec![BTreeMap::new(); n_rows] }
    }

    pub fn identity(n: usize) -> Self {
        let mut op = Self::zero(n, n);
        for i in 0..n {
            op.rows[i].insert(i, q(1));
        }
        op
    }

    /// Sums the given entries; repeated positions accumulate.
    pub fn from_entries(n_rows: usize, n_cols: usize, entries: &[(usize, usize, Q)]) -> Self {
        let mut op = Self::zero(n_rows, n_cols);
        for (i, j, c) in entries {
            *op.rows[*i].entry(*j).or_insert_with(Q::zero) += c;
        }
        op.rows.iter_mut().for_each(|r| r.retain(|_, c| !c.is_zero()));
        op
    }

    /// `Σ_Ω coeffs[Ω] g_Ω`.
    pub fn from_orbit_coefficients(orbits: &PairOrbits, coeffs: &[Q]) -> Self {
        let mut op = Self::zero(orbits.n_rows(), orbits.n_cols());
        for (x, row) in op.rows.iter_mut().enumerate() {
            for y in 0..orbits.n_cols() {
                let c = &coeffs[orbits.label(x, y)];
                if !c.is_zero() {
                    row.insert(y, c.clone());
                }
            }
        }
        op
    }

    pub fn n_rows(&self) -> usize {
        self.n_rows
    }

    pub fn n_cols(&self) -> usize {
        self.n_cols
    }

    pub fn get(&self, i: usize, j: usize) -> Q {
        self.rows[i].get(&j).cloned().unwrap_or_else(Q::zero)
    }

    pub fn nonzeros(&self) -> impl Iterator<Item = (usize, usize, &Q)> {
        self.rows.iter().enumerate().flat_map(|(i, r)| r.iter().map(move |(&j, v)| (i, j, v)))
    }

    pub fn scale(&self, c: &Q) -> Self {
        let mut out = Self::zero(self.n_rows, self.n_cols);
        if !c.is_zero() {
            for (i, j, v) in self.nonzeros() {
                out.rows[i].insert(j, v * c);
            }
        }
        out
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if (self.n_rows, self.n_cols) != (other.n_rows, other.n_cols) {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} + {}x{}",
                self.n_rows, self.n_cols, other.n_rows, other.n_cols
            )));
        }
        let mut out = self.clone();
        for (i, j, v) in other.nonzeros() {
            let e = out.rows[i].entry(j).or_insert_with(Q::zero);
            *e += v;
            if e.is_zero() {
                out.rows[i].remove(&j);
            }
        }
        Ok(out)
    }

    /// Row-major dense entries.
    pub fn to_vector(&self) -> Vec<Q> {
        let mut v = vec![Q::zero(); self.n_rows * self.n_cols];
        for (i, j, x) in self.nonzeros() {
            v[i * self.n_cols + j] = x.clone();
        }
        v
    }

    /// Orbit coefficients, if the operator is constant on the orbits.
    pub fn orbit_coefficients(&self, orbits: &PairOrbits) -> Option<Vec<Q>> {
        let coeffs: Vec<Q> = (0..orbits.count())
            .map(|o| {
                let (x, y) = orbits.rep(o);
                self.get(x, y)
            })
            .collect();
        (LinearOperator::from_orbit_coefficients(orbits, &coeffs) == *self).then_some(coeffs)
    }
}

/// `a ∘ b`.
pub fn compose(a: &LinearOperator, b: &LinearOperator) -> Result<LinearOperator> {
    if a.n_cols != b.n_rows {
        return Err(Error::DimensionMismatch(format!("{} columns vs {} rows", a.n_cols, b.n_rows)));
    }
    let mut out = LinearOperator::zero(a.n_rows, b.n_cols);
    for (i, row) in a.rows.iter().enumerate() {
        let target = &mut out.rows[i];
        for (&k, x) in row {
            for (&j, y) in &b.rows[k] {
                let e = target.entry(j).or_insert_with(Q::zero);
                *e += x * y;
            }
        }
        target.retain(|_, v| !v.is_zero());
    }
    Ok(out)
}

pub fn op_transpose(a: &LinearOperator) -> LinearOperator {
    let mut out = LinearOperator::zero(a.n_cols, a.n_rows);
    for (i, j, v) in a.nonzeros() {
        out.rows[j].insert(i, v.clone());
    }
    out
}

/// `g_Ω` on `F_{c₂} → F_{c₁}`: entry `(x, y)` is `1` iff the intersection
/// matrix of `(x, y)` is `Ω`.
pub fn geometric_operator(
    omega: &ContingencyMatrix,
    c1: &Composition,
    c2: &Composition,
    n: usize,
    p: u32,
) -> Result<LinearOperator> {
    if c1.n() != n || c2.n() != n {
        return Err(Error::IncomparableSizes(c1.n(), n));
    }
    let xs = FlagSpace::new(c1, p)?;
    let ys = FlagSpace::new(c2, p)?;
    let (orbits, keys) = orbits_on_spaces(&xs, &ys)?;
    let k = keys
        .iter()
        .position(|m| m == omega)
        .ok_or_else(|| Error::InvalidOrbitKey(format!("{omega} is not in M_{{{c1},{c2}}}")))?;
    let mut coeffs = vec![Q::zero(); keys.len()];
    coeffs[k] = q(1);
    Ok(LinearOperator::from_orbit_coefficients(&orbits, &coeffs))
}
