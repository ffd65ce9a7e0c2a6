//! The Iwahori-Hecke algebra `H_q(S_n)` with a concrete integer parameter,
//! and its Murphy basis.
//!
//! Multiplication follows `T_w T_s = T_{ws}` when `ℓ(ws) > ℓ(w)` and
//! `q T_{ws} + (q - 1) T_w` otherwise, where `ws = w.compose(s)`.

use std::collections::BTreeMap;
use std::fmt;

use num::{One, Zero};

use crate::combinat::{partitions_of, sstd_enumerate, std_enumerate, Composition, Partition, Tableau};
use crate::qlinalg::q as rat;
use crate::symgroup::{collapse, d_of_tableau, length, Permutation, YoungSubgroup};
use crate::{Error, Result, Q};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeckeElement {
    n: usize,
    q: i64,
    terms: BTreeMap<Permutation, Q>,
}

impl HeckeElement {
    pub fn zero(n: usize, q: i64) -> Self {
        HeckeElement { n, q, terms: BTreeMap::new() }
    }

    /// The basis element `T_w`.
    pub fn basis(w: &Permutation, q: i64) -> Self {
        let mut e = Self::zero(w.n(), q);
        e.terms.insert(w.clone(), Q::one());
        e
    }

    pub fn one(n: usize, q: i64) -> Self {
        Self::basis(&Permutation::identity(n), q)
    }

    pub fn from_terms(n: usize, q: i64, terms: impl IntoIterator<Item = (Permutation, Q)>) -> Result<Self> {
        let mut e = Self::zero(n, q);
        for (w, c) in terms {
            if w.n() != n {
                return Err(Error::DimensionMismatch(format!("{w} is not in S_{n}")));
            }
            e.add_term(w, c);
        }
        Ok(e)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn q(&self) -> i64 {
        self.q
    }

    pub fn terms(&self) -> &BTreeMap<Permutation, Q> {
        &self.terms
    }

    pub fn coefficient(&self, w: &Permutation) -> Q {
        self.terms.get(w).cloned().unwrap_or_else(Q::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, w: Permutation, c: Q) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(w);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &HeckeElement) -> Result<HeckeElement> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Q) -> HeckeElement {
        let mut out = Self::zero(self.n, self.q);
        for (w, x) in &self.terms {
            out.add_term(w.clone(), x * c);
        }
        out
    }

    /// Coefficients in the order of [`Permutation::all`].
    pub fn to_vector(&self) -> Vec<Q> {
        Permutation::all(self.n).iter().map(|w| self.coefficient(w)).collect()
    }

    fn check_compatible(&self, other: &HeckeElement) -> Result<()> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch(format!("S_{} vs S_{}", self.n, other.n)));
        }
        if self.q != other.q {
            return Err(Error::ParameterMismatch(format!("q = {} vs q = {}", self.q, other.q)));
        }
        Ok(())
    }

    /// Right multiplication by `T_{s_i}`.
    pub fn times_simple(&self, i: usize) -> HeckeElement {
        let q = rat(self.q);
        let qm1 = rat(self.q - 1);
        let mut out = Self::zero(self.n, self.q);
        for (w, c) in &self.terms {
            let ws = w.times_simple(i);
            if w.apply(i) < w.apply(i + 1) {
                out.add_term(ws, c.clone());
            } else {
                out.add_term(ws, c * &q);
                out.add_term(w.clone(), c * &qm1);
            }
        }
        out
    }
}

impl fmt::Display for HeckeElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(w, c)| format!("{c}·T{w}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

pub fn hecke_mul(a: &HeckeElement, b: &HeckeElement) -> Result<HeckeElement> {
    a.check_compatible(b)?;
    let mut out = HeckeElement::zero(a.n, a.q);
    for (v, c) in &b.terms {
        let prod = v.reduced_word().iter().fold(a.clone(), |acc, &i| acc.times_simple(i));
        for (w, x) in prod.terms {
            out.add_term(w, x * c);
        }
    }
    Ok(out)
}

pub fn star(a: &HeckeElement) -> HeckeElement {
    let mut out = HeckeElement::zero(a.n, a.q);
    for (w, c) in &a.terms {
        out.add_term(w.inverse(), c.clone());
    }
    out
}

/// `m_μ = Σ_{w ∈ S_μ} T_w`.
pub fn m_subgroup(mu: &Composition, n: usize, q: i64) -> Result<HeckeElement> {
    if mu.n() != n {
        return Err(Error::IncomparableSizes(mu.n(), n));
    }
    HeckeElement::from_terms(n, q, YoungSubgroup::new(mu).elements().into_iter().map(|w| (w, Q::one())))
}

/// `Σ_{w ∈ S_μ} q^{ℓ(w)} = Π_i [μ_i]_q!`.
pub fn poincare(mu: &Composition, q: i64) -> i64 {
    mu.parts()
        .iter()
        .map(|&m| (1..=m as u32).map(|k| (0..k).map(|e| q.pow(e)).sum::<i64>()).product::<i64>())
        .product()
}

/// `m_{Θ₁Θ₂} = Σ T*_{d(θ₁)} m_ν T_{d(θ₂)}` over standard `θ₁, θ₂` of the
/// common shape `ν` with `λ(θ₁) = Θ₁` and `μ(θ₂) = Θ₂`.
pub fn murphy_element(
    theta1: &Tableau,
    theta2: &Tableau,
    lambda: &Composition,
    mu: &Composition,
    q: i64,
) -> Result<HeckeElement> {
    let nu = theta1.shape();
    if theta2.shape() != nu {
        return Err(Error::ShapeMismatch(format!("{} vs {}", nu, theta2.shape())));
    }
    let n = nu.n();
    let left = gamma(theta1, lambda, q)?;
    let right = gamma(theta2, mu, q)?;
    let m_nu = m_subgroup(&nu.to_composition(), n, q)?;
    // Γ*_1 Γ_2 = Σ T*_{d(θ₁)} m_ν m_ν T_{d(θ₂)} = poincare(ν) m_{Θ₁Θ₂}
    let sum_left = sum_d(theta1, lambda, q)?;
    let sum_right = sum_d(theta2, mu, q)?;
    let out = hecke_mul(&hecke_mul(&star(&sum_left), &m_nu)?, &sum_right)?;
    debug_assert_eq!(
        hecke_mul(&star(&left), &right)?,
        out.scale(&rat(poincare(&nu.to_composition(), q)))
    );
    Ok(out)
}

fn standard_preimages(big: &Tableau, c: &Composition) -> Result<Vec<Tableau>> {
    if big.size() != c.n() {
        return Err(Error::IncomparableSizes(big.size(), c.n()));
    }
    if !big.is_semistandard() || big.content(c.len()) != c.parts() {
        return Err(Error::NotSemistandard);
    }
    Ok(std_enumerate(&big.shape()).into_iter().filter(|t| &collapse(t, c) == big).collect())
}

fn sum_d(big: &Tableau, c: &Composition, q: i64) -> Result<HeckeElement> {
    let terms: Vec<(Permutation, Q)> = standard_preimages(big, c)?
        .iter()
        .map(|t| d_of_tableau(t).map(|d| (d, Q::one())))
        .collect::<Result<_>>()?;
    HeckeElement::from_terms(big.size(), q, terms)
}

/// `Γ_Θ = Σ_{θ : c(θ) = Θ} m_ν T_{d(θ)}`.
pub fn gamma(big: &Tableau, c: &Composition, q: i64) -> Result<HeckeElement> {
    let nu = big.shape();
    hecke_mul(&m_subgroup(&nu.to_composition(), nu.n(), q)?, &sum_d(big, c, q)?)
}

#[derive(Clone, Debug)]
pub struct MdjElement {
    pub nu: Partition,
    pub theta1: Tableau,
    pub theta2: Tableau,
    pub element: HeckeElement,
}

/// The Murphy basis `{m_{Θ₁Θ₂}}` of `m_λ H m_μ`, grouped by shape `ν` in the
/// order of [`partitions_of`].
pub fn mdj_basis(lambda: &Composition, mu: &Composition, n: usize, q: i64) -> Result<Vec<MdjElement>> {
    if lambda.n() != n || mu.n() != n {
        return Err(Error::IncomparableSizes(lambda.n(), mu.n()));
    }
    let mut out = Vec::new();
    for nu in partitions_of(n) {
        let left = sstd_enumerate(&nu, lambda);
        let right = sstd_enumerate(&nu, mu);
        for t1 in &left {
            for t2 in &right {
                out.push(MdjElement {
                    nu: nu.clone(),
                    theta1: t1.clone(),
                    theta2: t2.clone(),
                    element: murphy_element(t1, t2, lambda, mu, q)?,
                });
            }
        }
    }
    Ok(out)
}

/// Sanity helper used by tests and reports: `Σ_{w ∈ S_n} q^{ℓ(w)}`.
pub fn group_poincare(n: usize, q: i64) -> i64 {
    Permutation::all(n).iter().map(|w| q.pow(length(w) as u32)).sum()
}
