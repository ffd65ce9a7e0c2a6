//! Geometric cellular bases `b^ν_{Ω₁Ω₂} = g_{Ω₁^op} ∘ g_{Ω₂}` of the
//! spaces `Hom_G(Q[X_{c₂}], Q[X_{c₁}])`, verification of cellularity, the
//! decomposition of `Q[X_λ]` and the comparison with the Murphy basis.

mod engine;
mod mdj;
mod triangular;

use serde::{Deserialize, Serialize};

use crate::combinat::{
    kostka, opp_dominance_leq, partitions_of, permissible_matrices, Composition, ContingencyMatrix, Partition,
};
use crate::flagcalc::{
    compose, geometric_operator, op_transpose, orbits_on_spaces, FlagSpaces, LinearOperator,
};
use crate::orbit::PairOrbits;
use crate::report::Report;
use crate::{Error, Result, Q};

pub use engine::{verify_cells, CellAnalysis, CellBlock, OrbitAlgebra};
pub use mdj::{hecke_realization, mdj_compare, HeckeRealization};
pub use triangular::triangular_labels;

/// A label `(ν, Ω₁, Ω₂)` of a cellular basis element.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CellDatum {
    pub nu: Partition,
    pub omega1: ContingencyMatrix,
    pub omega2: ContingencyMatrix,
}

/// The elements `b^ν_{Ω₁Ω₂}` for one `ν`, indexed by the permissible
/// orbits `left[s] ⊆ X_ν × X_{c₁}` and `right[t] ⊆ X_ν × X_{c₂}`.
#[derive(Clone, Debug)]
pub struct FieldCell {
    pub nu: Partition,
    pub left: Vec<ContingencyMatrix>,
    pub right: Vec<ContingencyMatrix>,
    /// Orbit coordinates on `X_{c₁} × X_{c₂}`, indexed `[s][t]`.
    pub elements: Vec<Vec<Vec<Q>>>,
}

#[derive(Clone, Debug)]
pub struct CellStructure {
    pub c1: Composition,
    pub c2: Composition,
    pub p: u32,
    pub orbit_keys: Vec<ContingencyMatrix>,
    pub cells: Vec<FieldCell>,
    orbits: PairOrbits,
}

impl CellStructure {
    pub fn orbits(&self) -> &PairOrbits {
        &self.orbits
    }

    /// Shapes with a nonempty cell, in the order of [`partitions_of`].
    pub fn poset(&self) -> Vec<Partition> {
        self.cells.iter().map(|c| c.nu.clone()).collect()
    }

    pub fn len(&self) -> usize {
        self.cells.iter().map(|c| c.left.len() * c.right.len()).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// All basis elements with their labels.
    pub fn basis(&self) -> Vec<(CellDatum, &[Q])> {
        let mut out = Vec::new();
        for c in &self.cells {
            for (s, o1) in c.left.iter().enumerate() {
                for (t, o2) in c.right.iter().enumerate() {
                    let d = CellDatum { nu: c.nu.clone(), omega1: o1.clone(), omega2: o2.clone() };
                    out.push((d, c.elements[s][t].as_slice()));
                }
            }
        }
        out
    }

    pub fn operator(&self, coeffs: &[Q]) -> LinearOperator {
        LinearOperator::from_orbit_coefficients(&self.orbits, coeffs)
    }
}

/// Builds all `b^ν_{Ω₁Ω₂}` for `Hom_G(Q[X_{c₂}], Q[X_{c₁}])`. The
/// coefficient of `g_Δ` is the number of `z ∈ X_ν` with `(z, x) ∈ Ω₁` and
/// `(z, y) ∈ Ω₂` for a representative `(x, y)` of `Δ`.
pub fn cellular_basis_with(spaces: &FlagSpaces, c1: &Composition, c2: &Composition) -> Result<CellStructure> {
    if c1.n() != c2.n() {
        return Err(Error::IncomparableSizes(c1.n(), c2.n()));
    }
    let n = c1.n();
    let xs = spaces.get(c1)?;
    let ys = spaces.get(c2)?;
    let (orbits, orbit_keys) = orbits_on_spaces(&xs, &ys)?;
    let mut cells = Vec::new();
    for nu in partitions_of(n) {
        let left = permissible_matrices(&nu, c1);
        let right = permissible_matrices(&nu, c2);
        if left.is_empty() || right.is_empty() {
            continue;
        }
        let zs = spaces.get(&nu.to_composition())?;
        let (zx, zx_keys) = orbits_on_spaces(&zs, &xs)?;
        let (zy, zy_keys) = orbits_on_spaces(&zs, &ys)?;
        let left_idx: Vec<usize> =
            left.iter().map(|m| zx_keys.iter().position(|k| k == m).expect("permissible orbit occurs")).collect();
        let right_idx: Vec<usize> =
            right.iter().map(|m| zy_keys.iter().position(|k| k == m).expect("permissible orbit occurs")).collect();
        let mut elements = vec![vec![vec![Q::default(); orbits.count()]; right.len()]; left.len()];
        for d in 0..orbits.count() {
            let (x, y) = orbits.rep(d);
            let mut counts = vec![0i64; zx.count() * zy.count()];
            for z in 0..zs.len() {
                counts[zx.label(z, x) * zy.count() + zy.label(z, y)] += 1;
            }
            for (s, &a) in left_idx.iter().enumerate() {
                for (t, &b) in right_idx.iter().enumerate() {
                    elements[s][t][d] = crate::qlinalg::q(counts[a * zy.count() + b]);
                }
            }
        }
        cells.push(FieldCell { nu, left, right, elements });
    }
    Ok(CellStructure { c1: c1.clone(), c2: c2.clone(), p: spaces.p(), orbit_keys, cells, orbits })
}

pub fn cellular_basis(c1: &Composition, c2: &Composition, n: usize, p: u32) -> Result<CellStructure> {
    if c1.n() != n {
        return Err(Error::IncomparableSizes(c1.n(), n));
    }
    cellular_basis_with(&FlagSpaces::new(p), c1, c2)
}

/// `b^ν_{Ω₁Ω₂}` as an explicit operator, computed by composing `g_{Ω₁}^T`
/// and `g_{Ω₂}`.
pub fn cellular_element(d: &CellDatum, c1: &Composition, c2: &Composition, n: usize, p: u32) -> Result<LinearOperator> {
    let nu = d.nu.to_composition();
    for (m, c) in [(&d.omega1, c1), (&d.omega2, c2)] {
        if !permissible_matrices(&d.nu, c).contains(m) {
            return Err(Error::InvalidOrbitKey(format!("{m} is not a permissible orbit in M°_{{{},{c}}}", d.nu)));
        }
    }
    let g1 = geometric_operator(&d.omega1, &nu, c1, n, p)?;
    let g2 = geometric_operator(&d.omega2, &nu, c2, n, p)?;
    compose(&op_transpose(&g1), &g2)
}

/// The cells of an algebra structure as input for the verification engine.
fn blocks(cs: &CellStructure) -> Vec<CellBlock<Partition>> {
    cs.cells.iter().map(|c| CellBlock { label: c.nu.clone(), elements: c.elements.clone() }).collect()
}

/// Verifies the cellular axioms of `End_G(Q[X_λ])` with the geometric basis.
pub fn analyze_cellularity(cs: &CellStructure) -> (Report, Option<CellAnalysis>) {
    let mut report = Report::new();
    if cs.c1 != cs.c2 {
        report.fail("structure is an algebra", format!("{} != {}", cs.c1, cs.c2));
        return (report, None);
    }
    let cells = blocks(cs);
    let leq = |j: usize, k: usize| opp_dominance_leq(&cells[j].label, &cells[k].label).unwrap_or(false);
    let sizes_ok = cs.cells.iter().all(|c| {
        c.left.len() == kostka(&c.nu, &cs.c1) && c.right.len() == kostka(&c.nu, &cs.c2)
    });
    report.check("cell sizes are Kostka numbers", sizes_ok, || "a cell has the wrong size".into());
    let alg = OrbitAlgebra::new(&cs.orbits);
    let analysis = verify_cells(&alg, &cells, leq, &mut report);
    let rank = basis_rank(cs);
    report.check("transition to orbit basis is invertible", rank == cs.orbits.count(), || {
        format!("rank {rank} of {}", cs.orbits.count())
    });
    (report, analysis)
}

pub fn verify_cellularity(cs: &CellStructure) -> Report {
    analyze_cellularity(cs).0
}

/// Rank of the span of the basis elements inside the orbit space.
pub fn basis_rank(cs: &CellStructure) -> usize {
    let rows: Vec<Vec<Q>> = cs.basis().into_iter().map(|(_, v)| v.to_vec()).collect();
    crate::qlinalg::rank(&rows)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Component {
    pub nu: Partition,
    pub multiplicity: usize,
    pub dim: u128,
}

/// The decomposition `Q[X_λ] = ⊕_{ν ≤ λ} U_ν^{K_{νλ}}`, with `dim U_ν` from
/// the unitriangular system `|X_μ| = Σ_ν K_{νμ} dim U_ν`.
pub fn decompose(lambda: &Partition, n: usize, p: u32) -> Result<Vec<Component>> {
    if lambda.n() != n {
        return Err(Error::IncomparableSizes(lambda.n(), n));
    }
    let below: Vec<Partition> =
        partitions_of(n).into_iter().filter(|mu| opp_dominance_leq(mu, lambda).unwrap_or(false)).collect();
    let mut dims: Vec<i128> = Vec::new();
    for (k, mu) in below.iter().enumerate() {
        let count = crate::flagcalc::count_flags(&mu.to_composition(), p) as i128;
        let lower: i128 =
            below[..k].iter().zip(&dims).map(|(nu, &d)| kostka(nu, &mu.to_composition()) as i128 * d).sum();
        let d = count - lower;
        if d <= 0 {
            return Err(Error::Inconsistent(format!("dimension of U_{mu} solves to {d}")));
        }
        dims.push(d);
    }
    let lc = lambda.to_composition();
    Ok(below
        .into_iter()
        .zip(dims)
        .map(|(nu, d)| Component { multiplicity: kostka(&nu, &lc), nu, dim: d as u128 })
        .collect())
}

/// [`decompose`] together with its consistency checks. When `|X_λ|` is at
/// most `max_points` the cellular structure of `End_G(Q[X_λ])` is built and
/// verified, and the dimensions are recomputed from traces of its central
/// idempotents.
pub fn decompose_checked(spaces: &FlagSpaces, lambda: &Partition, max_points: u128) -> Result<(Vec<Component>, Report)> {
    let n = lambda.n();
    let p = spaces.p();
    let comps = decompose(lambda, n, p)?;
    let lc = lambda.to_composition();
    let size = crate::flagcalc::count_flags(&lc, p);
    let mut report = Report::new();
    let total: u128 = comps.iter().map(|c| c.multiplicity as u128 * c.dim).sum();
    report.check("Σ multiplicity · dim = |X_λ|", total == size, || format!("{total} != {size}"));
    let squares: usize = comps.iter().map(|c| c.multiplicity * c.multiplicity).sum();
    let orbits = crate::combinat::contingency_matrices(&lc, &lc)?.len();
    report.check("Σ multiplicity² = |M_λλ|", squares == orbits, || format!("{squares} != {orbits}"));
    let perm_ok = comps.iter().all(|c| permissible_matrices(&c.nu, &lc).len() == c.multiplicity);
    report.check("multiplicity = number of permissible embeddings", perm_ok, || "mismatch".into());
    if size <= max_points {
        let flags = spaces.get(&lc)?.len() as u128;
        report.check("flag count matches enumeration", flags == size, || format!("{flags} != {size}"));
        let cs = cellular_basis_with(spaces, &lc, &lc)?;
        report.check("dim End = |M_λλ|", cs.orbit_keys.len() == orbits, || format!("{}", cs.orbit_keys.len()));
        let (cell_report, analysis) = analyze_cellularity(&cs);
        report.extend(cell_report);
        if let Some(a) = analysis {
            let by_trace: Vec<Q> = a.trace_dims.clone();
            let ok = cs.cells.iter().zip(&by_trace).all(|(cell, d)| {
                comps.iter().any(|c| c.nu == cell.nu && Q::from_integer((c.dim as i64).into()) == *d)
            });
            report.check("trace dimensions agree with the Kostka solve", ok, || {
                format!("trace dims {:?}", by_trace.iter().map(|d| d.to_string()).collect::<Vec<_>>())
            });
            let ranks = cs
                .cells
                .iter()
                .zip(&by_trace)
                .fold(Q::default(), |acc, (c, d)| acc + d * crate::qlinalg::q(c.left.len() as i64));
            let expect = crate::qlinalg::q(size as i64);
            report.check("isotypic projection ranks sum to |X_λ|", ranks == expect, || ranks.to_string());
        }
    }
    Ok((comps, report))
}
