use std::collections::HashSet;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{param_set, permissible_module_embedding, pi_torsion_flag, ModuleSpaces, PairClass};
use crate::cellcore::{verify_cells, CellAnalysis, CellBlock, OrbitAlgebra};
use crate::combinat::{contingency_matrices, Partition};
use crate::flagcalc::intersection_matrix;
use crate::orbit::PairOrbits;
use crate::qlinalg::{inverse, q, rank};
use crate::report::Report;
use crate::{Error, Result, Q};

/// Orbits on `Y_η × Y_ξ` whose pairs `(z, x)` have `z` permissibly
/// embedded in `x`.
pub fn permissible_orbits(spaces: &ModuleSpaces, eta: PairClass, xi: PairClass) -> Result<Vec<usize>> {
    let (zs, xs) = (spaces.get(eta)?, spaces.get(xi)?);
    let orbits = spaces.orbits(eta, xi)?;
    Ok((0..orbits.count())
        .filter(|&o| {
            let (i, j) = orbits.rep(o);
            permissible_module_embedding(&zs.pairs()[i], &xs.pairs()[j])
        })
        .collect())
}

/// `|(Y_η ×_G Y_ξ)°|`.
pub fn multiplicity(spaces: &ModuleSpaces, eta: PairClass, xi: PairClass) -> Result<usize> {
    Ok(permissible_orbits(spaces, eta, xi)?.len())
}

fn classes_with(spaces: &ModuleSpaces, lambda: &Partition, xi: PairClass) -> Result<(Vec<PairClass>, PairClass)> {
    let classes = param_set(lambda, spaces.n(), spaces.p())?;
    if !classes.contains(&xi) {
        return Err(Error::Precondition(format!("{xi} is not in the parameter set of {lambda}")));
    }
    Ok((classes, PairClass::iota(lambda)?))
}

/// Checks `|Y_ι ×_G Y_ξ| = Σ_{η ≤ ξ} |(Y_η ×_G Y_ι)°| · |(Y_η ×_G Y_ξ)°|`
/// with both sides enumerated, and that permissibility is constant on
/// orbits when the pair spaces have at most `max_pairs` elements.
pub fn module_rsk_check(spaces: &ModuleSpaces, lambda: &Partition, xi: PairClass, max_pairs: usize) -> Result<Report> {
    let (classes, iota) = classes_with(spaces, lambda, xi)?;
    let mut report = Report::new();
    let lhs = spaces.orbits(iota, xi)?.count();
    let mut rhs = 0;
    let mut terms = Vec::new();
    for &eta in classes.iter().filter(|eta| eta.embeds_in(&xi)) {
        let (l, r) = (multiplicity(spaces, eta, iota)?, multiplicity(spaces, eta, xi)?);
        rhs += l * r;
        terms.push(format!("{eta}: {l}·{r}"));
    }
    report.check("|Y_ι ×_G Y_ξ| = Σ_η m°(η,ι)·m°(η,ξ)", lhs == rhs, || format!("{lhs} != {rhs} [{}]", terms.join(", ")));
    let mut invariance = None;
    'outer: for &eta in &classes {
        for target in [iota, xi] {
            let (zs, xs) = (spaces.get(eta)?, spaces.get(target)?);
            if zs.len() * xs.len() > max_pairs {
                continue;
            }
            let orbits = spaces.orbits(eta, target)?;
            let on_rep: Vec<bool> = (0..orbits.count())
                .map(|o| {
                    let (i, j) = orbits.rep(o);
                    permissible_module_embedding(&zs.pairs()[i], &xs.pairs()[j])
                })
                .collect();
            for (i, z) in zs.pairs().iter().enumerate() {
                for (j, x) in xs.pairs().iter().enumerate() {
                    if permissible_module_embedding(z, x) != on_rep[orbits.label(i, j)] {
                        invariance = Some(format!("{z} in {x}"));
                        break 'outer;
                    }
                }
            }
        }
    }
    report.record("permissibility is constant on orbits", invariance);
    Ok(report)
}

/// The elements `b^η_{Ω₁Ω₂}` for one class `η`: `left` are the permissible
/// orbits on `Y_η × Y_ι`, `right` those on `Y_η × Y_ξ`.
#[derive(Clone, Debug)]
pub struct ModuleCell {
    pub eta: PairClass,
    pub left: Vec<usize>,
    pub right: Vec<usize>,
    /// Orbit coordinates on `Y_ι × Y_ξ`, indexed `[s][t]`.
    pub elements: Vec<Vec<Vec<Q>>>,
}

#[derive(Clone, Debug)]
pub struct ModuleCellStructure {
    pub iota: PairClass,
    pub xi: PairClass,
    pub cells: Vec<ModuleCell>,
    orbits: Arc<PairOrbits>,
}

/// Builds `b^η_{Ω₁Ω₂} = g_{Ω₁^op} g_{Ω₂}` on `Y_ι × Y_ξ` for every `η ≤ ξ`
/// in the parameter set. The coefficient of `g_Δ` is the number of
/// `z ∈ Y_η` with `(z, x) ∈ Ω₁` and `(z, y) ∈ Ω₂` at a representative
/// `(x, y)` of `Δ`.
pub fn module_cellular_basis(spaces: &ModuleSpaces, lambda: &Partition, xi: PairClass) -> Result<ModuleCellStructure> {
    let (classes, iota) = classes_with(spaces, lambda, xi)?;
    let orbits = spaces.orbits(iota, xi)?;
    let mut cells = Vec::new();
    for &eta in classes.iter().filter(|eta| eta.embeds_in(&xi)) {
        let left = permissible_orbits(spaces, eta, iota)?;
        let right = permissible_orbits(spaces, eta, xi)?;
        if left.is_empty() || right.is_empty() {
            continue;
        }
        let zs = spaces.get(eta)?;
        let (zx, zy) = (spaces.orbits(eta, iota)?, spaces.orbits(eta, xi)?);
        let mut elements = vec![vec![vec![Q::default(); orbits.count()]; right.len()]; left.len()];
        for d in 0..orbits.count() {
            let (x, y) = orbits.rep(d);
            let mut counts = vec![0i64; zx.count() * zy.count()];
            for z in 0..zs.len() {
                counts[zx.label(z, x) * zy.count() + zy.label(z, y)] += 1;
            }
            for (s, &a) in left.iter().enumerate() {
                for (t, &b) in right.iter().enumerate() {
                    elements[s][t][d] = q(counts[a * zy.count() + b]);
                }
            }
        }
        cells.push(ModuleCell { eta, left, right, elements });
    }
    Ok(ModuleCellStructure { iota, xi, cells, orbits })
}

impl ModuleCellStructure {
    pub fn orbits(&self) -> &PairOrbits {
        &self.orbits
    }

    pub fn len(&self) -> usize {
        self.cells.iter().map(|c| c.left.len() * c.right.len()).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn rows(&self) -> Vec<Vec<Q>> {
        self.cells.iter().flat_map(|c| c.elements.iter().flatten().cloned()).collect()
    }

    /// For every orbit `Δ`, the largest class (in the embedding order)
    /// among the cells whose elements involve `g_Δ`.
    pub fn orbit_labels(&self) -> std::result::Result<Vec<usize>, String> {
        (0..self.orbits.count())
            .map(|d| {
                let touching: Vec<usize> = (0..self.cells.len())
                    .filter(|&c| self.cells[c].elements.iter().flatten().any(|e| e[d] != Q::default()))
                    .collect();
                touching
                    .iter()
                    .copied()
                    .find(|&c| touching.iter().all(|&o| self.cells[o].eta.embeds_in(&self.cells[c].eta)))
                    .ok_or_else(|| {
                        let names: Vec<String> = touching.iter().map(|&c| self.cells[c].eta.to_string()).collect();
                        format!("orbit {d} is touched by {names:?} without a largest class")
                    })
            })
            .collect()
    }

    /// Basis property and block triangularity of the transition matrix to
    /// the orbit basis under `R`.
    pub fn transition_report(&self) -> Report {
        let mut report = Report::new();
        let dim = self.orbits.count();
        let r = rank(&self.rows());
        report.check("cellular elements form a basis of Hom", self.len() == dim && r == dim, || {
            format!("{} elements of rank {r} for dimension {dim}", self.len())
        });
        let labels = match self.orbit_labels() {
            Ok(l) => l,
            Err(w) => {
                report.fail("every orbit has a largest class in its support", w);
                return report;
            }
        };
        report.pass("every orbit has a largest class in its support");
        let mut block_fail = None;
        let mut order_fail = None;
        for (k, cell) in self.cells.iter().enumerate() {
            let own: Vec<usize> = (0..dim).filter(|&d| labels[d] == k).collect();
            let block: Vec<Vec<Q>> =
                cell.elements.iter().flatten().map(|e| own.iter().map(|&d| e[d].clone()).collect()).collect();
            if block.len() != own.len() || inverse(&block).is_none() {
                block_fail.get_or_insert_with(|| format!("{}: {} elements on {} orbits", cell.eta, block.len(), own.len()));
            }
            for e in cell.elements.iter().flatten() {
                if let Some(d) = (0..dim).find(|&d| e[d] != Q::default() && !cell.eta.r_leq(&self.cells[labels[d]].eta)) {
                    order_fail.get_or_insert_with(|| format!("{} touches an orbit labeled {}", cell.eta, self.cells[labels[d]].eta));
                }
            }
        }
        report.record("diagonal blocks are square and invertible", block_fail);
        report.record("supports lie above the cell in R", order_fail);
        report
    }

    /// The cellular axioms for `End_G(F_ι)`, cells compared in `R`.
    pub fn verify_cellularity(&self) -> (Report, Option<CellAnalysis>) {
        let mut report = Report::new();
        if self.xi != self.iota {
            report.fail("structure is an algebra", format!("{} != {}", self.xi, self.iota));
            return (report, None);
        }
        let blocks: Vec<CellBlock<PairClass>> =
            self.cells.iter().map(|c| CellBlock { label: c.eta, elements: c.elements.clone() }).collect();
        let alg = OrbitAlgebra::new(&self.orbits);
        let leq = |j: usize, k: usize| blocks[j].label.r_leq(&blocks[k].label);
        let analysis = verify_cells(&alg, &blocks, leq, &mut report);
        (report, analysis)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleComponent {
    pub eta: PairClass,
    pub multiplicity: usize,
    pub dim: u128,
}

/// `F_ι(λ) = ⊕_η V_η^{m_η}` with `m_η = |(Y_η ×_G Y_ι)°|`. The dimensions
/// solve `|Y_ξ| = Σ_{η ≤ ξ} m°(η, ξ) d_η` over the parameter set; when
/// `|Y_ι| ≤ max_points` they are also recomputed from traces of the
/// central idempotents of `End_G(F_ι)` and the cellular axioms are
/// verified.
pub fn module_decompose(
    spaces: &ModuleSpaces,
    lambda: &Partition,
    max_points: usize,
) -> Result<(Vec<ModuleComponent>, Report)> {
    let iota = PairClass::iota(lambda)?;
    let (classes, _) = classes_with(spaces, lambda, iota)?;
    let mut report = Report::new();
    let mut dims: Vec<i128> = Vec::new();
    let mut diagonal_fail = None;
    for (k, &xi) in classes.iter().enumerate() {
        let size = spaces.get(xi)?.len() as i128;
        let mut lower = 0i128;
        for (j, &eta) in classes[..k].iter().enumerate() {
            if eta.embeds_in(&xi) {
                lower += multiplicity(spaces, eta, xi)? as i128 * dims[j];
            }
        }
        let own = multiplicity(spaces, xi, xi)?;
        if own != 1 {
            diagonal_fail.get_or_insert_with(|| format!("m°({xi},{xi}) = {own}"));
        }
        let d = size - lower;
        if d <= 0 {
            return Err(Error::Inconsistent(format!("dimension of V_{xi} solves to {d}")));
        }
        dims.push(d);
    }
    report.record("m°(ξ,ξ) = 1", diagonal_fail);
    let comps: Vec<ModuleComponent> = classes
        .iter()
        .zip(&dims)
        .map(|(&eta, &d)| Ok(ModuleComponent { eta, multiplicity: multiplicity(spaces, eta, iota)?, dim: d as u128 }))
        .collect::<Result<_>>()?;
    let end_dim = spaces.orbits(iota, iota)?.count();
    let squares: usize = comps.iter().map(|c| c.multiplicity * c.multiplicity).sum();
    report.check("Σ m_η² = dim End(F_ι(λ))", squares == end_dim, || format!("{squares} != {end_dim}"));
    let size = spaces.get(iota)?.len() as u128;
    let total: u128 = comps.iter().map(|c| c.multiplicity as u128 * c.dim).sum();
    report.check("Σ m_η d_η = |Y_ι(λ)|", total == size, || format!("{total} != {size}"));
    let m_iota = comps.iter().find(|c| c.eta == iota).map(|c| c.multiplicity);
    report.check("m_ι(λ) = 1", m_iota == Some(1), || format!("{m_iota:?}"));
    if size as usize <= max_points {
        let cs = module_cellular_basis(spaces, lambda, iota)?;
        report.extend(cs.transition_report());
        let (cell_report, analysis) = cs.verify_cellularity();
        report.extend(cell_report);
        if let Some(a) = analysis {
            let by_trace: HashSet<(PairClass, Q)> =
                cs.cells.iter().zip(&a.trace_dims).map(|(c, d)| (c.eta, d.clone())).collect();
            let solved: HashSet<(PairClass, Q)> =
                comps.iter().filter(|c| c.multiplicity > 0).map(|c| (c.eta, q(c.dim as i64))).collect();
            report.check("trace dimensions agree with the solve", by_trace == solved, || {
                format!("{:?}", by_trace.iter().map(|(e, d)| format!("{e}: {d}")).collect::<Vec<_>>())
            });
        }
    }
    Ok((comps, report))
}

/// For pairs whose `x₂ ∩ y₂` is killed by `π`, the map to π-torsion flag
/// pairs is a bijection of orbits onto `X_{c(ι)} ×_{GL_n(F_p)} X_{c(ξ)}`.
pub fn reduction_check(spaces: &ModuleSpaces, lambda: &Partition, xi: PairClass) -> Result<Report> {
    let (_, iota) = classes_with(spaces, lambda, xi)?;
    let n = spaces.n();
    let mut report = Report::new();
    let mut keys = HashSet::new();
    let mut repeated = None;
    for o in spaces.orbit_records(iota, xi)? {
        if o.pi_meet() != 0 {
            continue;
        }
        let (x, y) = &o.rep;
        let e = intersection_matrix(&pi_torsion_flag(x), &pi_torsion_flag(y))?;
        if !keys.insert(e.clone()) {
            repeated.get_or_insert_with(|| format!("{e}"));
        }
    }
    report.record("distinct orbits give distinct torsion flag orbits", repeated);
    let target = contingency_matrices(&iota.torsion_composition(n), &xi.torsion_composition(n))?.len();
    report.check("every torsion flag orbit is reached", keys.len() == target, || format!("{} of {target}", keys.len()));
    Ok(report)
}
