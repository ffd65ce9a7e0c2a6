//! Verification of a candidate cellular basis of an orbit algebra
//! `End_G(Q[X])`, carried out in orbit coordinates.

use std::fmt::Display;

use num::{One, Zero};

use crate::orbit::{convolve, structure_constants, PairOrbits};
use crate::qlinalg::{inverse, q, rank, solve, QMatrix};
use crate::report::Report;
use crate::Q;

/// The algebra spanned by the orbit operators `g_Ω`, `Ω ⊆ X × X`.
#[derive(Clone, Debug)]
pub struct OrbitAlgebra {
    constants: Vec<Vec<Vec<u64>>>,
    op: Vec<usize>,
    /// `(orbit, number of x with (x, x) in it)` for the diagonal orbits.
    diagonal: Vec<(usize, usize)>,
}

impl OrbitAlgebra {
    pub fn new(orbits: &PairOrbits) -> Self {
        assert_eq!(orbits.n_rows(), orbits.n_cols());
        let mut diag = vec![0usize; orbits.count()];
        for x in 0..orbits.n_rows() {
            diag[orbits.label(x, x)] += 1;
        }
        OrbitAlgebra {
            constants: structure_constants(orbits, orbits, orbits),
            op: orbits.op_into(orbits),
            diagonal: diag.into_iter().enumerate().filter(|&(_, k)| k > 0).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.op.len()
    }

    pub fn constants(&self) -> &[Vec<Vec<u64>>] {
        &self.constants
    }

    pub fn op(&self) -> &[usize] {
        &self.op
    }

    pub fn mul(&self, a: &[Q], b: &[Q]) -> Vec<Q> {
        convolve(&self.constants, a, b, self.dim())
    }

    pub fn star(&self, a: &[Q]) -> Vec<Q> {
        let mut out = vec![Q::zero(); self.dim()];
        for (i, x) in a.iter().enumerate() {
            out[self.op[i]] = x.clone();
        }
        out
    }

    pub fn basis_vector(&self, i: usize) -> Vec<Q> {
        let mut v = vec![Q::zero(); self.dim()];
        v[i] = Q::one();
        v
    }

    pub fn one(&self) -> Vec<Q> {
        let mut v = vec![Q::zero(); self.dim()];
        for &(d, _) in &self.diagonal {
            v[d] = Q::one();
        }
        v
    }

    /// Trace of the operator on `Q[X]`.
    pub fn trace(&self, a: &[Q]) -> Q {
        self.diagonal.iter().fold(Q::zero(), |acc, &(d, k)| acc + &a[d] * q(k as i64))
    }
}

/// One cell: the elements `c_{st}` in orbit coordinates, indexed `[s][t]`.
#[derive(Clone, Debug)]
pub struct CellBlock<L> {
    pub label: L,
    pub elements: Vec<Vec<Vec<Q>>>,
}

impl<L> CellBlock<L> {
    pub fn size(&self) -> usize {
        self.elements.len()
    }
}

#[derive(Clone, Debug)]
pub struct CellAnalysis {
    /// Per cell, the form `α_{st}`.
    pub gram: Vec<QMatrix>,
    /// Per cell and orbit `Ω`, the matrix of `g_Ω` on the cell module.
    pub representations: Vec<Vec<QMatrix>>,
    /// Central idempotents in orbit coordinates, one per cell.
    pub idempotents: Vec<Vec<Q>>,
    /// `tr_{Q[X]}(e_τ) / dim C^τ`, the dimension of the isotypic irreducible.
    pub trace_dims: Vec<Q>,
}

struct Frame<'a, L> {
    alg: &'a OrbitAlgebra,
    cells: &'a [CellBlock<L>],
    offsets: Vec<usize>,
    inv: QMatrix,
}

impl<L> Frame<'_, L> {
    /// Coordinates of `v` in the cellular basis, split by cell as `[cell][s][t]`.
    fn coords(&self, v: &[Q]) -> Vec<Vec<Vec<Q>>> {
        let dim = self.alg.dim();
        let flat: Vec<Q> = (0..dim)
            .map(|j| {
                v.iter()
                    .zip(&self.inv)
                    .filter(|(x, _)| !x.is_zero())
                    .fold(Q::zero(), |acc, (x, row)| acc + x * &row[j])
            })
            .collect();
        self.cells
            .iter()
            .zip(&self.offsets)
            .map(|(c, &off)| {
                let k = c.size();
                (0..k).map(|s| flat[off + s * k..off + (s + 1) * k].to_vec()).collect()
            })
            .collect()
    }
}

fn nonzero_cells(co: &[Vec<Vec<Q>>]) -> impl Iterator<Item = usize> + '_ {
    co.iter()
        .enumerate()
        .filter(|(_, b)| b.iter().flatten().any(|x| !x.is_zero()))
        .map(|(j, _)| j)
}

/// Verifies the cellular axioms for `cells` in `alg`, where `leq(j, k)`
/// compares cells and `span{c^σ : σ < τ}` plays the role of the ideal below
/// `τ`. Returns the derived data when the basis is valid.
pub fn verify_cells<L: Display>(
    alg: &OrbitAlgebra,
    cells: &[CellBlock<L>],
    leq: impl Fn(usize, usize) -> bool,
    report: &mut Report,
) -> Option<CellAnalysis> {
    let dim = alg.dim();
    let mut offsets = Vec::new();
    let mut rows: QMatrix = Vec::new();
    for c in cells {
        offsets.push(rows.len());
        for row in &c.elements {
            rows.extend(row.iter().cloned());
        }
    }
    let lt = |j: usize, k: usize| j != k && leq(j, k);
    if rows.len() != dim {
        report.fail("cellular basis spans the algebra", format!("{} elements for dimension {dim}", rows.len()));
        return None;
    }
    let Some(inv) = inverse(&rows) else {
        report.fail("cellular basis spans the algebra", format!("rank {} < {dim}", rank(&rows)));
        return None;
    };
    report.pass("cellular basis spans the algebra");
    let frame = Frame { alg, cells, offsets, inv };

    // (1) the involution
    let mut star_fail = None;
    'star: for c in cells {
        for (s, row) in c.elements.iter().enumerate() {
            for (t, e) in row.iter().enumerate() {
                if alg.star(e) != c.elements[t][s] {
                    star_fail = Some(format!("star(c^{}_({s},{t})) != c^{}_({t},{s})", c.label, c.label));
                    break 'star;
                }
            }
        }
    }
    report.record("star exchanges the cell indices", star_fail);
    let mut anti_fail = None;
    let s = alg.constants();
    'anti: for a in 0..dim {
        for b in 0..dim {
            for d in 0..dim {
                if s[a][b][d] != s[alg.op[b]][alg.op[a]][alg.op[d]] {
                    anti_fail = Some(format!("(g_{a} g_{b})* != g_{b}* g_{a}* at orbit {d}"));
                    break 'anti;
                }
            }
        }
    }
    report.record("star is an anti-homomorphism", anti_fail);

    // (2) left multiplication, ideals and cell representations
    let mut reps: Vec<Vec<QMatrix>> =
        cells.iter().map(|c| vec![vec![vec![Q::zero(); c.size()]; c.size()]; dim]).collect();
    let mut ideal_fail = None;
    let mut cond_fail = None;
    for (k, c) in cells.iter().enumerate() {
        let size = c.size();
        for a in 0..dim {
            let g = alg.basis_vector(a);
            for sidx in 0..size {
                let mut first: Option<Vec<Q>> = None;
                for t in 0..size {
                    let elem = &c.elements[sidx][t];
                    for (side, prod) in [("left", alg.mul(&g, elem)), ("right", alg.mul(elem, &g))] {
                        let co = frame.coords(&prod);
                        if let Some(j) = nonzero_cells(&co).find(|&j| j != k && !lt(j, k)) {
                            ideal_fail.get_or_insert_with(|| {
                                format!(
                                    "{side} product of g_{a} and c^{}_({sidx},{t}) meets cell {}",
                                    c.label, cells[j].label
                                )
                            });
                        }
                        if side == "right" {
                            continue;
                        }
                        let block = &co[k];
                        let stray = (0..size).any(|v| (0..size).any(|u| u != t && !block[v][u].is_zero()));
                        let r: Vec<Q> = (0..size).map(|v| block[v][t].clone()).collect();
                        if stray {
                            cond_fail.get_or_insert_with(|| {
                                format!("g_{a} c^{}_({sidx},{t}) leaves column {t}", c.label)
                            });
                        }
                        match &first {
                            None => first = Some(r),
                            Some(f) if *f != r => {
                                cond_fail.get_or_insert_with(|| {
                                    format!("coefficients of g_{a} c^{}_({sidx},t) depend on t", c.label)
                                });
                            }
                            _ => {}
                        }
                    }
                }
                if let Some(r) = first {
                    for (v, x) in r.into_iter().enumerate() {
                        reps[k][a][v][sidx] = x;
                    }
                }
            }
        }
    }
    report.record("lower cells span two-sided ideals", ideal_fail);
    report.record("left action on a cell is independent of the right index", cond_fail);

    // the bilinear forms
    let mut gram = Vec::new();
    let mut gram_fail = None;
    for (k, c) in cells.iter().enumerate() {
        let size = c.size();
        let mut alpha = vec![vec![Q::zero(); size]; size];
        for sidx in 0..size {
            for t in 0..size {
                let mut value: Option<Q> = None;
                for u in 0..size {
                    for v in 0..size {
                        let co = frame.coords(&alg.mul(&c.elements[u][sidx], &c.elements[t][v]));
                        let block = &co[k];
                        let clean = (0..size).all(|x| (0..size).all(|y| (x, y) == (u, v) || block[x][y].is_zero()))
                            && nonzero_cells(&co).all(|j| j == k || lt(j, k));
                        let a = block[u][v].clone();
                        if !clean || value.as_ref().is_some_and(|w| *w != a) {
                            gram_fail.get_or_insert_with(|| {
                                format!("c^{0}_(u,{sidx}) c^{0}_({t},v) is not a fixed multiple of c^{0}_(u,v)", c.label)
                            });
                        }
                        value.get_or_insert(a);
                    }
                }
                alpha[sidx][t] = value.unwrap_or_else(Q::zero);
            }
        }
        if inverse(&alpha).is_none() && gram_fail.is_none() {
            gram_fail = Some(format!("the form on cell {} is degenerate", c.label));
        }
        gram.push(alpha);
    }
    report.record("cell forms are well defined and nondegenerate", gram_fail);

    // the cell modules are representations
    let mut rep_fail = None;
    'rep: for (k, c) in cells.iter().enumerate() {
        let size = c.size();
        for a in 0..dim {
            for b in 0..dim {
                let lhs = crate::qlinalg::mat_mul(&reps[k][a], &reps[k][b], size);
                let mut rhs = vec![vec![Q::zero(); size]; size];
                for (d, &m) in s[a][b].iter().enumerate() {
                    if m != 0 {
                        for (x, row) in rhs.iter_mut().enumerate() {
                            for (y, e) in row.iter_mut().enumerate() {
                                *e += &reps[k][d][x][y] * q(m as i64);
                            }
                        }
                    }
                }
                if lhs != rhs {
                    rep_fail = Some(format!("cell {} is not a module at (g_{a}, g_{b})", c.label));
                    break 'rep;
                }
            }
        }
    }
    report.record("cell modules are representations", rep_fail);

    // central idempotents: ρ_σ(e_τ) = δ_{στ} I
    let mut idempotents = Vec::new();
    let mut idem_fail = None;
    let equations: QMatrix = cells
        .iter()
        .enumerate()
        .flat_map(|(k, c)| {
            let size = c.size();
            let reps = &reps;
            (0..size * size).map(move |xy| (0..dim).map(|a| reps[k][a][xy / size][xy % size].clone()).collect())
        })
        .collect();
    let full_rank = rank(&equations) == dim;
    for (k, c) in cells.iter().enumerate() {
        let rhs: Vec<Q> = cells
            .iter()
            .enumerate()
            .flat_map(|(j, cj)| {
                let size = cj.size();
                (0..size * size).map(move |xy| if j == k && xy / size == xy % size { Q::one() } else { Q::zero() })
            })
            .collect();
        match solve(&equations, &rhs) {
            Some(e) if full_rank => {
                let central = (0..dim).all(|a| {
                    let g = alg.basis_vector(a);
                    alg.mul(&e, &g) == alg.mul(&g, &e)
                });
                if alg.mul(&e, &e) != e || !central {
                    idem_fail.get_or_insert_with(|| format!("e_{} is not a central idempotent", c.label));
                }
                idempotents.push(e);
            }
            _ => {
                idem_fail.get_or_insert_with(|| format!("no unique e_{} with prescribed cell actions", c.label));
                idempotents.push(vec![Q::zero(); dim]);
            }
        }
    }
    if idem_fail.is_none() {
        let total = idempotents.iter().fold(vec![Q::zero(); dim], |acc, e| {
            acc.iter().zip(e).map(|(x, y)| x + y).collect()
        });
        if total != alg.one() {
            idem_fail = Some("central idempotents do not sum to 1".into());
        }
    }
    report.record("central idempotents separate the cells", idem_fail);

    let trace_dims: Vec<Q> =
        idempotents.iter().zip(cells).map(|(e, c)| alg.trace(e) / q(c.size() as i64)).collect();
    let bad = trace_dims.iter().zip(cells).find(|(d, _)| !d.is_integer() || *d <= &Q::zero());
    report.check("isotypic dimensions are positive integers", bad.is_none(), || {
        let (d, c) = bad.unwrap();
        format!("cell {} gives dimension {d}", c.label)
    });
    Some(CellAnalysis { gram, representations: reps, idempotents, trace_dims })
}
