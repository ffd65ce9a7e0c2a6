//! Comparison of the geometric cellular basis with the Murphy basis through
//! the realization `T_w ↦ g_w` of the Hecke algebra on full flags.
//!
//! Operators between partial flag spaces are transported to full flags by
//! `Φ(f) = π_λ^* ∘ f ∘ π_{μ*}`, with `π` the coarsening maps. Since every
//! fiber of `π_ν` has `|P_ν|/|B|` points, `Φ(g_{Ω₁})^T Φ(g_{Ω₂}) =
//! poincare(ν) Φ(b^ν_{Ω₁Ω₂})`.

use std::sync::Arc;

use crate::combinat::{sstd_enumerate, tableau_of_intersection_matrix, Composition, ContingencyMatrix};
use crate::flagcalc::{
    compose, op_transpose, orbits_on_spaces, permutation_key, FlagSpace, FlagSpaces,
    LinearOperator,
};
use crate::iwahori::{gamma, hecke_mul, murphy_element, poincare, HeckeElement};
use crate::orbit::PairOrbits;
use crate::qlinalg::q;
use crate::report::Report;
use crate::symgroup::Permutation;
use crate::{Error, Result, Q};

/// `H_q(S_n) → End_G(Q[X_B])`, `T_w ↦ g_{Ω(w)}` where `Ω(w)` is the orbit
/// of `(e_•, w e_•)`.
pub struct HeckeRealization {
    n: usize,
    p: u32,
    full: Arc<FlagSpace>,
    orbits: PairOrbits,
    keys: Vec<ContingencyMatrix>,
}

pub fn hecke_realization(spaces: &FlagSpaces, n: usize) -> Result<HeckeRealization> {
    let full = spaces.get(&Composition::new(vec![1; n]))?;
    let (orbits, keys) = orbits_on_spaces(&full, &full)?;
    Ok(HeckeRealization { n, p: spaces.p(), full, orbits, keys })
}

impl HeckeRealization {
    pub fn image(&self, h: &HeckeElement) -> Result<LinearOperator> {
        if h.n() != self.n || h.q() != self.p as i64 {
            return Err(Error::ParameterMismatch(format!("element of H_{}(S_{})", h.q(), h.n())));
        }
        let mut coeffs = vec![Q::default(); self.keys.len()];
        for (w, c) in h.terms() {
            let key = permutation_key(w);
            let k = self.keys.iter().position(|m| *m == key).expect("permutation matrices are orbit keys");
            coeffs[k] += c;
        }
        Ok(LinearOperator::from_orbit_coefficients(&self.orbits, &coeffs))
    }

    /// `π_c^*` as an operator `Q[X_c] → Q[X_B]`.
    pub fn pullback(&self, target: &FlagSpace) -> Result<LinearOperator> {
        let mut entries = Vec::new();
        for (i, f) in self.full.flags().iter().enumerate() {
            let g = f.coarsen(target.shape(), self.p)?;
            let j = target.index_of(&g).ok_or_else(|| Error::Inconsistent(format!("{g} not enumerated")))?;
            entries.push((i, j, q(1)));
        }
        Ok(LinearOperator::from_entries(self.full.len(), target.len(), &entries))
    }

    /// `Φ(f) = π_{rows}^* f π_{cols*}`.
    pub fn transport(&self, f: &LinearOperator, rows: &LinearOperator, cols: &LinearOperator) -> Result<LinearOperator> {
        compose(&compose(rows, f)?, &op_transpose(cols))
    }
}

/// `g_Ω` for a known orbit decomposition.
fn orbit_operator(orbits: &PairOrbits, keys: &[ContingencyMatrix], omega: &ContingencyMatrix) -> Result<LinearOperator> {
    let k = keys.iter().position(|m| m == omega).ok_or_else(|| Error::InvalidOrbitKey(omega.to_string()))?;
    let mut coeffs = vec![Q::default(); keys.len()];
    coeffs[k] = q(1);
    Ok(LinearOperator::from_orbit_coefficients(orbits, &coeffs))
}

/// Compares `b^ν_{Ω₁Ω₂}` on `X_λ × X_μ` with the Murphy element
/// `m_{Θ₁Θ₂}` for the tableaux `Θ_i` of the permissible orbits `Ω_i`.
pub fn mdj_compare(spaces: &FlagSpaces, lambda: &Composition, mu: &Composition) -> Result<Report> {
    let n = lambda.n();
    let qp = spaces.p() as i64;
    let real = hecke_realization(spaces, n)?;
    let mut report = Report::new();

    // the realization is multiplicative on generators
    let mut hom_fail = None;
    'hom: for w in Permutation::all(n) {
        let tw = HeckeElement::basis(&w, qp);
        for i in 0..n.saturating_sub(1) {
            let ts = HeckeElement::basis(&Permutation::simple(n, i), qp);
            let lhs = compose(&real.image(&tw)?, &real.image(&ts)?)?;
            let rhs = real.image(&hecke_mul(&tw, &ts)?)?;
            if lhs != rhs {
                hom_fail = Some(format!("T_{w} T_s{}", i + 1));
                break 'hom;
            }
        }
    }
    report.record("T_w ↦ g_w is an algebra homomorphism", hom_fail);

    let cs = super::cellular_basis_with(spaces, lambda, mu)?;
    let pull_l = real.pullback(&*spaces.get(lambda)?)?;
    let pull_m = real.pullback(&*spaces.get(mu)?)?;
    let mut gamma_fail = None;
    let mut exact_fail = None;
    let mut scaled_fail = None;
    let mut compared = 0;
    for cell in &cs.cells {
        let nu_c = cell.nu.to_composition();
        let pull_n = real.pullback(&*spaces.get(&nu_c)?)?;
        let scale = q(poincare(&nu_c, qp));
        let zs = spaces.get(&nu_c)?;
        let zl = orbits_on_spaces(&zs, &*spaces.get(lambda)?)?;
        let zm = orbits_on_spaces(&zs, &*spaces.get(mu)?)?;
        let transport_g = |omega: &ContingencyMatrix, c: &Composition, pull_c: &LinearOperator| -> Result<LinearOperator> {
            let (orbits, keys) = if c == lambda { &zl } else { &zm };
            real.transport(&orbit_operator(orbits, keys, omega)?, &pull_n, pull_c)
        };
        // Γ_Θ realizes the transported g_Ω
        for (omegas, c, pull_c) in [(&cell.left, lambda, &pull_l), (&cell.right, mu, &pull_m)] {
            for omega in omegas {
                let theta = tableau_of_intersection_matrix(omega)?;
                if !sstd_enumerate(&cell.nu, c).contains(&theta) {
                    return Err(Error::Inconsistent(format!("tableau {theta} of {omega} is not in sstd({},{c})", cell.nu)));
                }
                if real.image(&gamma(&theta, c, qp)?)? != transport_g(omega, c, pull_c)? {
                    gamma_fail.get_or_insert_with(|| format!("Γ_{theta} vs g_{omega}"));
                }
            }
        }
        for (s, o1) in cell.left.iter().enumerate() {
            let g1 = transport_g(o1, lambda, &pull_l)?;
            let t1 = tableau_of_intersection_matrix(o1)?;
            for (t, o2) in cell.right.iter().enumerate() {
                let t2 = tableau_of_intersection_matrix(o2)?;
                let m = real.image(&murphy_element(&t1, &t2, lambda, mu, qp)?)?;
                let b = cs.operator(&cell.elements[s][t]);
                if real.transport(&b, &pull_l, &pull_m)? != m {
                    exact_fail.get_or_insert_with(|| format!("ν = {}, Θ₁ = {t1}, Θ₂ = {t2}", cell.nu));
                }
                let g2 = transport_g(o2, mu, &pull_m)?;
                if compose(&op_transpose(&g1), &g2)? != m.scale(&scale) {
                    scaled_fail.get_or_insert_with(|| format!("ν = {}, Θ₁ = {t1}, Θ₂ = {t2}", cell.nu));
                }
                compared += 1;
            }
        }
    }
    report.record("Γ_Θ is the transported orbit operator g_Ω", gamma_fail);
    report.record("Φ(b^ν_{Ω₁Ω₂}) = m_{Θ₁Θ₂}", exact_fail);
    report.record("Φ(g_{Ω₁})^T Φ(g_{Ω₂}) = poincare(ν) · m_{Θ₁Θ₂}", scaled_fail);
    let expected = crate::combinat::contingency_matrices(lambda, mu)?.len();
    report.check("every basis element was compared", compared == expected, || format!("{compared} of {expected}"));
    Ok(report)
}
