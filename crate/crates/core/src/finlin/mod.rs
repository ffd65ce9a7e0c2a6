//! Linear algebra over `F_p` and over the chain ring `Z/p^2`.
//!
//! Vectors are row vectors with entries reduced into `0..modulus`; a matrix
//! `g` acts on the right, `v ↦ v g`.

mod field;
mod group;
mod ring;

pub use field::{quotient_flag, rref, subspaces, Subspace};
pub use group::{apply_matrix, gl_generators, unit_generator, Matrix};
pub use ring::{submodules2, submodules2_of_type, torsion_and_image, Module2};

pub(crate) fn inv_mod_p(a: u32, p: u32) -> u32 {
    debug_assert!(a % p != 0);
    // Fermat
    let mut result = 1u64;
    let mut base = (a % p) as u64;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % p as u64;
        }
        base = base * base % p as u64;
        e >>= 1;
    }
    result as u32
}

/// All tuples in `(0..base)^len` in lexicographic order (one empty tuple for
/// `len = 0`).
pub(crate) fn all_tuples(len: usize, base: u32) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|t| {
                (0..base).map(move |x| {
                    let mut t = t.clone();
                    t.push(x);
                    t
                })
            })
            .collect();
    }
    out
}
