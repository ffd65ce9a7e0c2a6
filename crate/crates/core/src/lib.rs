//! Exact-arithmetic engine for the flag permutation representations of
//! `GL_n` over prime fields and over `Z/p^2`.
//!
//! The crate builds the geometric cellular bases of the Hecke algebras
//! `End_G(Q[X])` for spaces `X` of flags of subspaces (and of pairs of
//! submodules of `(Z/p^2)^n`), verifies the cellular axioms with exact
//! rational linear algebra and reads off the decomposition of the
//! permutation representation into irreducibles.
//!
//! Module map:
//!
//! * [`combinat`]: partitions, compositions, tableaux, contingency matrices, RSK.
//! * [`symgroup`]: permutations, Young subgroups, double cosets, tableau dictionary.
//! * [`iwahori`]: the Iwahori-Hecke algebra of `S_n` and the Murphy basis.
//! * [`finlin`]: linear algebra over `F_p` and submodules of `(Z/p^2)^n`.
//! * [`flagcalc`]: flag spaces, intersection matrices, orbit operators.
//! * [`cellcore`]: cellular bases, cellularity checks, decompositions.
//! * [`modlevel2`]: the level-two module case.

pub mod cellcore;
pub mod combinat;
mod error;
pub mod finlin;
pub mod flagcalc;
pub mod iwahori;
pub mod modlevel2;
pub mod orbit;
pub mod qlinalg;
pub mod report;
pub mod symgroup;

pub use error::{Error, Result};

/// Exact rational scalar used by every operator and linear-algebra routine.
pub type Q = num::BigRational;
