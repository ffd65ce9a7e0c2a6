use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{ModulePair, PairClass};
use crate::finlin::{gl_generators, submodules2_of_type, subspaces, Matrix};
use crate::orbit::{orbits_by_generators, PairOrbits};
use crate::{Error, Result};

/// `Y_ξ` with the permutations induced by the generators of `GL_n(Z/p²)`.
#[derive(Debug)]
pub struct ModuleSpace {
    class: PairClass,
    pairs: Vec<ModulePair>,
    index: HashMap<ModulePair, usize>,
    perms: Vec<Vec<usize>>,
}

impl ModuleSpace {
    pub fn new(class: PairClass, n: usize, p: u32, gens: &[Matrix]) -> Result<Self> {
        if class.rank() > n {
            return Err(Error::Precondition(format!("{class} is not realizable in (Z/{}²)^{n}", p)));
        }
        let candidates = subspaces(n, class.k, p);
        let mut pairs = Vec::new();
        for x2 in submodules2_of_type(n, p, &class.mu2())? {
            let (u, t) = (x2.image(), x2.torsion());
            for w in &candidates {
                if w.contains(&u) && t.contains(w) {
                    pairs.push(ModulePair { x2: x2.clone(), x1: w.clone() });
                }
            }
        }
        let index: HashMap<ModulePair, usize> = pairs.iter().cloned().enumerate().map(|(i, x)| (x, i)).collect();
        let perms = gens
            .iter()
            .map(|g| {
                pairs
                    .par_iter()
                    .map(|x| {
                        index.get(&x.act(g)).copied().ok_or_else(|| Error::Inconsistent(format!("{x} leaves Y_{class}")))
                    })
                    .collect::<Result<Vec<usize>>>()
            })
            .collect::<Result<_>>()?;
        Ok(ModuleSpace { class, pairs, index, perms })
    }

    pub fn class(&self) -> PairClass {
        self.class
    }

    pub fn pairs(&self) -> &[ModulePair] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn index_of(&self, x: &ModulePair) -> Option<usize> {
        self.index.get(x).copied()
    }

    pub fn generator_permutations(&self) -> &[Vec<usize>] {
        &self.perms
    }

    /// Whether `GL_n(Z/p²)` acts transitively, i.e. the type determines the
    /// pair up to the group.
    pub fn is_single_orbit(&self) -> bool {
        let mut uf = petgraph::unionfind::UnionFind::<usize>::new(self.pairs.len());
        for perm in &self.perms {
            for (i, &j) in perm.iter().enumerate() {
                uf.union(i, j);
            }
        }
        (0..self.pairs.len()).all(|i| uf.equiv(0, i))
    }
}

/// Memoized spaces `Y_ξ` and their pair orbits inside `(Z/p²)^n`.
pub struct ModuleSpaces {
    n: usize,
    p: u32,
    gens: Vec<Matrix>,
    spaces: Mutex<HashMap<PairClass, Arc<ModuleSpace>>>,
    orbits: Mutex<HashMap<(PairClass, PairClass), Arc<PairOrbits>>>,
}

impl ModuleSpaces {
    pub fn new(n: usize, p: u32) -> Self {
        ModuleSpaces {
            n,
            p,
            gens: gl_generators(n, p * p),
            spaces: Mutex::new(HashMap::new()),
            orbits: Mutex::new(HashMap::new()),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn get(&self, c: PairClass) -> Result<Arc<ModuleSpace>> {
        if let Some(s) = self.spaces.lock().expect("module space memo").get(&c) {
            return Ok(s.clone());
        }
        let s = Arc::new(ModuleSpace::new(c, self.n, self.p, &self.gens)?);
        self.spaces.lock().expect("module space memo").insert(c, s.clone());
        Ok(s)
    }

    /// Orbits of the diagonal action on `Y_{c₁} × Y_{c₂}`, by union-find.
    pub fn orbits(&self, c1: PairClass, c2: PairClass) -> Result<Arc<PairOrbits>> {
        if let Some(o) = self.orbits.lock().expect("orbit memo").get(&(c1, c2)) {
            return Ok(o.clone());
        }
        let (xs, ys) = (self.get(c1)?, self.get(c2)?);
        let o = Arc::new(orbits_by_generators(xs.len(), ys.len(), &xs.perms, &ys.perms));
        self.orbits.lock().expect("orbit memo").insert((c1, c2), o.clone());
        Ok(o)
    }
}

/// One orbit on `Y_{ξ₁} × Y_{ξ₂}` with the type `2^a 1^b` of `x₂ ∩ y₂`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ModuleOrbit {
    pub rep: (ModulePair, ModulePair),
    pub size: usize,
    pub meet_type: (usize, usize),
}

impl ModuleOrbit {
    /// `dim π(x₂ ∩ y₂)`.
    pub fn pi_meet(&self) -> usize {
        self.meet_type.0
    }
}

impl ModuleSpaces {
    pub fn orbit_records(&self, c1: PairClass, c2: PairClass) -> Result<Vec<ModuleOrbit>> {
        let (xs, ys) = (self.get(c1)?, self.get(c2)?);
        let orbits = self.orbits(c1, c2)?;
        Ok((0..orbits.count())
            .map(|o| {
                let (i, j) = orbits.rep(o);
                let (x, y) = (xs.pairs[i].clone(), ys.pairs[j].clone());
                let meet_type = x.x2.intersection(&y.x2).type_ab();
                ModuleOrbit { rep: (x, y), size: orbits.size(o), meet_type }
            })
            .collect())
    }
}

pub fn orbits_on_module_pairs(c1: PairClass, c2: PairClass, n: usize, p: u32) -> Result<Vec<ModuleOrbit>> {
    ModuleSpaces::new(n, p).orbit_records(c1, c2)
}
