use std::collections::BTreeSet;

use super::*;
use crate::combinat::partitions_of;
use crate::finlin::apply_matrix;
use crate::iwahori::poincare;
use crate::qlinalg::q;
use num::Zero;

fn c(v: &[usize]) -> Composition {
    Composition::new(v.to_vec())
}

fn gaussian_multinomial(c: &Composition, p: u64) -> u64 {
    let fact = |m: usize| (1..=m).map(|k| (0..k).map(|e| p.pow(e as u32)).sum::<u64>()).product::<u64>();
    fact(c.n()) / c.parts().iter().map(|&x| fact(x)).product::<u64>()
}

fn gl_elements(n: usize, p: u32) -> Vec<Matrix> {
    crate::finlin::Subspace::full(p, n * n)
        .elements()
        .into_iter()
        .map(|v| v.chunks(n).map(<[u32]>::to_vec).collect_vec())
        .filter(|m: &Matrix| rref(p, n, m).dim() == n)
        .collect()
}

#[test]
fn flag_counts() {
    assert_eq!(enumerate_flags(&c(&[3]), 3, 2).unwrap().len(), 1);
    assert_eq!(enumerate_flags(&c(&[2, 1]), 3, 2).unwrap().len(), 7);
    assert_eq!(enumerate_flags(&c(&[1, 1, 1]), 3, 2).unwrap().len(), 21);
    assert_eq!(enumerate_flags(&c(&[1, 1, 1]), 3, 3).unwrap().len(), 52);
    for p in [2, 3] {
        for n in 1..=4 {
            for lambda in partitions_of(n) {
                let comp = lambda.to_composition();
                let flags = enumerate_flags(&comp, n, p).unwrap();
                assert_eq!(flags.len() as u64, gaussian_multinomial(&comp, p as u64));
                assert_eq!(flags.iter().collect::<BTreeSet<_>>().len(), flags.len());
            }
        }
    }
    // zero parts repeat members
    let degenerate = enumerate_flags(&c(&[1, 0, 2]), 3, 2).unwrap();
    assert_eq!(degenerate.len(), 7);
    assert!(degenerate.iter().all(|f| f.members()[0] == f.members()[1]));
}

/// `a_{ij}` from element counts of the quotient, with no use of dimension formulas.
fn brute_intersection_matrix(x: &Flag, y: &Flag, p: u32) -> ContingencyMatrix {
    let (l, m) = (x.shape().len(), y.shape().len());
    let elems = |s: &Subspace| s.elements().into_iter().collect::<BTreeSet<_>>();
    let size = |a: &BTreeSet<Vec<u32>>| (a.len() as f64).log(p as f64).round() as isize;
    let cap = |a: &Subspace, b: &Subspace| elems(a).intersection(&elems(b)).cloned().collect::<BTreeSet<_>>();
    let span_size = |a: &BTreeSet<Vec<u32>>, b: &BTreeSet<Vec<u32>>| {
        let sums: BTreeSet<Vec<u32>> = a
            .iter()
            .flat_map(|u| b.iter().map(move |v| u.iter().zip(v).map(|(s, t)| (s + t) % p).collect()))
            .collect();
        size(&sums)
    };
    let rows = (1..=l)
        .rev()
        .map(|i| {
            (1..=m)
                .rev()
                .map(|j| {
                    let top = cap(&x.bottom_up(i, p), &y.bottom_up(j, p));
                    let a = cap(&x.bottom_up(i, p), &y.bottom_up(j - 1, p));
                    let b = cap(&x.bottom_up(i - 1, p), &y.bottom_up(j, p));
                    (size(&top) - span_size(&a, &b)) as usize
                })
                .collect()
        })
        .collect();
    ContingencyMatrix::new(rows)
}

#[test]
fn intersection_matrix_examples() {
    let p = 2;
    for lambda in partitions_of(3) {
        let comp = lambda.to_composition();
        for x in enumerate_flags(&comp, 3, p).unwrap() {
            let diag = (0..comp.len())
                .map(|i| (0..comp.len()).map(|j| if i == j { comp.parts()[i] } else { 0 }).collect())
                .collect();
            assert_eq!(intersection_matrix(&x, &x).unwrap(), ContingencyMatrix::new(diag));
        }
    }
    let point = Flag::standard(&c(&[3]), p);
    for y in enumerate_flags(&c(&[2, 1]), 3, p).unwrap() {
        assert_eq!(intersection_matrix(&point, &y).unwrap(), ContingencyMatrix::new(vec![vec![2, 1]]));
    }
    let full = c(&[1, 1, 1]);
    let xs = enumerate_flags(&full, 3, p).unwrap();
    for x in &xs {
        for y in &xs {
            assert_eq!(intersection_matrix(x, y).unwrap(), brute_intersection_matrix(x, y, p));
        }
    }
}

#[test]
fn permutation_keys() {
    for n in 1..=4 {
        let full = Composition::new(vec![1; n]);
        let e = Flag::standard(&full, 2);
        for w in Permutation::all(n) {
            let y = Flag::permuted_standard(&full, &w, 2);
            assert_eq!(intersection_matrix(&e, &y).unwrap(), permutation_key(&w));
        }
    }
}

#[test]
fn orbit_examples() {
    assert_eq!(orbits_on_pairs(&c(&[3]), &c(&[3]), 3, 2).unwrap().len(), 1);
    let lines = orbits_on_pairs(&c(&[1, 1]), &c(&[1, 1]), 2, 2).unwrap();
    let mut sizes = lines.iter().map(|(_, v)| v.len()).collect_vec();
    sizes.sort();
    assert_eq!(sizes, vec![3, 6]);
    for p in [2, 3] {
        assert_eq!(orbits_on_pairs(&c(&[1, 1, 1]), &c(&[1, 1, 1]), 3, p).unwrap().len(), 6);
    }
}

#[test]
fn fibers_are_group_orbits() {
    for p in [2, 3] {
        for n in 1..=3 {
            let shapes = partitions_of(n).into_iter().map(|l| l.to_composition()).collect_vec();
            let spaces = shapes.iter().map(|s| FlagSpace::new(s, p).unwrap()).collect_vec();
            for xs in &spaces {
                for ys in &spaces {
                    let (by_key, keys) = orbits_on_spaces(xs, ys).unwrap();
                    assert_eq!(keys, contingency_matrices(xs.shape(), ys.shape()).unwrap());
                    assert!(by_key.same_partition(&orbits_by_group(xs, ys)));
                }
            }
        }
    }
}

#[test]
fn operators() {
    let p = 2;
    let full = c(&[1, 1, 1]);
    let mixed = c(&[2, 1]);
    let xs = FlagSpace::new(&full, p).unwrap();
    let ys = FlagSpace::new(&mixed, p).unwrap();
    for (a, b) in [(&xs, &xs), (&xs, &ys), (&ys, &xs), (&ys, &ys)] {
        let (orbits, keys) = orbits_on_spaces(a, b).unwrap();
        let (back, back_keys) = orbits_on_spaces(b, a).unwrap();
        let mut vectors = Vec::new();
        for (k, key) in keys.iter().enumerate() {
            let g = geometric_operator(key, a.shape(), b.shape(), 3, p).unwrap();
            let gt = geometric_operator(&key.transpose(), b.shape(), a.shape(), 3, p).unwrap();
            assert_eq!(op_transpose(&g), gt);
            assert_eq!(back_keys[orbits.op_into(&back)[k]], key.transpose());
            // constant row sums
            let sums = (0..g.n_rows()).map(|x| (0..g.n_cols()).filter(|&y| !g.get(x, y).is_zero()).count());
            assert!(sums.into_iter().all_equal());
            // equivariance: g_Ω commutes with the generators
            for gen in gl_generators(3, p) {
                let (pa, pb) = (a.permutation_of(&gen), b.permutation_of(&gen));
                for (x, y, v) in g.nonzeros() {
                    assert_eq!(&g.get(pa[x], pb[y]), v);
                }
            }
            vectors.push(g.to_vector());
        }
        assert_eq!(crate::qlinalg::rank(&vectors), keys.len());
    }
    let id_key = ContingencyMatrix::new(vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]);
    assert_eq!(geometric_operator(&id_key, &full, &full, 3, p).unwrap(), LinearOperator::identity(21));
    let one = geometric_operator(&ContingencyMatrix::new(vec![vec![3]]), &c(&[3]), &c(&[3]), 3, p).unwrap();
    assert_eq!(one.get(0, 0), q(1));
    assert!(geometric_operator(&ContingencyMatrix::new(vec![vec![2]]), &c(&[2]), &c(&[1, 1]), 2, p).is_err());
    let a = geometric_operator(&id_key, &full, &full, 3, p).unwrap();
    assert_eq!(compose(&LinearOperator::identity(21), &a).unwrap(), a);
}

#[test]
fn orbit_stabilizer_and_parabolic_index() {
    for p in [2, 3] {
        for n in 1..=3 {
            let group = gl_elements(n, p);
            let stab = |f: &Flag| group.iter().filter(|g| f.act(g) == *f).count();
            let borel = stab(&Flag::standard(&Composition::new(vec![1; n]), p));
            for lambda in partitions_of(n) {
                let comp = lambda.to_composition();
                let f = Flag::standard(&comp, p);
                let parabolic = stab(&f);
                assert_eq!(enumerate_flags(&comp, n, p).unwrap().len() * parabolic, group.len());
                assert_eq!(parabolic % borel, 0);
                assert_eq!((parabolic / borel) as i64, poincare(&comp, p as i64));
            }
        }
    }
    // the group acts on row vectors on the right
    let v = apply_matrix(&[1, 0], &[vec![0, 1], vec![1, 0]], 2);
    assert_eq!(v, vec![0, 1]);
}

#[test]
fn coarsening() {
    let full = c(&[1, 1, 1]);
    for f in enumerate_flags(&full, 3, 2).unwrap() {
        let g = f.coarsen(&c(&[2, 1]), 2).unwrap();
        assert_eq!(g.members(), &f.members()[1..]);
        let h = f.coarsen(&c(&[0, 1, 2]), 2).unwrap();
        assert_eq!(h.members()[0], Subspace::full(2, 3));
    }
    assert!(Flag::standard(&c(&[2, 1]), 2).coarsen(&c(&[1, 2]), 2).is_err());
}

#[test]
fn cache_round_trip() {
    let dir = std::env::temp_dir().join(format!("flaghecke-cache-test-{}", std::process::id()));
    let comp = c(&[1, 1, 1]);
    let built = load_or_build(&comp, 3, Some(&dir)).unwrap();
    let loaded = load_or_build(&comp, 3, Some(&dir)).unwrap();
    assert_eq!(built.flags(), loaded.flags());
    assert_eq!(built.flags(), FlagSpace::new(&comp, 3).unwrap().flags());
    // a corrupt file is rebuilt
    let path = std::fs::read_dir(&dir).unwrap().next().unwrap().unwrap().path();
    std::fs::write(&path, b"junk").unwrap();
    assert_eq!(load_or_build(&comp, 3, Some(&dir)).unwrap().len(), 52);
    std::fs::remove_dir_all(&dir).unwrap();
}
