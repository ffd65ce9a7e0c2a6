//! Randomized invariants, complementing the exhaustive unit tests.

use flaghecke::combinat::{rsk, Composition, ContingencyMatrix};
use flaghecke::finlin::{gl_generators, Matrix, Module2, Subspace};
use flaghecke::flagcalc::{intersection_matrix, FlagSpace};
use flaghecke::iwahori::{hecke_mul, star, HeckeElement};
use flaghecke::symgroup::{length, Permutation};
use flaghecke::Q;
use proptest::prelude::*;

/// Product of generators picked by `word`, as a matrix acting on the right.
fn group_element(n: usize, modulus: u32, word: &[usize]) -> Matrix {
    let gens = gl_generators(n, modulus);
    let mut g: Matrix = (0..n).map(|i| (0..n).map(|j| u32::from(i == j)).collect()).collect();
    for &w in word.iter().filter(|_| !gens.is_empty()) {
        let h = &gens[w % gens.len()];
        g = (0..n)
            .map(|i| (0..n).map(|j| (0..n).map(|k| g[i][k] as u64 * h[k][j] as u64).sum::<u64>() as u32 % modulus).collect())
            .collect();
    }
    g
}

fn compositions() -> Vec<Composition> {
    [&[1, 1][..], &[2, 1], &[1, 2], &[1, 1, 1], &[2, 2], &[1, 2, 1], &[3, 1], &[0, 2, 1]]
        .iter()
        .map(|c| Composition::new(c.to_vec()))
        .collect()
}

fn small_matrix() -> impl Strategy<Value = ContingencyMatrix> {
    (1usize..5, 1usize..5).prop_flat_map(|(r, c)| {
        proptest::collection::vec(proptest::collection::vec(0usize..3, c), r).prop_map(ContingencyMatrix::new)
    })
}

fn permutation(n: usize) -> impl Strategy<Value = Permutation> {
    Just((0..n).collect::<Vec<usize>>())
        .prop_shuffle()
        .prop_map(|images| Permutation::from_images(images).unwrap())
}

fn hecke_element(n: usize, q: i64) -> impl Strategy<Value = HeckeElement> {
    proptest::collection::vec((permutation(n), -3i64..4), 1..4).prop_map(move |terms| {
        HeckeElement::from_terms(n, q, terms.into_iter().map(|(w, c)| (w, Q::from_integer(c.into())))).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 256, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn rsk_of_transpose_swaps_tableaux(m in small_matrix()) {
        let (p, q) = rsk(&m);
        prop_assert_eq!(rsk(&m.transpose()), (q, p));
    }

    #[test]
    fn intersection_matrix_is_group_invariant(
        ci in 0usize..8, cj in 0usize..8, pick in (any::<usize>(), any::<usize>()),
        p in prop_oneof![Just(2u32), Just(3)], word in proptest::collection::vec(any::<usize>(), 0..12),
    ) {
        let cs = compositions();
        let (c1, c2) = (&cs[ci], &cs[cj]);
        prop_assume!(c1.n() == c2.n());
        let (xs, ys) = (FlagSpace::new(c1, p).unwrap(), FlagSpace::new(c2, p).unwrap());
        let (x, y) = (&xs.flags()[pick.0 % xs.len()], &ys.flags()[pick.1 % ys.len()]);
        let g = group_element(c1.n(), p, &word);
        let (gx, gy) = (x.act(&g), y.act(&g));
        prop_assert!(xs.index_of(&gx).is_some());
        prop_assert_eq!(intersection_matrix(&gx, &gy).unwrap(), intersection_matrix(x, y).unwrap());
    }

    #[test]
    fn subspace_lattice_commutes_with_group(
        n in 1usize..5, p in prop_oneof![Just(2u32), Just(3)],
        a in proptest::collection::vec(proptest::collection::vec(0u32..3, 4), 0..4),
        b in proptest::collection::vec(proptest::collection::vec(0u32..3, 4), 0..4),
        word in proptest::collection::vec(any::<usize>(), 0..12),
    ) {
        let trim = |gens: &[Vec<u32>]| gens.iter().map(|v| v[..n].iter().map(|x| x % p).collect()).collect::<Vec<Vec<u32>>>();
        let (x, y) = (flaghecke::finlin::rref(p, n, &trim(&a)), flaghecke::finlin::rref(p, n, &trim(&b)));
        let g = group_element(n, p, &word);
        prop_assert_eq!(x.intersection(&y).act(&g), x.act(&g).intersection(&y.act(&g)));
        prop_assert_eq!(x.sum(&y).act(&g), x.act(&g).sum(&y.act(&g)));
        prop_assert_eq!(x.dim() + y.dim(), x.sum(&y).dim() + x.dim_intersection(&y));
        prop_assert_eq!(Subspace::full(p, n).contains(&x), true);
    }

    #[test]
    fn module_type_is_group_invariant(
        n in 1usize..4, p in prop_oneof![Just(2u32), Just(3)],
        gens in proptest::collection::vec(proptest::collection::vec(0u32..9, 3), 0..4),
        word in proptest::collection::vec(any::<usize>(), 0..12),
    ) {
        let m2 = p * p;
        let gens: Vec<Vec<u32>> = gens.iter().map(|v| v[..n].iter().map(|x| x % m2).collect()).collect();
        let x = Module2::new(p, n, &gens);
        let g = group_element(n, m2, &word);
        let gx = x.act(&g);
        prop_assert_eq!(gx.type_partition(), x.type_partition());
        prop_assert_eq!(gx.torsion().dim(), x.torsion().dim());
        prop_assert_eq!(gx.image(), x.image().act(&reduce(&g, p)));
        prop_assert!(x.image().dim() <= x.torsion().dim());
    }

    #[test]
    fn module_canonical_form_ignores_row_operations(
        n in 1usize..4, p in prop_oneof![Just(2u32), Just(3)],
        gens in proptest::collection::vec(proptest::collection::vec(0u32..9, 3), 1..4),
        ops in proptest::collection::vec((any::<usize>(), any::<usize>(), 0u32..9), 0..8),
    ) {
        let m2 = p * p;
        let mut rows: Vec<Vec<u32>> = gens.iter().map(|v| v[..n].iter().map(|x| x % m2).collect()).collect();
        let x = Module2::new(p, n, &rows);
        for (i, j, c) in ops {
            let (i, j) = (i % rows.len(), j % rows.len());
            if i != j {
                let add: Vec<u32> = rows[j].iter().map(|v| v * (c % m2)).collect();
                rows[i].iter_mut().zip(add).for_each(|(r, a)| *r = (*r + a) % m2);
            } else {
                rows.swap(0, i);
            }
        }
        prop_assert_eq!(Module2::new(p, n, &rows), x);
    }

    #[test]
    fn star_reverses_products(
        a in hecke_element(3, 2), b in hecke_element(3, 2), c in hecke_element(3, 2),
    ) {
        let ab = hecke_mul(&a, &b).unwrap();
        prop_assert_eq!(star(&ab), hecke_mul(&star(&b), &star(&a)).unwrap());
        prop_assert_eq!(hecke_mul(&ab, &c).unwrap(), hecke_mul(&a, &hecke_mul(&b, &c).unwrap()).unwrap());
    }

    #[test]
    fn length_counts_inversions(w in (1usize..8).prop_flat_map(permutation)) {
        let img = w.images();
        let inversions = (0..img.len()).flat_map(|i| (i + 1..img.len()).map(move |j| (i, j))).filter(|&(i, j)| img[i] > img[j]).count();
        prop_assert_eq!(length(&w), inversions);
        prop_assert_eq!(length(&w.inverse()), inversions);
        prop_assert_eq!(w.reduced_word().len(), inversions);
    }
}

/// Reduction of a `Z/p²` matrix mod `p`.
fn reduce(g: &Matrix, p: u32) -> Matrix {
    g.iter().map(|r| r.iter().map(|x| x % p).collect()).collect()
}
