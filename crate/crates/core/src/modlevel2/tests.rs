use itertools::Itertools;

use super::*;
use crate::cellcore::decompose;
use crate::orbit::PairOrbits;

fn part(v: &[usize]) -> Partition {
    Partition::new(v.to_vec()).unwrap()
}

fn cls(a: usize, b: usize, k: usize) -> PairClass {
    PairClass::new(a, b, k).unwrap()
}

#[test]
fn parameter_sets() {
    assert_eq!(param_set(&part(&[2]), 2, 2).unwrap(), vec![cls(0, 0, 0), cls(0, 1, 0), cls(1, 0, 1)]);
    assert_eq!(param_set(&part(&[1]), 2, 3).unwrap(), vec![cls(0, 0, 0), cls(0, 1, 0)]);
    let big = param_set(&part(&[2, 1]), 4, 2).unwrap();
    assert_eq!(big.len(), 6);
    assert!(big.contains(&PairClass::iota(&part(&[2, 1])).unwrap()));
    assert!(big.contains(&cls(0, 2, 1)));
    for (j, a) in big.iter().enumerate() {
        for b in &big[..j] {
            assert!(!a.embeds_in(b) || a == b);
        }
    }
    assert!(matches!(param_set(&part(&[2]), 1, 2), Err(Error::Precondition(_))));
    assert!(matches!(param_set(&part(&[2, 1]), 3, 2), Err(Error::Precondition(_))));
    assert!(!rank_bound_holds(&part(&[2])).unwrap() && rank_bound_holds(&part(&[2, 1])).unwrap());
    assert!(matches!(param_set(&part(&[3]), 2, 2), Err(Error::InvalidType(_))));
}

#[test]
fn uniqueness_of_embeddings() {
    assert_eq!(unique_embedding(&part(&[2]), &part(&[1]), 2).unwrap(), Embedding::Unique);
    assert!(matches!(unique_embedding(&part(&[2, 1]), &part(&[1]), 2).unwrap(), Embedding::Several(2)));
    assert_eq!(embedding_orbits(&part(&[2, 1]), &part(&[1]), 2, true).unwrap(), Embedding::Unique);
    assert_eq!(unique_embedding(&part(&[1]), &part(&[2]), 2).unwrap(), Embedding::None);
    assert_eq!(unique_embedding(&part(&[1, 1]), &part(&[1]), 3).unwrap(), Embedding::Unique);
    // subspaces of the socle πx₂ of (2,2) form one orbit
    assert_eq!(unique_embedding(&part(&[2, 2]), &part(&[1]), 2).unwrap(), Embedding::Unique);
}

#[test]
fn torsion_flags() {
    let p = 2;
    let free = Module2::new(p, 2, &[vec![1, 0]]);
    let x = ModulePair::iota(free);
    assert_eq!(pi_torsion_flag(&x).shape(), &Composition::new(vec![1, 0, 0, 1]));
    let line = Module2::new(p, 2, &[vec![2, 0]]);
    let y = ModulePair::new(line, Subspace::zero(p, 2)).unwrap();
    assert_eq!(pi_torsion_flag(&y).shape(), &Composition::new(vec![1, 1, 0, 0]));
    assert!(ModulePair::new(Module2::new(p, 2, &[vec![1, 0]]), Subspace::zero(p, 2)).is_err());
    // equivalent pairs have equal compositions
    let spaces = ModuleSpaces::new(3, 2);
    for c in [cls(1, 0, 1), cls(0, 2, 1), cls(1, 1, 2)] {
        let shapes = spaces.get(c).unwrap().pairs().iter().map(|x| pi_torsion_flag(x).shape().clone()).unique().count();
        assert_eq!(shapes, 1);
    }
}

#[test]
fn embedding_order_against_search() {
    let spaces = ModuleSpaces::new(3, 2);
    let classes: Vec<PairClass> = (0..=2)
        .flat_map(|a| (0..=2 - a).flat_map(move |b| (a..=a + b).map(move |k| cls(a, b, k))))
        .collect();
    for x in &classes {
        let rep = spaces.get(*x).unwrap().pairs()[0].clone();
        for y in &classes {
            let found = spaces.get(*y).unwrap().pairs().iter().any(|z| rep.contains(z));
            assert_eq!(found, y.embeds_in(x), "{y} in {x}");
        }
    }
}

fn group_orbits(spaces: &ModuleSpaces, c1: PairClass, c2: PairClass) -> PairOrbits {
    // every invertible 2x2 matrix over Z/p²
    let p = spaces.p();
    let m = p * p;
    let (xs, ys) = (spaces.get(c1).unwrap(), spaces.get(c2).unwrap());
    let mut labels = vec![u32::MAX; xs.len() * ys.len()];
    let group: Vec<Matrix> = (0..m.pow(4))
        .map(|v| vec![vec![v % m, v / m % m], vec![v / m / m % m, v / m / m / m]])
        .filter(|g| (g[0][0] * g[1][1] + m * m - g[0][1] * g[1][0]) % p != 0)
        .collect();
    let mut next = 0;
    for i in 0..xs.len() {
        for j in 0..ys.len() {
            if labels[i * ys.len() + j] != u32::MAX {
                continue;
            }
            for g in &group {
                let a = xs.index_of(&xs.pairs()[i].act(g)).unwrap();
                let b = ys.index_of(&ys.pairs()[j].act(g)).unwrap();
                labels[a * ys.len() + b] = next;
            }
            next += 1;
        }
    }
    PairOrbits::from_labels(xs.len(), ys.len(), labels)
}

#[test]
fn orbits_match_full_group() {
    for p in [2, 3] {
        let spaces = ModuleSpaces::new(2, p);
        let iota = PairClass::iota(&part(&[2])).unwrap();
        assert_eq!(spaces.get(iota).unwrap().len(), (p * (p + 1)) as usize);
        for xi in param_set(&part(&[2]), 2, p).unwrap() {
            let orbits = spaces.orbits(iota, xi).unwrap();
            assert!(orbits.same_partition(&group_orbits(&spaces, iota, xi)));
            let total: usize = (0..orbits.count()).map(|o| orbits.size(o)).sum();
            assert_eq!(total, spaces.get(iota).unwrap().len() * spaces.get(xi).unwrap().len());
        }
        assert_eq!(spaces.orbits(iota, iota).unwrap().count(), 3);
        let recs = orbits_on_module_pairs(iota, iota, 2, p).unwrap();
        let mut meets = recs.iter().map(|o| o.meet_type).collect_vec();
        meets.sort();
        assert_eq!(meets, vec![(0, 0), (0, 1), (1, 0)]);
    }
}

#[test]
fn permissible_embedding_examples() {
    let spaces = ModuleSpaces::new(2, 2);
    let zero = spaces.get(cls(0, 0, 0)).unwrap().pairs()[0].clone();
    for x in spaces.get(cls(1, 0, 1)).unwrap().pairs() {
        assert!(permissible_module_embedding(x, x));
        assert!(permissible_module_embedding(&zero, x));
    }
    // a π-torsion line embeds in a free line exactly when it is its socle
    let lines = spaces.get(cls(0, 1, 0)).unwrap();
    let free = spaces.get(cls(1, 0, 1)).unwrap();
    let x = &free.pairs()[0];
    let count = lines.pairs().iter().filter(|y| permissible_module_embedding(y, x)).count();
    assert_eq!(count, 1);
}

#[test]
fn permissible_embedding_in_rank_four() {
    let spaces = ModuleSpaces::new(4, 2);
    let x = spaces.get(cls(1, 1, 2)).unwrap().pairs()[0].clone();
    let count = |c: PairClass| {
        let ys = spaces.get(c).unwrap();
        let inside = ys.pairs().iter().filter(|y| x.contains(y)).count();
        let good = ys.pairs().iter().filter(|y| permissible_module_embedding(y, &x)).count();
        (inside, good)
    };
    // of the three lines of x₁ ⊆ x₂[π] ≅ F_2², only πx₂ gives a
    // semistandard tableau for ((1,1),(1))
    assert_eq!(count(cls(0, 2, 1)), (3, 1));
    assert_eq!(count(cls(1, 0, 1)), (2, 2));
    assert_eq!(count(cls(0, 1, 0)), (3, 3));
    assert_eq!(count(cls(1, 1, 1)), (1, 1));
}

#[test]
fn module_rsk_counts_small() {
    for p in [2, 3] {
        let spaces = ModuleSpaces::new(2, p);
        for l in [&[2][..], &[1]] {
            for xi in param_set(&part(l), 2, p).unwrap() {
                let r = module_rsk_check(&spaces, &part(l), xi, 10_000).unwrap();
                assert!(r.all_pass(), "{l:?} {xi} p={p}\n{r}");
            }
        }
    }
}

#[test]
fn decomposition_of_free_lines() {
    for (p, dims) in [(2u32, vec![1u128, 2, 3]), (3, vec![1, 3, 8])] {
        let spaces = ModuleSpaces::new(2, p);
        let (comps, report) = module_decompose(&spaces, &part(&[2]), 1000).unwrap();
        assert!(report.all_pass(), "{report}");
        assert_eq!(comps.iter().map(|c| c.multiplicity).collect_vec(), vec![1, 1, 1]);
        assert_eq!(comps.iter().map(|c| c.dim).collect_vec(), dims);
    }
}

#[test]
fn elementary_case_matches_field_grassmannian() {
    for (n, b, p) in [(2, 1, 2), (3, 1, 2), (2, 1, 3), (4, 2, 2)] {
        let lambda = Partition::column(b);
        let spaces = ModuleSpaces::new(n, p);
        let (comps, report) = module_decompose(&spaces, &lambda, 1000).unwrap();
        assert!(report.all_pass(), "{report}");
        let field = decompose(&Partition::from_unsorted(&[n - b, b]), n, p).unwrap();
        let ours: Vec<(usize, u128)> = comps.iter().filter(|c| c.multiplicity > 0).map(|c| (c.multiplicity, c.dim)).collect();
        let theirs: Vec<(usize, u128)> = field.iter().map(|c| (c.multiplicity, c.dim)).collect();
        assert_eq!(ours, theirs, "n={n} b={b} p={p}");
    }
}

#[test]
fn reduction_to_torsion_flags() {
    let spaces = ModuleSpaces::new(2, 2);
    for xi in param_set(&part(&[2]), 2, 2).unwrap() {
        let r = reduction_check(&spaces, &part(&[2]), xi).unwrap();
        assert!(r.all_pass(), "{xi}\n{r}");
    }
}

#[test]
fn transition_matrices_small() {
    for p in [2, 3] {
        let spaces = ModuleSpaces::new(2, p);
        for xi in param_set(&part(&[2]), 2, p).unwrap() {
            let cs = module_cellular_basis(&spaces, &part(&[2]), xi).unwrap();
            let r = cs.transition_report();
            assert!(r.all_pass(), "{xi}\n{r}");
        }
    }
}

#[test]
fn multiplicities_do_not_depend_on_p() {
    let mult = |p| {
        let (comps, _) = module_decompose(&ModuleSpaces::new(2, p), &part(&[2]), 0).unwrap();
        comps.iter().map(|c| (c.eta, c.multiplicity)).collect_vec()
    };
    assert_eq!(mult(2), mult(3));
}

#[test]
fn rank_four_decomposition() {
    let spaces = ModuleSpaces::new(4, 2);
    let lambda = part(&[2, 1]);
    for xi in param_set(&lambda, 4, 2).unwrap() {
        let r = module_rsk_check(&spaces, &lambda, xi, 20_000).unwrap();
        assert!(r.all_pass(), "{xi}\n{r}");
    }
    let (comps, report) = module_decompose(&spaces, &lambda, 1000).unwrap();
    assert!(report.all_pass(), "{report}");
    assert_eq!(spaces.get(PairClass::iota(&lambda).unwrap()).unwrap().len(), 420);
    for xi in param_set(&lambda, 4, 2).unwrap() {
        assert!(spaces.get(xi).unwrap().is_single_orbit(), "{xi}");
    }
    let got = comps.iter().map(|c| (c.multiplicity, c.dim)).collect_vec();
    assert_eq!(got, vec![(1, 1), (2, 14), (1, 20), (1, 56), (1, 105), (1, 210)]);
}
