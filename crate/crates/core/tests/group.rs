use std::collections::{BTreeSet, HashSet};

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use sylow_core::geometry::region_members;
use sylow_core::{Fe, GaloisField, LieType, Mat, Pos, Region, Sylow};

fn g(t: LieType, q: u64) -> Sylow {
    Sylow::new(t, GaloisField::parse(&q.to_string()).unwrap())
}

fn types(n_max: usize) -> Vec<LieType> {
    let mut v = Vec::new();
    for n in 1..=n_max {
        v.push(LieType::b(n));
        v.push(LieType::c(n));
        if n >= 2 {
            v.push(LieType::d(n));
        }
    }
    v
}

#[test]
fn identity_is_a_member_with_zero_coordinates() {
    for t in types(3) {
        let g = g(t, 3);
        let id = g.identity();
        assert!(g.is_member(&id));
        assert_eq!(g.inv(&id).unwrap(), id);
        assert!(g.extract(&id).iter().all(|x| x.is_zero()));
        assert_eq!(g.complete(&vec![Fe::ZERO; g.pup().len()]).unwrap(), id);
    }
}

#[test]
fn single_tilde_generator_is_not_in_b2() {
    let g = g(LieType::b(2), 3);
    let x = g.tilde_root(Pos::new(1, 2), Fe::ONE).unwrap();
    assert!(!g.is_member(&x));
}

#[test]
fn completion_at_b1() {
    let g = g(LieType::b(1), 3);
    let f = g.field();
    let u = g.complete(&[f.from_int(1)]).unwrap();
    assert_eq!(u.get(1, 2), f.from_int(1));
    assert_eq!(u.get(2, 3), f.from_int(2));
    assert_eq!(u.get(1, 3), f.from_int(1));
    assert!(g.is_member(&u));
}

#[test]
fn root_element_matrix_forms() {
    let gb = g(LieType::b(2), 3);
    let f = gb.field();
    let x = gb.root_element(Pos::new(1, 3), Fe::ONE).unwrap();
    let mut want = Mat::identity(5);
    want.set(1, 3, f.from_int(1));
    want.set(3, 5, f.from_int(-1));
    want.set(1, 5, f.neg(f.half()));
    assert_eq!(x, want);
    assert!(gb.is_member(&x));

    let gc = g(LieType::c(2), 5);
    let f = gc.field();
    for a in f.elements() {
        let x = gc.root_element(Pos::new(1, 4), a).unwrap();
        assert_eq!(x, Mat::unit(4, Pos::new(1, 4), a).add(&Mat::identity(4), f).unwrap());
    }
    assert_eq!(gc.root_element(Pos::new(1, 2), Fe::ZERO).unwrap(), gc.identity());
}

#[test]
fn root_element_coordinates_are_unit_vectors() {
    for t in types(3) {
        let g = g(t, 3);
        let f = g.field();
        let two = f.from_int(2);
        for (k, &p) in g.pup().positions().iter().enumerate() {
            let x = g.root_element(p, two).unwrap();
            let c = g.extract(&x);
            for (l, v) in c.iter().enumerate() {
                assert_eq!(*v, if l == k { two } else { Fe::ZERO }, "{t} {p}");
            }
            let order: Vec<Pos> = g.pup().positions().iter().rev().copied().collect();
            let fs = g.factorize(&x, &order).unwrap();
            assert_eq!(g.product(&fs, false).unwrap(), x);
        }
    }
}

#[test]
fn enumeration_counts() {
    for (t, q, n) in [
        (LieType::b(1), 3, 3u128),
        (LieType::b(2), 3, 81),
        (LieType::c(2), 3, 81),
        (LieType::d(3), 3, 729),
        (LieType::b(2), 5, 625),
        (LieType::c(3), 3, 19683),
    ] {
        let g = g(t, q);
        assert_eq!(g.order(), n);
        let all: HashSet<Mat> = g.enumerate(1 << 20).unwrap().collect();
        assert_eq!(all.len() as u128, n, "{t} q={q}");
    }
}

#[test]
fn enumeration_respects_budget() {
    let g = g(LieType::c(3), 3);
    assert!(g.enumerate(100).is_err());
}

#[test]
fn completion_is_a_bijection_onto_u() {
    for t in [LieType::b(1), LieType::c(1), LieType::b(2), LieType::c(2), LieType::d(2)] {
        let g = g(t, 3);
        let members: Vec<Mat> = g.enumerate(1 << 20).unwrap().collect();
        for u in &members {
            assert!(g.is_member(u));
            assert_eq!(&g.complete(&g.extract(u)).unwrap(), u);
        }
        let ambient = g.enumerate_ambient(1 << 20).unwrap().filter(|x| g.is_member(x)).count();
        assert_eq!(ambient, members.len(), "{t}: members of Ũ that lie in U");
    }
}

#[test]
fn factor_tilde_on_pattern_subgroups() {
    let g = g(LieType::b(2), 3);
    let t = g.lie_type();
    let pup: BTreeSet<Pos> = g.pup().positions().iter().copied().collect();
    let j: BTreeSet<Pos> = region_members(Region::Ur, t).into_iter().filter(|p| !pup.contains(p)).collect();
    for x in g.enumerate_pattern(&pup, true, 1 << 20).unwrap() {
        assert_eq!(g.factor_tilde(&x).unwrap(), (x.clone(), g.identity()));
    }
    for x in g.enumerate_pattern(&j, true, 1 << 20).unwrap() {
        assert_eq!(g.factor_tilde(&x).unwrap(), (g.identity(), x.clone()));
    }
}

#[test]
fn generated_order_of_all_generators_is_the_group_order() {
    for t in types(2) {
        let g = g(t, 3);
        assert_eq!(g.generated_order(&g.generators(), 1 << 20).unwrap(), g.order());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn group_laws_on_random_elements(fam in 0usize..3, n in 2usize..=4, q in prop::sample::select(vec![3u64, 5]), seed in any::<u64>()) {
        let t = [LieType::b(n), LieType::c(n), LieType::d(n)][fam];
        let g = g(t, q);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let u = g.random_element(&mut rng);
        let v = g.random_element(&mut rng);
        let w = g.random_element(&mut rng);
        let uv = g.mul(&u, &v).unwrap();
        prop_assert!(g.is_member(&uv));
        prop_assert_eq!(g.mul(&uv, &w).unwrap(), g.mul(&u, &g.mul(&v, &w).unwrap()).unwrap());
        let ui = g.inv(&u).unwrap();
        prop_assert!(g.is_member(&ui));
        prop_assert!(g.mul(&u, &ui).unwrap().is_identity());
        prop_assert_eq!(g.complete(&g.extract(&u)).unwrap(), u.clone());
    }

    #[test]
    fn factorization_round_trips_in_any_order(fam in 0usize..3, n in 2usize..=3, seed in any::<u64>()) {
        let t = [LieType::b(n), LieType::c(n), LieType::d(n)][fam];
        let g = g(t, 3);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let u = g.random_element(&mut rng);
        let mut order: Vec<Pos> = g.pup().positions().to_vec();
        let k = (seed % order.len() as u64) as usize;
        order.rotate_left(k);
        if seed & 1 == 1 {
            order.reverse();
        }
        let fs = g.factorize(&u, &order).unwrap();
        prop_assert_eq!(g.product(&fs, false).unwrap(), u);
    }

    #[test]
    fn ambient_factorization_splits_into_pup_and_complement(n in 1usize..=3, fam in 0usize..3, seed in any::<u64>()) {
        let t = [LieType::b(n), LieType::c(n), LieType::d(n.max(2))][fam];
        let g = g(t, 3);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = g.random_ambient(&mut rng);
        let (a, b) = g.factor_tilde(&x).unwrap();
        prop_assert_eq!(a.mul(&b, g.field()).unwrap(), x);
        for p in a.support() {
            prop_assert!(p.i == p.j || g.pup().contains(p));
        }
        for p in b.support() {
            prop_assert!(p.i == p.j || !g.pup().contains(p));
        }
    }
}
