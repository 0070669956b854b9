use std::collections::BTreeSet;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sylow_core::characters::kappa;
use sylow_core::cyclo::ExponentTally;
use sylow_core::geometry::region_members;
use sylow_core::verify::{self, VerifyConfig};
use sylow_core::{CycInt, Error, Fe, GaloisField, LieType, LinChar, Mat, Pos, Region, Sylow};

fn g(t: LieType, q: u64) -> Sylow {
    Sylow::new(t, GaloisField::parse(&q.to_string()).unwrap())
}

fn pick(fam: usize, n: usize) -> LieType {
    [LieType::b(n), LieType::c(n), LieType::d(n.max(2))][fam]
}

#[test]
fn trace_form_examples() {
    let f = GaloisField::new(3, 1).unwrap();
    let a = Mat::unit(5, Pos::new(1, 2), f.from_int(1));
    let b = Mat::unit(5, Pos::new(1, 2), f.from_int(2)).add(&Mat::unit(5, Pos::new(1, 3), f.from_int(1)), &f).unwrap();
    assert_eq!(kappa(&a, &b, &f).unwrap(), f.from_int(2));
    let c = Mat::unit(5, Pos::new(2, 3), f.from_int(1));
    assert_eq!(kappa(&a, &c, &f).unwrap(), Fe::ZERO);
}

#[test]
fn identity_acts_trivially() {
    for t in [LieType::b(2), LieType::c(2), LieType::d(3)] {
        let g = g(t, 3);
        assert!(g.cocycle_f(&g.identity()).is_zero());
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let a = g.random_char(&mut rng);
            assert_eq!(g.monomial_right(&a, &g.identity()).unwrap(), (0, a.clone()));
            assert_eq!(g.dot_left(&g.identity(), &a).unwrap(), a);
            assert_eq!(g.lambda_left_fast(&g.identity(), &a).unwrap(), (0, a.clone()));
            let general = g.lambda_left_general(&g.identity(), &a, 1 << 20).unwrap();
            assert_eq!(general.len(), 1);
            assert_eq!(general.get(&a), Some(&CycInt::one(3).to_rational()));
        }
    }
}

#[test]
fn complement_of_pup_acts_trivially_from_the_left() {
    for t in [LieType::b(2), LieType::c(2), LieType::d(3)] {
        let g = g(t, 3);
        let j: BTreeSet<Pos> =
            region_members(Region::Ur, t).into_iter().filter(|p| !g.pup().contains(*p)).collect();
        let xs = g.enumerate_pattern(&j, true, 1 << 20).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..20 {
            let a = g.random_char(&mut rng);
            for x in xs.iter().take(50) {
                assert_eq!(g.dot_left(x, &a).unwrap(), a, "{t}");
            }
        }
    }
}

#[test]
fn left_fast_path_rejects_support_outside_pkl() {
    let g = g(LieType::b(1), 3);
    let mut seen = false;
    for x in g.enumerate(100).unwrap() {
        for a in g.characters(100).unwrap() {
            if let Err(e) = g.lambda_left_fast(&x, &a) {
                assert_eq!(e, Error::SupportLeavesPkl);
                assert_eq!(e.to_string(), "support leaves pKL");
                seen = true;
            }
        }
    }
    assert!(seen);
}

#[test]
fn trivial_character_pulls_back_to_the_constant_one() {
    let g = g(LieType::b(2), 3);
    let elems: Vec<Mat> = g.enumerate(100).unwrap().collect();
    let zero = LinChar::zero(g.pup().len());
    assert!(g.f_star(&zero, &elems).iter().all(|&e| e == 0));
}

#[test]
fn pullbacks_satisfy_column_orthogonality() {
    for t in [LieType::b(2), LieType::c(2)] {
        let g = g(t, 3);
        let elems: Vec<Mat> = g.enumerate(100).unwrap().collect();
        let mut tallies: Vec<ExponentTally> = elems.iter().map(|_| ExponentTally::new(3)).collect();
        for a in g.characters(100).unwrap() {
            for (k, e) in g.f_star(&a, &elems).into_iter().enumerate() {
                tallies[k].push(e);
            }
        }
        for (u, tally) in elems.iter().zip(tallies) {
            let want = if u.is_identity() { g.order() as i64 } else { 0 };
            assert_eq!(tally.finish(), CycInt::from_scalar(3, want.into()));
        }
    }
}

#[test]
fn right_action_is_exhaustively_an_action_at_b1() {
    let g = g(LieType::b(1), 3);
    let o = verify::action_axioms(&g, &VerifyConfig::default(), true).unwrap();
    assert!(o.passed, "{}", o.detail);
}

#[test]
fn induced_module_identity_in_rank_one_and_d2() {
    for t in [LieType::b(1), LieType::c(1), LieType::d(2)] {
        let o = verify::induced_module(&g(t, 3), &VerifyConfig::default()).unwrap();
        assert!(o.passed, "{t}: {}", o.detail);
    }
}

#[test]
fn json_and_text_round_trip() {
    let g = g(LieType::b(2), 9);
    let f = g.field();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..50 {
        let a = g.random_char(&mut rng);
        let j = a.to_json(g.pup(), f);
        assert_eq!(LinChar::from_json(&j, g.pup(), f).unwrap(), a);
        let s = serde_json::to_string(&j).unwrap();
        assert!(s.starts_with("{\"entries\":"));
        let text = a.display(g.pup(), f).to_string();
        let inner = text.trim_start_matches('[').trim_end_matches(']');
        assert_eq!(LinChar::parse(inner, g.pup(), f).unwrap(), a);
        assert_eq!(LinChar::from_rank(a.rank(9), 9, a.len()), a);
    }
    assert!(LinChar::parse("1,5=1", g.pup(), f).is_err());
}

#[test]
fn left_multiplication_commutes_with_the_right_action_on_staircase_orbits() {
    for fam in 0..3 {
        for n in 1..=3 {
            let g = g(pick(fam, n), 3);
            let p = g.field().characteristic();
            let mut rng = ChaCha8Rng::seed_from_u64(n as u64);
            let mut applicable = 0;
            for _ in 0..4000 {
                let (a, _) = g.staircase_transform(&g.random_char(&mut rng)).unwrap();
                let pos = g.pup().positions()[rng.gen_range(0..g.pup().len())];
                let x = g.root_element(pos, g.field().from_int(rng.gen_range(1..3))).unwrap();
                let u = g.random_element(&mut rng);
                let Ok((e1, b1)) = g.lambda_left_fast(&x, &a) else { continue };
                applicable += 1;
                let (e2, c) = g.monomial_right(&b1, &u).unwrap();
                let (e3, a2) = g.monomial_right(&a, &u).unwrap();
                let (e4, c2) = g.lambda_left_fast(&x, &a2).unwrap();
                assert_eq!(c, c2);
                assert_eq!((e1 + e2) % p, (e3 + e4) % p);
            }
            assert!(applicable >= 20, "{}: only {applicable} samples in the domain", g.lie_type());
        }
    }
}

#[test]
fn support_condition_can_fail_along_non_staircase_orbits() {
    let g = g(LieType::b(2), 3);
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let found = (0..20000).any(|_| {
        let a = g.random_char(&mut rng);
        let x = g.random_element(&mut rng);
        let u = g.random_element(&mut rng);
        g.lambda_left_fast(&x, &a).is_ok()
            && !g.is_staircase(&a)
            && g.lambda_left_fast(&x, &g.dot_right(&a, &u).unwrap()).is_err()
    });
    assert!(found);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn right_action_axioms_on_random_triples(fam in 0usize..3, n in 1usize..=4, q in prop::sample::select(vec![3u64, 5]), seed in any::<u64>()) {
        let g = g(pick(fam, n), q);
        let p = g.field().characteristic();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = g.random_char(&mut rng);
        let u = g.random_element(&mut rng);
        let v = g.random_element(&mut rng);
        let (t1, b1) = g.monomial_right(&a, &u).unwrap();
        let (t2, b2) = g.monomial_right(&b1, &v).unwrap();
        let (t, b) = g.monomial_right(&a, &g.mul(&u, &v).unwrap()).unwrap();
        prop_assert_eq!(b, b2);
        prop_assert_eq!(t, (t1 + t2) % p);
        prop_assert_eq!(g.dot_right(&a, &u).unwrap(), g.dot_right_dense(&a, &u).unwrap());
    }

    #[test]
    fn cocycle_identity_on_random_pairs(fam in 0usize..3, n in 1usize..=4, seed in any::<u64>()) {
        let g = g(pick(fam, n), 3);
        let f = g.field();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let u = g.random_element(&mut rng);
        let v = g.random_element(&mut rng);
        let lhs = g.cocycle_f(&g.mul(&u, &v).unwrap());
        let fu = g.act_v(&g.cocycle_f(&u), &v).unwrap();
        let fv = g.cocycle_f(&v);
        let rhs: Vec<Fe> = fu.coords().iter().zip(fv.coords()).map(|(&a, &b)| f.add(a, b)).collect();
        prop_assert_eq!(lhs.coords(), rhs.as_slice());
    }

    #[test]
    fn left_action_of_the_ambient_group_composes(fam in 0usize..3, n in 1usize..=3, seed in any::<u64>()) {
        let g = g(pick(fam, n), 3);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = g.random_char(&mut rng);
        let x = g.random_ambient(&mut rng);
        let y = g.random_ambient(&mut rng);
        let xy = x.mul(&y, g.field()).unwrap();
        prop_assert_eq!(g.dot_left(&x, &g.dot_left(&y, &a).unwrap()).unwrap(), g.dot_left(&xy, &a).unwrap());
    }

    #[test]
    fn staircase_witness_reaches_the_staircase_form(fam in 0usize..3, n in 2usize..=3, seed in any::<u64>()) {
        let g = g(pick(fam, n), 3);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = g.random_char(&mut rng);
        let (b, w) = g.staircase_transform(&a).unwrap();
        prop_assert!(g.is_staircase(&b));
        prop_assert_eq!(g.dot_left(&w, &a).unwrap(), b);
    }
}
