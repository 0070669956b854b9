use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use sylow_core::verify::{self, VerifyConfig};
use sylow_core::{Fe, GaloisField, LieType, LinChar, Pos, Sylow};

const LIMIT: u128 = 1 << 24;

fn g(t: LieType, q: u64) -> Sylow {
    Sylow::new(t, GaloisField::parse(&q.to_string()).unwrap())
}

fn ch(g: &Sylow, s: &str) -> LinChar {
    LinChar::parse(s, g.pup(), g.field()).unwrap()
}

#[test]
fn zero_character_has_no_conditions() {
    for t in [LieType::b(2), LieType::c(2), LieType::d(3)] {
        let g = g(t, 3);
        let z = LinChar::zero(g.pup().len());
        let c = g.conditions_of(&z);
        assert!(c.mc.is_empty() && c.minc.is_empty() && c.suppl.is_empty() && c.core.is_empty());
        let d = g.limbs_and_places(&c).unwrap();
        assert!(d.limb.is_empty() && d.places.is_empty());
        assert!(g.is_staircase(&z));
        assert_eq!(g.enumerate_orbit(&z, LIMIT).unwrap().size(), 1);
        assert_eq!(g.j_of(&z).unwrap().len(), g.pup().len());
        assert_eq!(g.stabilizer(&z, LIMIT).unwrap().len() as u128, g.order());
    }
}

#[test]
fn two_main_conditions_in_one_column_are_not_staircase() {
    let g = g(LieType::b(2), 3);
    let a = ch(&g, "1,3=1;2,3=1");
    assert!(!g.is_staircase(&a));
    let (b, w) = g.staircase_transform(&a).unwrap();
    assert!(g.is_staircase(&b));
    assert_eq!(g.dot_left(&w, &a).unwrap(), b);
    let mc = g.main_conditions(&b);
    assert_eq!(mc.iter().filter(|p| p.j == 3).count(), 1);
    assert!(mc.iter().all(|p| p.j <= 3));
    let e = ch(&g, "1,4=1");
    assert_eq!(g.staircase_transform(&e).unwrap(), (e.clone(), g.identity()));
}

#[test]
fn orbit_sizes_of_single_entries_in_c2() {
    let g = g(LieType::c(2), 3);
    assert_eq!(g.enumerate_orbit(&ch(&g, "1,2=1"), LIMIT).unwrap().size(), 1);
    assert_eq!(g.enumerate_orbit(&ch(&g, "1,4=1"), LIMIT).unwrap().size(), 9);
}

#[test]
fn place_filling_enumerates_the_orbit() {
    let g = g(LieType::c(2), 3);
    let a = ch(&g, "1,4=1");
    let cond = g.conditions_of(&a);
    assert_eq!(cond.mc, BTreeSet::from([Pos::new(1, 4)]));
    let data = g.limbs_and_places(&cond).unwrap();
    let places: Vec<Pos> = data.places.iter().copied().collect();
    assert_eq!(places.len(), 2);
    let orbit = g.enumerate_orbit(&a, LIMIT).unwrap();
    let f = g.field();
    let mut seen = HashSet::new();
    for x in f.elements() {
        for y in f.elements() {
            let values = BTreeMap::from([(places[0], x), (places[1], y)]);
            let (b, _) = g.fill_places(&a, &values).unwrap();
            assert!(orbit.contains(&b));
            assert_eq!(b.get(g.pup(), places[0]), x);
            assert_eq!(b.get(g.pup(), places[1]), y);
            seen.insert(b);
        }
    }
    assert_eq!(seen.len(), 9);
}

#[test]
fn place_filling_properties_on_every_staircase_orbit() {
    for (t, q) in [(LieType::b(2), 3), (LieType::c(2), 3), (LieType::d(3), 3), (LieType::b(2), 5)] {
        let g = g(t, q);
        for o in g.orbit_decomposition(LIMIT).unwrap().iter().filter(|o| o.staircase) {
            let a = &o.representative;
            let cond = g.conditions_of(a);
            let data = g.limbs_and_places(&cond).unwrap();
            assert_eq!(data.limb.len(), data.places.len());
            let image: BTreeSet<Pos> = data.phi.iter().map(|&(_, p)| p).collect();
            let source: BTreeSet<Pos> = data.phi.iter().map(|&(l, _)| l).collect();
            assert_eq!(image, data.places);
            assert_eq!(source, data.limb);
            let current: BTreeMap<Pos, Fe> = data.places.iter().map(|&p| (p, a.get(g.pup(), p))).collect();
            assert_eq!(&g.fill_places(a, &current).unwrap().0, a, "{t} {}", a.display(g.pup(), g.field()));
            let core = g.to_core(a).unwrap();
            assert_eq!(o.core.as_ref(), Some(&core));
            let mut rng = ChaCha8Rng::seed_from_u64(5);
            let values: BTreeMap<Pos, Fe> =
                data.places.iter().map(|&p| (p, g.field().element(rand::Rng::gen_range(&mut rng, 0..q as usize)).unwrap())).collect();
            let (b, moves) = g.fill_places(&core, &values).unwrap();
            assert!(o.contains(&b));
            let w = g.product(&moves, false).unwrap();
            assert_eq!(g.dot_right(&core, &w).unwrap(), b);
        }
    }
}

#[test]
fn every_member_reduces_to_the_same_core() {
    for t in [LieType::b(2), LieType::c(2), LieType::d(2)] {
        let g = g(t, 3);
        for o in g.orbit_decomposition(LIMIT).unwrap().iter().filter(|o| o.staircase) {
            let cores: HashSet<LinChar> = o.members.iter().map(|m| g.to_core(m).unwrap()).collect();
            assert_eq!(cores.len(), 1);
            assert!(g.is_core(cores.iter().next().unwrap()));
        }
    }
}

#[test]
fn main_conditions_are_constant_on_orbits() {
    for t in [LieType::b(1), LieType::b(2), LieType::c(2), LieType::d(2), LieType::d(3)] {
        let g = g(t, 3);
        for o in g.orbit_decomposition(LIMIT).unwrap() {
            for m in &o.members {
                assert_eq!(g.main_conditions(m), o.mc);
            }
        }
    }
}

#[test]
fn rank_one_partition() {
    let g = g(LieType::b(1), 3);
    let orbits = g.orbit_decomposition(LIMIT).unwrap();
    assert_eq!(orbits.len(), 3);
    assert!(orbits[0].representative.is_zero());
    assert!(orbits.iter().all(|o| o.size() == 1));
}

#[test]
fn orbits_are_sorted_and_partition_the_characters() {
    for (t, q) in [(LieType::b(2), 3), (LieType::c(2), 3), (LieType::c(2), 5), (LieType::d(3), 3)] {
        let g = g(t, q);
        let orbits = g.orbit_decomposition(LIMIT).unwrap();
        let total: usize = orbits.iter().map(|o| o.size()).sum();
        assert_eq!(total as u128, g.order());
        for w in orbits.windows(2) {
            assert!(w[0].representative < w[1].representative);
        }
        for o in &orbits {
            assert_eq!(o.members[0], o.representative);
            assert!(o.members.windows(2).all(|w| w[0] < w[1]));
        }
    }
}

#[test]
fn classification_beyond_the_acceptance_settings() {
    let cfg = VerifyConfig::default();
    for (t, q) in [
        (LieType::b(3), 3),
        (LieType::c(3), 3),
        (LieType::d(4), 3),
        (LieType::b(2), 5),
        (LieType::c(2), 5),
        (LieType::b(1), 9),
        (LieType::c(2), 9),
    ] {
        for o in verify::classification(&g(t, q), &cfg, false).unwrap() {
            assert!(o.passed, "{}: {} ({})", o.setting, o.claim, o.detail);
        }
    }
}

#[test]
fn stabilizers_in_small_settings() {
    let cfg = VerifyConfig::default();
    for t in [LieType::b(1), LieType::c(1), LieType::d(2), LieType::b(2), LieType::c(2)] {
        for o in verify::classification(&g(t, 3), &cfg, true).unwrap() {
            assert!(o.passed, "{}: {} ({})", o.setting, o.claim, o.detail);
        }
    }
}

#[test]
fn staircase_reduction_preserves_characters_at_c2_and_d3() {
    let cfg = VerifyConfig::default();
    for t in [LieType::c(2), LieType::d(3)] {
        let g = g(t, 3);
        let oc = verify::orbit_characters(&g, &cfg).unwrap();
        let o = verify::staircase_characters(&g, &oc, &cfg).unwrap();
        assert!(o.passed, "{}", o.detail);
    }
}

#[test]
fn orbit_json_schema() {
    let g = g(LieType::b(2), 3);
    let orbits = g.orbit_decomposition(LIMIT).unwrap();
    let by_size: HashMap<usize, usize> = orbits.iter().fold(HashMap::new(), |mut m, o| {
        *m.entry(o.size()).or_default() += 1;
        m
    });
    assert_eq!(by_size.values().sum::<usize>(), orbits.len());
    let v = serde_json::to_value(g.orbit_json(&orbits[3]).unwrap()).unwrap();
    for key in ["verge", "core", "size", "places", "mc", "representative"] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
    assert!(v["places"].as_array().unwrap().iter().all(|p| p.as_array().unwrap().len() == 2));
}

#[test]
fn limbs_need_a_staircase_character() {
    let g = g(LieType::b(2), 3);
    let a = ch(&g, "1,3=1;2,3=1");
    assert!(g.limbs_and_places(&g.conditions_of(&a)).is_err());
    let ga = Sylow::new(LieType::a(3), GaloisField::new(3, 1).unwrap());
    assert!(ga.limbs_and_places(&ga.conditions_of(&LinChar::zero(ga.pup().len()))).is_err());
}
