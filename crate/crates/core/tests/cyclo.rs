use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use sylow_core::cyclo::{character_table_csv, inner_product, inner_product_int, module_character};
use sylow_core::verify::{self, VerifyConfig};
use sylow_core::{ClassFunction, CycInt, GaloisField, GroupTable, LieType, Sylow};

fn g(t: LieType, q: u64) -> Sylow {
    Sylow::new(t, GaloisField::parse(&q.to_string()).unwrap())
}

fn cyc(p: u32, coeffs: &[i64]) -> CycInt {
    let mut x = CycInt::zero(p);
    for (k, &c) in coeffs.iter().enumerate() {
        x = x.add(&CycInt::zeta(p, k as u32).scale(&BigInt::from(c))).unwrap();
    }
    x
}

#[test]
fn root_of_unity_relations() {
    assert_eq!(CycInt::zeta(3, 1).mul(&CycInt::zeta(3, 2)).unwrap(), CycInt::one(3));
    assert!(cyc(3, &[1, 1, 1]).is_zero());
    assert!(cyc(5, &[1, 1, 1, 1, 1]).is_zero());
    assert_eq!(CycInt::zeta(7, 7), CycInt::one(7));
}

#[test]
fn orbit_characters_are_class_functions() {
    let cfg = VerifyConfig::default();
    for t in [LieType::b(2), LieType::c(2)] {
        let g = g(t, 3);
        let oc = verify::orbit_characters(&g, &cfg).unwrap();
        for (o, chi) in oc.orbits.iter().zip(&oc.characters) {
            assert!(chi.is_class_function(&g, &oc.table).unwrap());
            assert_eq!(chi.degree(&g, &oc.table), CycInt::from_scalar(3, BigInt::from(o.size())));
        }
        let trivial = ClassFunction::trivial(3, &oc.table);
        assert_eq!(oc.characters[0], trivial);
        assert_eq!(inner_product(&trivial, &trivial).unwrap(), BigRational::from_integer(1.into()));
    }
}

#[test]
fn regular_identity_over_f5_and_f9() {
    let cfg = VerifyConfig::default();
    for (t, q) in [(LieType::b(2), 5), (LieType::c(2), 5), (LieType::b(1), 9), (LieType::d(3), 3)] {
        let g = g(t, q);
        let oc = verify::orbit_characters(&g, &cfg).unwrap();
        for o in verify::regular_identity(&g, &oc).unwrap() {
            assert!(o.passed, "{}: {} ({})", o.setting, o.claim, o.detail);
        }
    }
}

#[test]
fn monomial_matrices_match_orbit_characters_in_rank_one() {
    let cfg = VerifyConfig::default();
    for t in [LieType::b(1), LieType::c(1), LieType::d(2)] {
        let g = g(t, 3);
        let oc = verify::orbit_characters(&g, &cfg).unwrap();
        let o = verify::monomial_trace_oracle(&g, &oc, &cfg).unwrap();
        assert!(o.passed, "{t}: {}", o.detail);
    }
}

#[test]
fn module_character_requires_a_stable_set() {
    let g = g(LieType::b(2), 3);
    let table = GroupTable::of_sylow(&g, 1 << 20).unwrap();
    let a = sylow_core::LinChar::parse("1,4=1", g.pup(), g.field()).unwrap();
    assert!(module_character(&g, &table, &[a]).is_err());
}

#[test]
fn orbit_characters_have_integral_norms() {
    let cfg = VerifyConfig::default();
    let g = g(LieType::c(2), 3);
    let oc = verify::orbit_characters(&g, &cfg).unwrap();
    for chi in &oc.characters {
        assert!(inner_product_int(chi, chi).unwrap() >= BigInt::from(1));
    }
}

#[test]
fn character_table_layout() {
    let cfg = VerifyConfig::default();
    let g = g(LieType::b(1), 3);
    let oc = verify::orbit_characters(&g, &cfg).unwrap();
    let names: Vec<String> = (0..oc.characters.len()).map(|k| format!("chi_{k}")).collect();
    let csv = character_table_csv(&g, &oc.table, &names, &oc.characters).unwrap();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines.len(), 4);
    assert!(lines[0].starts_with("character,"));
    assert!(lines[1].starts_with("chi_0,\"1\""));
}

proptest! {
    #[test]
    fn cyclotomic_ring_laws(p in prop::sample::select(vec![3u32, 5, 7]), a in prop::collection::vec(-9i64..9, 7), b in prop::collection::vec(-9i64..9, 7), c in prop::collection::vec(-9i64..9, 7)) {
        let (x, y, z) = (cyc(p, &a[..p as usize]), cyc(p, &b[..p as usize]), cyc(p, &c[..p as usize]));
        prop_assert_eq!(x.mul(&y).unwrap(), y.mul(&x).unwrap());
        prop_assert_eq!(x.mul(&y.add(&z).unwrap()).unwrap(), x.mul(&y).unwrap().add(&x.mul(&z).unwrap()).unwrap());
        prop_assert_eq!(x.mul(&y).unwrap().mul(&z).unwrap(), x.mul(&y.mul(&z).unwrap()).unwrap());
        prop_assert_eq!(x.conj().conj(), x.clone());
        prop_assert_eq!(x.mul(&y).unwrap().conj(), x.conj().mul(&y.conj()).unwrap());
        prop_assert!(x.sub(&x).unwrap().is_zero());
        prop_assert_eq!(x.mul_zeta(1), x.mul(&CycInt::zeta(p, 1)).unwrap());
    }
}
