use std::sync::OnceLock;

use proptest::prelude::*;

use rrbg::brace::SkewBrace;
use rrbg::catalog::{standard_catalog, CatalogEntry};
use rrbg::cohomology::{
    cocycle_from_extension, extension_from_cocycle, h2_rrb, rrb_coboundary, TrivialModule, DEFAULT_VARIABLE_BOUND,
};
use rrbg::isoclinism::{are_isoclinic, omega_tables, Verdict, DEFAULT_ISOCLINISM_BOUND};
use rrbg::linalg::AbElement;
use rrbg::rrb::RrbGroup;
use rrbg::schur::SchurMultiplier;

fn config(cases: u32) -> ProptestConfig {
    ProptestConfig { cases, failure_persistence: None, ..ProptestConfig::default() }
}

fn catalog() -> &'static [CatalogEntry] {
    static CAT: OnceLock<Vec<CatalogEntry>> = OnceLock::new();
    CAT.get_or_init(|| standard_catalog().unwrap())
}

fn small_bases() -> Vec<RrbGroup> {
    catalog().iter().filter(|e| e.rrb.h().order() <= 4 && e.rrb.g().order() <= 4).map(|e| e.rrb.clone()).collect()
}

fn modules() -> Vec<TrivialModule> {
    vec![TrivialModule::z2_pair(true), TrivialModule::z2_pair(false), TrivialModule::cyclic(3), TrivialModule::cyclic(4)]
}

proptest! {
    #![proptest_config(config(48))]

    #[test]
    fn classes_ignore_coboundaries(bi in 0usize..51, mi in 0usize..4, seed in any::<u64>()) {
        let bases = small_bases();
        let base = &bases[bi % bases.len()];
        let m = &modules()[mi];
        let h2 = h2_rrb(base, m, DEFAULT_VARIABLE_BOUND).unwrap();
        let pick = |i: u64, q: u64| ((seed.rotate_left(i as u32 * 7) ^ i.wrapping_mul(0x9e37)) % q) as i64;
        let class = AbElement(h2.structure().factors().iter().enumerate().map(|(i, &d)| pick(i as u64, d) as u64).collect());
        let th1: Vec<Vec<i64>> = (0..base.h().order())
            .map(|a| m.k().moduli().iter().map(|&q| if a == 0 { 0 } else { pick(a as u64 + 11, q) }).collect())
            .collect();
        let th2: Vec<Vec<i64>> = (0..base.g().order())
            .map(|b| m.l().moduli().iter().map(|&q| if b == 0 { 0 } else { pick(b as u64 + 29, q) }).collect())
            .collect();
        let c = h2.lift(&class).add(&rrb_coboundary(base, m, &th1, &th2).unwrap(), m);
        prop_assert_eq!(h2.coordinates(&c).unwrap(), class.clone());
        // the extension built from c gives c back through its canonical section
        let ext = extension_from_cocycle(base, m, &c).unwrap();
        prop_assert_eq!(cocycle_from_extension(&ext, &ext.canonical_section).unwrap(), c);
    }

    #[test]
    fn coordinates_are_additive(bi in 0usize..51, mi in 0usize..4, x in any::<u64>(), y in any::<u64>()) {
        let bases = small_bases();
        let base = &bases[bi % bases.len()];
        let m = &modules()[mi];
        let h2 = h2_rrb(base, m, DEFAULT_VARIABLE_BOUND).unwrap();
        let p = h2.structure();
        let e = |s: u64| AbElement(p.factors().iter().enumerate().map(|(i, &d)| (s >> (8 * i)) % d).collect());
        let (a, b) = (e(x), e(y));
        let sum = h2.lift(&a).add(&h2.lift(&b), m);
        prop_assert_eq!(h2.coordinates(&sum).unwrap(), p.add(&a, &b));
    }

    #[test]
    fn structure_of_catalog_members(i in 0usize..1000) {
        let r = &catalog()[i % catalog().len()].rrb;
        let d = r.descendent_group();
        for a in 0..d.order() {
            for b in 0..d.order() {
                prop_assert_eq!(r.r(d.mul(a, b)), r.g().mul(r.r(a), r.r(b)));
            }
        }
        let z = r.center();
        prop_assert!(r.is_ideal(&z));
        prop_assert!(r.quotient(&z).is_ok());
        let (b, bi) = (SkewBrace::from_rrb(r), SkewBrace::from_rrb(&r.iota().0));
        prop_assert_eq!(b.dot().table_rows(), bi.dot().table_rows());
        prop_assert_eq!(b.circle().table_rows(), bi.circle().table_rows());
        omega_tables(r);
    }

    #[test]
    fn isoclinism_reflexive_and_symmetric(i in 0usize..1000, j in 0usize..1000) {
        let c = catalog();
        let (r1, r2) = (&c[i % c.len()].rrb, &c[j % c.len()].rrb);
        prop_assert!(matches!(are_isoclinic(r1, r1, DEFAULT_ISOCLINISM_BOUND).unwrap(), Verdict::Related(_)));
        let forward = are_isoclinic(r1, r2, DEFAULT_ISOCLINISM_BOUND).unwrap();
        let backward = are_isoclinic(r2, r1, DEFAULT_ISOCLINISM_BOUND).unwrap();
        match (&forward, &backward) {
            (Verdict::Unknown(_), _) | (_, Verdict::Unknown(_)) => {}
            _ => prop_assert_eq!(forward.witness().is_some(), backward.witness().is_some()),
        }
    }
}

proptest! {
    #![proptest_config(config(24))]

    #[test]
    fn minimized_representatives_stay_in_class(i in 0usize..1000, s in any::<u64>()) {
        let c = catalog();
        let r = &c[i % c.len()].rrb;
        let m = SchurMultiplier::compute(r, DEFAULT_VARIABLE_BOUND).unwrap();
        let p = m.structure();
        let e = AbElement(p.factors().iter().enumerate().map(|(k, &d)| (s >> (8 * k)) % d).collect());
        let rep = m.minimize_representative(&e).unwrap();
        prop_assert_eq!(rep.order, p.element_order(&e));
        prop_assert_eq!(m.class_of(&rep.embedded).unwrap(), e);
        prop_assert_eq!((r.h().order() * r.g().order()) as u64 % m.exponent(), 0);
    }
}
