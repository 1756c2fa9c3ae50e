//! Linear-algebra cohomology against brute-force enumeration.

use rrbg::brace::SkewBrace;
use rrbg::cohomology::{h2_group, h2_rrb, h2_slb, CyclicProduct, TrivialModule, DEFAULT_VARIABLE_BOUND};
use rrbg::group::FiniteGroup;
use rrbg::oracle::{self, DEFAULT_TABLE_BOUND};
use rrbg::rrb::RrbGroup;

fn small_bases() -> Vec<RrbGroup> {
    let z2 = FiniteGroup::cyclic(2);
    vec![
        RrbGroup::identity_on(z2.clone()),
        RrbGroup::trivial_action(z2.clone(), z2.clone(), vec![0, 0]).unwrap(),
        RrbGroup::trivial_action(z2.clone(), FiniteGroup::trivial(), vec![0, 0]).unwrap(),
        RrbGroup::trivial_action(FiniteGroup::trivial(), z2.clone(), vec![0]).unwrap(),
        RrbGroup::identity_on(FiniteGroup::cyclic(3)),
    ]
}

#[test]
fn rrb_h2_matches_enumeration() {
    let modules = [TrivialModule::z2_pair(true), TrivialModule::z2_pair(false), TrivialModule::cyclic(3)];
    for base in small_bases() {
        for m in &modules {
            let h = h2_rrb(&base, m, DEFAULT_VARIABLE_BOUND).unwrap();
            let o = oracle::rrb_h2_profile(&base, m, DEFAULT_TABLE_BOUND).unwrap();
            assert_eq!(h.structure().order_profile(), o.profile, "{} with {:?}", base.name(), m);
        }
    }
}

#[test]
fn group_h2_matches_enumeration() {
    for (g, m) in [
        (FiniteGroup::cyclic(2), vec![2]),
        (FiniteGroup::cyclic(3), vec![2]),
        (FiniteGroup::cyclic(4), vec![2]),
        (FiniteGroup::klein_four(), vec![2]),
        (FiniteGroup::cyclic(2), vec![2, 2]),
    ] {
        let m = CyclicProduct::new(m);
        let h = h2_group(&g, &m, DEFAULT_VARIABLE_BOUND).unwrap();
        let o = oracle::group_h2_profile(&g, &m, DEFAULT_TABLE_BOUND).unwrap();
        assert_eq!(h.structure().order_profile(), o.profile, "{}", g.name());
    }
}

#[test]
fn slb_h2_matches_enumeration() {
    let z2 = CyclicProduct::new(vec![2]);
    for b in [SkewBrace::trivial(FiniteGroup::cyclic(2)), SkewBrace::trivial(FiniteGroup::cyclic(3))] {
        let h = h2_slb(&b, &z2, DEFAULT_VARIABLE_BOUND).unwrap();
        let o = oracle::slb_h2_profile(&b, &z2, DEFAULT_TABLE_BOUND).unwrap();
        assert_eq!(h.structure().order_profile(), o.profile);
    }
    let base = RrbGroup::identity_on(FiniteGroup::cyclic(4));
    let b = SkewBrace::from_rrb(&base);
    let h = h2_slb(&b, &z2, DEFAULT_VARIABLE_BOUND).unwrap();
    let o = oracle::slb_h2_profile(&b, &z2, DEFAULT_TABLE_BOUND).unwrap();
    assert_eq!(h.structure().order_profile(), o.profile);
}

#[test]
fn multiplier_matches_enumeration() {
    // the order-3 base has too many tables over Z/9
    for base in small_bases().into_iter().take(4) {
        let m = rrbg::schur::SchurMultiplier::compute(&base, DEFAULT_VARIABLE_BOUND).unwrap();
        let o = oracle::rrb_multiplier_profile(&base, DEFAULT_TABLE_BOUND).unwrap();
        assert_eq!(m.structure().order_profile(), o.profile, "{}", base.name());
    }
    for g in [FiniteGroup::cyclic(2), FiniteGroup::cyclic(3), FiniteGroup::klein_four()] {
        let m = rrbg::schur::group_multiplier(&g, DEFAULT_VARIABLE_BOUND).unwrap();
        let o = oracle::group_multiplier_profile(&g, DEFAULT_TABLE_BOUND).unwrap();
        assert_eq!(m.order_profile(), o.profile, "{}", g.name());
    }
}
