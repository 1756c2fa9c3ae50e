//! A deterministic corpus of small RRB groups.

use crate::group::FiniteGroup;
use crate::rrb::{actions, enumerate_operators, rrb_isomorphisms, RrbError, RrbGroup};

/// Largest `|A| |B|` in the standard corpus.
pub const MAX_PRODUCT_ORDER: usize = 36;

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: String,
    pub rrb: RrbGroup,
}

fn groups() -> Vec<FiniteGroup> {
    vec![
        FiniteGroup::trivial(),
        FiniteGroup::cyclic(2),
        FiniteGroup::cyclic(3),
        FiniteGroup::cyclic(4),
        FiniteGroup::klein_four(),
        FiniteGroup::cyclic(5),
        FiniteGroup::cyclic(6),
        FiniteGroup::symmetric(3),
        FiniteGroup::cyclic(8),
        FiniteGroup::cyclic_product(&[2, 4]),
        FiniteGroup::dihedral(4),
        FiniteGroup::quaternion(),
        FiniteGroup::cyclic(9),
        FiniteGroup::cyclic_product(&[3, 3]),
    ]
}

/// Operators on `(h, g)` for every action, one per isomorphism class, at most
/// `per_pair` of them. With `bijective_only` only bijective operators are kept.
pub fn operators_up_to_iso(
    h: &FiniteGroup,
    g: &FiniteGroup,
    per_pair: usize,
    bijective_only: bool,
) -> Result<Vec<RrbGroup>, RrbError> {
    let mut reps: Vec<RrbGroup> = Vec::new();
    for phi in actions(h, g)? {
        for r in enumerate_operators(h, g, &phi, usize::MAX)? {
            if bijective_only && !r.is_bijective() {
                continue;
            }
            let mut known = false;
            for s in &reps {
                if !rrb_isomorphisms(&r, s, usize::MAX, Some(1))?.is_empty() {
                    known = true;
                    break;
                }
            }
            if !known {
                reps.push(r);
                if reps.len() >= per_pair {
                    return Ok(reps);
                }
            }
        }
    }
    Ok(reps)
}

/// Pairs `(H, G)` from a fixed list with `|H| |G| <= 36`, `|H|, |G| <= 9`, and
/// up to four non-isomorphic operators each; orders 8 and 9 only against groups
/// of order at most 4.
pub fn standard_catalog() -> Result<Vec<CatalogEntry>, RrbError> {
    let gs = groups();
    let mut out = Vec::new();
    for h in &gs {
        for g in &gs {
            let (nh, ng) = (h.order(), g.order());
            if nh * ng > MAX_PRODUCT_ORDER || (nh.max(ng) >= 8 && nh.min(ng) > 4) {
                continue;
            }
            let cap = if nh.max(ng) >= 8 { 2 } else { 4 };
            for r in operators_up_to_iso(h, g, cap, false)? {
                out.push(CatalogEntry { name: format!("{}#{}", r.name(), out.len()), rrb: r });
            }
        }
    }
    Ok(out)
}

/// Bijective operators with `|A| = |B| <= 6`, all isomorphism classes.
pub fn bijective_catalog() -> Result<Vec<CatalogEntry>, RrbError> {
    let gs: Vec<FiniteGroup> = groups().into_iter().filter(|g| g.order() <= 6).collect();
    let mut out = Vec::new();
    for h in &gs {
        for g in gs.iter().filter(|g| g.order() == h.order()) {
            for r in operators_up_to_iso(h, g, usize::MAX, true)? {
                out.push(CatalogEntry { name: format!("{}#b{}", r.name(), out.len()), rrb: r });
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sizes_and_bounds() {
        let c = standard_catalog().unwrap();
        assert!(c.len() >= 50, "{}", c.len());
        assert!(c.iter().all(|e| e.rrb.h().order() * e.rrb.g().order() <= MAX_PRODUCT_ORDER));
        let b = bijective_catalog().unwrap();
        assert!(b.iter().all(|e| e.rrb.is_bijective() && e.rrb.h().order() <= 6));
        // the identity operator on each group
        assert!(b.len() >= 8);
    }
}
