//! Brute-force reference computations by enumeration of tables.
//!
//! Nothing here uses the lattice or Smith normal form code: cocycle validity is
//! decided by building the extension and checking its axioms, and classes are
//! counted by set membership.

use std::collections::{BTreeMap, HashSet};

use crate::brace::SkewBrace;
use crate::cohomology::gcoh::slb_extension_oracle;
use crate::cohomology::{extension_oracle, Cocycle4, CohomologyError, CyclicProduct, ExtensionData, GroupCocycle, SlbCocycle, TrivialModule};
use crate::group::FiniteGroup;
use crate::rrb::RrbGroup;

/// Default ceiling on the number of enumerated tables.
pub const DEFAULT_TABLE_BOUND: u64 = 1 << 22;

/// Order and number of elements of each order of a finite abelian group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleProfile {
    pub order: u64,
    pub profile: BTreeMap<u64, u64>,
}

fn check_bound(count: u128, bound: u64, what: &'static str) -> Result<(), CohomologyError> {
    if count > bound as u128 {
        return Err(CohomologyError::SearchBoundExceeded { what, size: count.min(usize::MAX as u128) as usize, bound: bound as usize });
    }
    Ok(())
}

/// All vectors with entries `0 <= v[i] < moduli[i]`.
fn all_vectors(moduli: &[u64]) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for &m in moduli {
        out = out
            .into_iter()
            .flat_map(|v| {
                (0..m as i64).map(move |x| {
                    let mut w = v.clone();
                    w.push(x);
                    w
                })
            })
            .collect();
    }
    out
}

/// Profile of `cocycles + B / B`, where `cocycles` is a subgroup given as a
/// full list and `b` the full coboundary subgroup.
fn quotient_profile(cocycles: &[Vec<i64>], b: &HashSet<Vec<i64>>, moduli: &[u64]) -> OracleProfile {
    let in_b = cocycles.iter().filter(|z| b.contains(*z)).count() as u64;
    let mut counts: BTreeMap<u64, u64> = BTreeMap::new();
    for z in cocycles {
        let mut k = 1u64;
        let mut acc = z.clone();
        while !b.contains(&acc) {
            k += 1;
            for ((a, x), &m) in acc.iter_mut().zip(z).zip(moduli) {
                *a = (*a + x).rem_euclid(m as i64);
            }
        }
        *counts.entry(k).or_insert(0) += 1;
    }
    let profile: BTreeMap<u64, u64> = counts.into_iter().map(|(k, c)| (k, c / in_b)).collect();
    OracleProfile { order: cocycles.len() as u64 / in_b, profile }
}

// ------------------------------------------------------------------ groups

fn group_table_from(n: usize, rank: usize, v: &[i64]) -> GroupCocycle {
    let mut t = GroupCocycle::zero(n, rank);
    let mut it = v.iter();
    for x in 1..n {
        for y in 1..n {
            for c in 0..rank {
                t.get_mut(x, y)[c] = *it.next().unwrap();
            }
        }
    }
    t
}

fn group_extension_is_group(g: &FiniteGroup, m: &CyclicProduct, t: &GroupCocycle) -> bool {
    let ni = m.order();
    FiniteGroup::from_fn(g.order() * ni, "ext", |x, y| {
        let (a1, k1, a2, k2) = (x / ni, x % ni, y / ni, y % ni);
        let s: Vec<i64> = m.coords(k1).iter().zip(m.coords(k2)).zip(t.get(a1, a2)).map(|((p, q), r)| p + q + r).collect();
        g.mul(a1, a2) * ni + m.index(&s)
    })
    .is_ok()
}

fn group_coboundary_flat(g: &FiniteGroup, m: &CyclicProduct, theta: &[Vec<i64>]) -> Vec<i64> {
    let n = g.order();
    let mut v = Vec::new();
    for x in 1..n {
        for y in 1..n {
            for (c, &q) in m.moduli().iter().enumerate() {
                v.push((theta[y][c] - theta[g.mul(x, y)][c] + theta[x][c]).rem_euclid(q as i64));
            }
        }
    }
    v
}

fn thetas(n: usize, m: &CyclicProduct) -> Vec<Vec<Vec<i64>>> {
    let rk = m.rank();
    let moduli: Vec<u64> = (1..n).flat_map(|_| m.moduli().iter().copied()).collect();
    all_vectors(&moduli)
        .into_iter()
        .map(|flat| {
            let mut th = vec![vec![0; rk]];
            th.extend((1..n).map(|x| flat[(x - 1) * rk..x * rk].to_vec()));
            th
        })
        .collect()
}

/// All normalized group 2-cocycles (as flat vectors), found by testing every table.
pub fn group_cocycles(g: &FiniteGroup, m: &CyclicProduct, bound: u64) -> Result<Vec<Vec<i64>>, CohomologyError> {
    let n = g.order();
    let moduli: Vec<u64> = (0..(n - 1) * (n - 1)).flat_map(|_| m.moduli().iter().copied()).collect();
    check_bound(moduli.iter().map(|&x| x as u128).product(), bound, "group cochain tables")?;
    Ok(all_vectors(&moduli)
        .into_iter()
        .filter(|v| group_extension_is_group(g, m, &group_table_from(n, m.rank(), v)))
        .collect())
}

pub fn group_h2_profile(g: &FiniteGroup, m: &CyclicProduct, bound: u64) -> Result<OracleProfile, CohomologyError> {
    let n = g.order();
    let z = group_cocycles(g, m, bound)?;
    let b: HashSet<Vec<i64>> = thetas(n, m).iter().map(|th| group_coboundary_flat(g, m, th)).collect();
    let moduli: Vec<u64> = (0..(n - 1) * (n - 1)).flat_map(|_| m.moduli().iter().copied()).collect();
    Ok(quotient_profile(&z, &b, &moduli))
}

/// Schur multiplier of a group as the image of `H2(G, Z/N) -> H2(G, Z/NE)`,
/// `x -> E x`, with `N = E = |G|`, by enumeration.
pub fn group_multiplier_profile(g: &FiniteGroup, bound: u64) -> Result<OracleProfile, CohomologyError> {
    let n = g.order();
    let nn = n as u64;
    let small = CyclicProduct::new(vec![nn]);
    let big = CyclicProduct::new(vec![nn * nn]);
    let z = group_cocycles(g, &small, bound)?;
    check_bound(((nn * nn) as u128).pow(n as u32 - 1), bound, "coboundary parameters")?;
    let image: Vec<Vec<i64>> = z.iter().map(|v| v.iter().map(|x| x * nn as i64).collect()).collect();
    let b: HashSet<Vec<i64>> = thetas(n, &big).iter().map(|th| group_coboundary_flat(g, &big, th)).collect();
    let moduli = vec![nn * nn; (n - 1) * (n - 1)];
    Ok(quotient_profile(&image, &b, &moduli))
}

// ------------------------------------------------------------------ braces

pub fn slb_h2_profile(brace: &SkewBrace, m: &CyclicProduct, bound: u64) -> Result<OracleProfile, CohomologyError> {
    let n = brace.order();
    let half = (n - 1) * (n - 1) * m.rank();
    let zd = group_cocycles(brace.dot(), m, bound)?;
    let zc = group_cocycles(brace.circle(), m, bound)?;
    check_bound(zd.len() as u128 * zc.len() as u128, bound, "brace cochain pairs")?;
    let mut z = Vec::new();
    for a in &zd {
        for c in &zc {
            let pair = SlbCocycle {
                tau: group_table_from(n, m.rank(), a),
                tau_tilde: group_table_from(n, m.rank(), c),
            };
            if slb_extension_oracle(brace, m, &pair) {
                let mut v = a.clone();
                v.extend_from_slice(c);
                z.push(v);
            }
        }
    }
    let b: HashSet<Vec<i64>> = thetas(n, m)
        .iter()
        .map(|th| {
            let mut v = group_coboundary_flat(brace.dot(), m, th);
            v.extend(group_coboundary_flat(brace.circle(), m, th));
            v
        })
        .collect();
    debug_assert_eq!(z.first().map_or(2 * half, |v| v.len()), 2 * half);
    let moduli: Vec<u64> = (0..2 * (n - 1) * (n - 1)).flat_map(|_| m.moduli().iter().copied()).collect();
    Ok(quotient_profile(&z, &b, &moduli))
}

// ------------------------------------------------------------------ RRB groups

/// Flat value vector of a cocycle over every table entry with no identity argument.
fn rrb_flat(c: &Cocycle4) -> Vec<i64> {
    let (na, nb, _, _) = c.dims();
    let mut v = Vec::new();
    for x in 1..na {
        for y in 1..na {
            v.extend_from_slice(c.tau1(x, y));
        }
    }
    for x in 1..nb {
        for y in 1..nb {
            v.extend_from_slice(c.tau2(x, y));
        }
    }
    for x in 1..na {
        for y in 1..nb {
            v.extend_from_slice(c.rho(x, y));
        }
    }
    for x in 1..na {
        v.extend_from_slice(c.chi(x));
    }
    v
}

fn rrb_moduli(base: &RrbGroup, module: &TrivialModule) -> Vec<u64> {
    let (na, nb) = (base.h().order(), base.g().order());
    let k = module.k().moduli();
    let l = module.l().moduli();
    let mut v = Vec::new();
    v.extend((0..(na - 1) * (na - 1)).flat_map(|_| k.iter().copied()));
    v.extend((0..(nb - 1) * (nb - 1)).flat_map(|_| l.iter().copied()));
    v.extend((0..(na - 1) * (nb - 1)).flat_map(|_| k.iter().copied()));
    v.extend((0..na - 1).flat_map(|_| l.iter().copied()));
    v
}

/// All RRB 2-cocycles, decided by the extension construction. Group cocycles
/// for the two tables are enumerated first; `rho` and `chi` are then tried in full.
pub fn rrb_cocycles(base: &RrbGroup, module: &TrivialModule, bound: u64) -> Result<Vec<Cocycle4>, CohomologyError> {
    let (na, nb) = (base.h().order(), base.g().order());
    let (rk, rl) = (module.k().rank(), module.l().rank());
    let z1 = group_cocycles(base.h(), module.k(), bound)?;
    let z2 = group_cocycles(base.g(), module.l(), bound)?;
    let rho_moduli: Vec<u64> = (0..(na - 1) * (nb - 1)).flat_map(|_| module.k().moduli().iter().copied()).collect();
    let chi_moduli: Vec<u64> = (0..na - 1).flat_map(|_| module.l().moduli().iter().copied()).collect();
    let rest: u128 = rho_moduli.iter().chain(&chi_moduli).map(|&x| x as u128).product();
    check_bound(z1.len() as u128 * z2.len() as u128 * rest, bound, "RRB cochain tables")?;
    let rhos = all_vectors(&rho_moduli);
    let chis = all_vectors(&chi_moduli);
    let mut out = Vec::new();
    for t1 in &z1 {
        for t2 in &z2 {
            for r in &rhos {
                for x in &chis {
                    let mut c = Cocycle4::zero(na, nb, rk, rl);
                    let mut it = t1.iter();
                    for a in 1..na {
                        for b in 1..na {
                            for k in 0..rk {
                                c.tau1_mut(a, b)[k] = *it.next().unwrap();
                            }
                        }
                    }
                    let mut it = t2.iter();
                    for a in 1..nb {
                        for b in 1..nb {
                            for k in 0..rl {
                                c.tau2_mut(a, b)[k] = *it.next().unwrap();
                            }
                        }
                    }
                    let mut it = r.iter();
                    for a in 1..na {
                        for b in 1..nb {
                            for k in 0..rk {
                                c.rho_mut(a, b)[k] = *it.next().unwrap();
                            }
                        }
                    }
                    let mut it = x.iter();
                    for a in 1..na {
                        for k in 0..rl {
                            c.chi_mut(a)[k] = *it.next().unwrap();
                        }
                    }
                    if extension_oracle(base, module, &c)?.is_ok() {
                        out.push(c);
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Coboundary of `(theta1, theta2)` straight from the defining formulas.
pub fn rrb_coboundary_direct(base: &RrbGroup, module: &TrivialModule, th1: &[Vec<i64>], th2: &[Vec<i64>]) -> Cocycle4 {
    let (a, b) = (base.h(), base.g());
    let (na, nb) = (a.order(), b.order());
    let mut c = Cocycle4::zero(na, nb, module.k().rank(), module.l().rank());
    let sub = |x: &[i64], y: &[i64]| x.iter().zip(y).map(|(p, q)| p - q).collect::<Vec<_>>();
    for x in 0..na {
        for y in 0..na {
            let v: Vec<i64> = th1[y].iter().zip(&th1[a.mul(x, y)]).zip(&th1[x]).map(|((p, q), r)| p - q + r).collect();
            c.tau1_mut(x, y).copy_from_slice(&v);
        }
        for g in 0..nb {
            c.rho_mut(x, g).copy_from_slice(&sub(&th1[x], &th1[base.phi(g, x)]));
        }
        c.chi_mut(x).copy_from_slice(&sub(&module.apply_s(&th1[x]), &th2[base.r(x)]));
    }
    for x in 0..nb {
        for y in 0..nb {
            let v: Vec<i64> = th2[y].iter().zip(&th2[b.mul(x, y)]).zip(&th2[x]).map(|((p, q), r)| p - q + r).collect();
            c.tau2_mut(x, y).copy_from_slice(&v);
        }
    }
    c.reduce(module);
    c
}

fn rrb_coboundary_set(base: &RrbGroup, module: &TrivialModule, bound: u64) -> Result<HashSet<Vec<i64>>, CohomologyError> {
    let (na, nb) = (base.h().order(), base.g().order());
    let t1 = thetas(na, module.k());
    let t2 = thetas(nb, module.l());
    check_bound(t1.len() as u128 * t2.len() as u128, bound, "coboundary parameters")?;
    let mut out = HashSet::new();
    for a in &t1 {
        for b in &t2 {
            out.insert(rrb_flat(&rrb_coboundary_direct(base, module, a, b)));
        }
    }
    Ok(out)
}

pub fn rrb_h2_profile(base: &RrbGroup, module: &TrivialModule, bound: u64) -> Result<OracleProfile, CohomologyError> {
    let z: Vec<Vec<i64>> = rrb_cocycles(base, module, bound)?.iter().map(rrb_flat).collect();
    let b = rrb_coboundary_set(base, module, bound)?;
    Ok(quotient_profile(&z, &b, &rrb_moduli(base, module)))
}

/// The multiplier as the image of `H2(A, K_N) -> H2(A, K_NE)`, `x -> E x`,
/// with `N = E = |A||B|`, by enumeration.
pub fn rrb_multiplier_profile(base: &RrbGroup, bound: u64) -> Result<OracleProfile, CohomologyError> {
    let n = (base.h().order() * base.g().order()) as u64;
    let small = TrivialModule::cyclic(n);
    let big = TrivialModule::cyclic(n * n);
    let z = rrb_cocycles(base, &small, bound)?;
    let image: Vec<Vec<i64>> = z.iter().map(|c| rrb_flat(c).iter().map(|x| x * n as i64).collect()).collect();
    let b = rrb_coboundary_set(base, &big, bound)?;
    Ok(quotient_profile(&image, &b, &rrb_moduli(base, &big)))
}

/// Whether two extensions of the same base by the same module are equivalent:
/// some `(a, k) -> (a, k + f(a))`, `(b, l) -> (b, l + g(b))` is an RRB
/// isomorphism. Both must be built on `A x K` and `B x L`.
pub fn extensions_equivalent(e1: &ExtensionData, e2: &ExtensionData) -> bool {
    let (na, nb) = (e1.base.h().order(), e1.base.g().order());
    let (kp, lp) = (e1.module.k(), e1.module.l());
    let (nk, nl) = (kp.order(), lp.order());
    let add = |p: &CyclicProduct, x: usize, y: usize| {
        let s: Vec<i64> = p.coords(x).iter().zip(p.coords(y)).map(|(a, b)| a + b).collect();
        p.index(&s)
    };
    let fs = shifts(na, nk);
    let gs = shifts(nb, nl);
    let (t1, t2) = (&e1.total, &e2.total);
    for f in &fs {
        let psi: Vec<usize> = (0..na * nk).map(|x| (x / nk) * nk + add(kp, x % nk, f[x / nk])).collect();
        let h_ok = (0..na * nk).all(|x| (0..na * nk).all(|y| psi[t1.h().mul(x, y)] == t2.h().mul(psi[x], psi[y])));
        if !h_ok {
            continue;
        }
        for g in &gs {
            let eta: Vec<usize> = (0..nb * nl).map(|y| (y / nl) * nl + add(lp, y % nl, g[y / nl])).collect();
            let ok = (0..nb * nl).all(|x| (0..nb * nl).all(|y| eta[t1.g().mul(x, y)] == t2.g().mul(eta[x], eta[y])))
                && (0..na * nk).all(|x| eta[t1.r(x)] == t2.r(psi[x]))
                && (0..nb * nl).all(|y| (0..na * nk).all(|x| psi[t1.phi(y, x)] == t2.phi(eta[y], psi[x])));
            if ok {
                return true;
            }
        }
    }
    false
}

/// Normalized maps `{0..n} -> {0..m}` as value lists.
fn shifts(n: usize, m: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![0usize]];
    for _ in 1..n {
        out = out
            .into_iter()
            .flat_map(|v| {
                (0..m).map(move |x| {
                    let mut w = v.clone();
                    w.push(x);
                    w
                })
            })
            .collect();
    }
    out
}

/// Number of equivalence classes among all extensions built from every valid
/// quadruple, by pairwise equivalence search.
pub fn count_extension_classes(base: &RrbGroup, module: &TrivialModule, bound: u64) -> Result<usize, CohomologyError> {
    let mut reps: Vec<ExtensionData> = Vec::new();
    for c in rrb_cocycles(base, module, bound)? {
        let ext = crate::cohomology::extension_from_cocycle(base, module, &c)?;
        if !reps.iter().any(|r| extensions_equivalent(r, &ext)) {
            reps.push(ext);
        }
    }
    Ok(reps.len())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn group_values() {
        let z2 = CyclicProduct::new(vec![2]);
        let p = group_h2_profile(&FiniteGroup::cyclic(2), &z2, DEFAULT_TABLE_BOUND).unwrap();
        assert_eq!(p.order, 2);
        let p = group_h2_profile(&FiniteGroup::cyclic(3), &z2, DEFAULT_TABLE_BOUND).unwrap();
        assert_eq!(p.order, 1);
        let p = group_multiplier_profile(&FiniteGroup::cyclic(3), DEFAULT_TABLE_BOUND).unwrap();
        assert_eq!(p.order, 1);
    }
}
