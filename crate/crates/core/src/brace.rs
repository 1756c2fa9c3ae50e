//! Skew braces and their set-theoretic solutions of the Yang-Baxter equation.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::group::{FiniteGroup, GroupError, HomSearch, Subgroup};
use crate::rrb::RrbGroup;

/// Default ceiling on quotient and commutator orders in isoclinism searches.
pub const DEFAULT_ISOCLINISM_BOUND: usize = 16;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BraceError {
    #[error("additive and multiplicative groups have different orders")]
    OrderMismatch,
    #[error("brace identity fails at ({0}, {1}, {2})")]
    BraceIdentityFails(usize, usize, usize),
    #[error("braid relation fails at ({0}, {1}, {2})")]
    BraidFails(usize, usize, usize),
    #[error("degenerate component: {0}")]
    DegenerateComponent(String),
    #[error("subset is not an ideal: {0}")]
    NotIdeal(String),
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// A skew brace on `0..n`: `a o (b c) = (a o b) a^-1 (a o c)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SkewBrace {
    dot: FiniteGroup,
    circle: FiniteGroup,
}

impl SkewBrace {
    pub fn new(dot: FiniteGroup, circle: FiniteGroup) -> Result<Self, BraceError> {
        if dot.order() != circle.order() {
            return Err(BraceError::OrderMismatch);
        }
        let n = dot.order();
        for a in 0..n {
            for b in 0..n {
                let ab = circle.mul(a, b);
                let left = dot.mul(ab, dot.inv(a));
                for c in 0..n {
                    if circle.mul(a, dot.mul(b, c)) != dot.mul(left, circle.mul(a, c)) {
                        return Err(BraceError::BraceIdentityFails(a, b, c));
                    }
                }
            }
        }
        Ok(SkewBrace { dot, circle })
    }

    /// The trivial brace `(A, A)` on a group.
    pub fn trivial(group: FiniteGroup) -> Self {
        SkewBrace { dot: group.clone(), circle: group }
    }

    /// `(H, ., o_R)` induced by an RRB group.
    pub fn from_rrb(rrb: &RrbGroup) -> Self {
        let b = SkewBrace { dot: rrb.h().clone(), circle: rrb.descendent_group() };
        debug_assert!(SkewBrace::new(b.dot.clone(), b.circle.clone()).is_ok());
        b
    }

    pub fn order(&self) -> usize {
        self.dot.order()
    }

    pub fn dot(&self) -> &FiniteGroup {
        &self.dot
    }

    pub fn circle(&self) -> &FiniteGroup {
        &self.circle
    }

    /// `lambda_a(b) = a^-1 (a o b)`.
    pub fn lambda(&self, a: usize, b: usize) -> usize {
        self.dot.mul(self.dot.inv(a), self.circle.mul(a, b))
    }

    /// `[a, b]_. = a b a^-1 b^-1`
    pub fn theta(&self, a: usize, b: usize) -> usize {
        self.dot.commutator(a, b)
    }

    /// `a^-1 (a o b) b^-1`
    pub fn theta_star(&self, a: usize, b: usize) -> usize {
        self.dot.mul(self.lambda(a, b), self.dot.inv(b))
    }

    /// `{a : b o a = a o b = b a = a b for all b}`
    pub fn annihilator(&self) -> Subgroup {
        let n = self.order();
        let members: Vec<usize> = (0..n)
            .filter(|&a| {
                (0..n).all(|b| {
                    let x = self.circle.mul(b, a);
                    x == self.circle.mul(a, b) && x == self.dot.mul(b, a) && x == self.dot.mul(a, b)
                })
            })
            .collect();
        let s = self.dot.subgroup_generated(&members).unwrap();
        debug_assert_eq!(s.order(), members.len());
        s
    }

    /// `<[a, b]_., a^-1 (a o b) b^-1>`
    pub fn commutator(&self) -> Subgroup {
        let n = self.order();
        let mut gens = BTreeSet::new();
        for a in 0..n {
            for b in 0..n {
                gens.insert(self.theta(a, b));
                gens.insert(self.theta_star(a, b));
            }
        }
        self.dot.subgroup_generated(&gens.into_iter().collect::<Vec<_>>()).unwrap()
    }

    /// Quotient by an ideal; labels follow the additive cosets.
    pub fn quotient(&self, ideal: &Subgroup) -> Result<BraceQuotient, BraceError> {
        let q = self.dot.quotient(ideal).map_err(|e| BraceError::NotIdeal(e.to_string()))?;
        let label = &q.projection.images;
        let m = q.group.order();
        let mut table = vec![usize::MAX; m * m];
        for a in 0..self.order() {
            for b in 0..self.order() {
                let v = label[self.circle.mul(a, b)];
                let slot = &mut table[label[a] * m + label[b]];
                if *slot != usize::MAX && *slot != v {
                    return Err(BraceError::NotIdeal(format!("circle product not constant on cosets at ({a}, {b})")));
                }
                *slot = v;
            }
        }
        let circle = FiniteGroup::from_fn(m, "quotient", |i, j| table[i * m + j])?;
        let brace = SkewBrace::new(q.group, circle)?;
        Ok(BraceQuotient { brace, labels: label.clone(), reps: q.reps })
    }

    /// Bijections preserving both operations.
    pub fn is_isomorphism(&self, other: &SkewBrace, map: &[usize]) -> bool {
        let n = self.order();
        if map.len() != n || other.order() != n {
            return false;
        }
        let mut seen = vec![false; n];
        if map.iter().any(|&y| y >= n || std::mem::replace(&mut seen[y], true)) {
            return false;
        }
        self.is_homomorphism(other, map)
    }

    pub fn is_homomorphism(&self, other: &SkewBrace, map: &[usize]) -> bool {
        let n = self.order();
        (0..n).all(|a| {
            (0..n).all(|b| {
                map[self.dot.mul(a, b)] == other.dot.mul(map[a], map[b])
                    && map[self.circle.mul(a, b)] == other.circle.mul(map[a], map[b])
            })
        })
    }

    /// `r(x, y) = (sigma_x(y), tau_y(x))` with `sigma_x(y) = x^-1 (x o y)` and
    /// `tau_y(x) = sigma_x(y)^{-o} o x o y`.
    pub fn ybe_map(&self) -> Result<YbMap, BraceError> {
        let n = self.order();
        let mut pairs = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                let s = self.lambda(x, y);
                let t = self.circle.mul(self.circle.inv(s), self.circle.mul(x, y));
                pairs.push((s, t));
            }
        }
        let map = YbMap { n, pairs };
        map.verify()?;
        Ok(map)
    }
}

#[derive(Clone, Debug)]
pub struct BraceQuotient {
    pub brace: SkewBrace,
    pub labels: Vec<usize>,
    pub reps: Vec<usize>,
}

/// A map `X x X -> X x X`, stored row-major by `(x, y)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct YbMap {
    n: usize,
    pairs: Vec<(usize, usize)>,
}

impl YbMap {
    pub fn new(n: usize, pairs: Vec<(usize, usize)>) -> Self {
        assert_eq!(pairs.len(), n * n, "map must be defined on all pairs");
        YbMap { n, pairs }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn apply(&self, x: usize, y: usize) -> (usize, usize) {
        self.pairs[x * self.n + y]
    }

    /// `(r x id)(id x r)(r x id) = (id x r)(r x id)(id x r)` on every triple.
    pub fn braid_failure(&self) -> Option<(usize, usize, usize)> {
        let n = self.n;
        let r12 = |(a, b, c): (usize, usize, usize)| {
            let (p, q) = self.apply(a, b);
            (p, q, c)
        };
        let r23 = |(a, b, c): (usize, usize, usize)| {
            let (p, q) = self.apply(b, c);
            (a, p, q)
        };
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let t = (x, y, z);
                    if r12(r23(r12(t))) != r23(r12(r23(t))) {
                        return Some(t);
                    }
                }
            }
        }
        None
    }

    pub fn verify(&self) -> Result<(), BraceError> {
        if let Some((x, y, z)) = self.braid_failure() {
            return Err(BraceError::BraidFails(x, y, z));
        }
        let n = self.n;
        let mut seen = vec![false; n * n];
        for &(a, b) in &self.pairs {
            if std::mem::replace(&mut seen[a * n + b], true) {
                return Err(BraceError::DegenerateComponent("r is not bijective".into()));
            }
        }
        for x in 0..n {
            let mut left = vec![false; n];
            let mut right = vec![false; n];
            for y in 0..n {
                if std::mem::replace(&mut left[self.apply(x, y).0], true) {
                    return Err(BraceError::DegenerateComponent(format!("sigma_{x} is not bijective")));
                }
                if std::mem::replace(&mut right[self.apply(y, x).1], true) {
                    return Err(BraceError::DegenerateComponent(format!("tau_{x} is not bijective")));
                }
            }
        }
        Ok(())
    }

    /// Plain-text table, one `x y -> s t` line per pair.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for x in 0..self.n {
            for y in 0..self.n {
                let (s, t) = self.apply(x, y);
                out.push_str(&format!("{x} {y} -> {s} {t}\n"));
            }
        }
        out
    }
}

/// Quotient by the annihilator and the commutator, with the two commutator maps
/// tabulated on coset representatives.
#[derive(Clone, Debug)]
pub struct BraceIsoclinismData {
    pub quotient: BraceQuotient,
    pub commutator: Subgroup,
    pub theta: Vec<usize>,
    pub theta_star: Vec<usize>,
}

impl BraceIsoclinismData {
    pub fn new(b: &SkewBrace) -> Self {
        let quotient = b.quotient(&b.annihilator()).expect("annihilator is an ideal");
        let commutator = b.commutator();
        let m = quotient.brace.order();
        let mut theta = vec![usize::MAX; m * m];
        let mut theta_star = vec![usize::MAX; m * m];
        for x in 0..b.order() {
            for y in 0..b.order() {
                let i = quotient.labels[x] * m + quotient.labels[y];
                for (tab, v) in [(&mut theta, b.theta(x, y)), (&mut theta_star, b.theta_star(x, y))] {
                    assert!(tab[i] == usize::MAX || tab[i] == v, "commutator map depends on representatives");
                    tab[i] = v;
                }
            }
        }
        BraceIsoclinismData { quotient, commutator, theta, theta_star }
    }
}

/// `xi1` acts on labels of the annihilator quotients; `xi2` pairs commutator elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BraceIsoclinismWitness {
    pub xi1: Vec<usize>,
    pub xi2: Vec<(usize, usize)>,
}

#[derive(Clone, Debug)]
pub enum BraceIsoclinism {
    Isoclinic(BraceIsoclinismWitness),
    NotIsoclinic(String),
}

pub fn verify_brace_isoclinism(b1: &SkewBrace, b2: &SkewBrace, w: &BraceIsoclinismWitness) -> Result<(), String> {
    let (d1, d2) = (BraceIsoclinismData::new(b1), BraceIsoclinismData::new(b2));
    if !d1.quotient.brace.is_isomorphism(&d2.quotient.brace, &w.xi1) {
        return Err("xi1 is not an isomorphism of annihilator quotients".into());
    }
    let mut xi2 = vec![usize::MAX; b1.order()];
    for &(a, x) in &w.xi2 {
        xi2[a] = x;
    }
    let c1 = d1.commutator.elements();
    if w.xi2.len() != c1.len() || c1.iter().any(|&a| xi2[a] == usize::MAX) {
        return Err("xi2 is not defined on the whole commutator".into());
    }
    let image: BTreeSet<usize> = c1.iter().map(|&a| xi2[a]).collect();
    if image.len() != c1.len() || image.iter().any(|&x| !d2.commutator.contains(x)) || image.len() != d2.commutator.order() {
        return Err("xi2 is not a bijection between commutators".into());
    }
    for &a in c1 {
        for &b in c1 {
            if xi2[b1.dot().mul(a, b)] != b2.dot().mul(xi2[a], xi2[b])
                || xi2[b1.circle().mul(a, b)] != b2.circle().mul(xi2[a], xi2[b])
            {
                return Err(format!("xi2 is not a brace homomorphism at ({a}, {b})"));
            }
        }
    }
    let (m1, m2) = (d1.quotient.brace.order(), d2.quotient.brace.order());
    for x in 0..m1 {
        for y in 0..m1 {
            let (u, v) = (w.xi1[x], w.xi1[y]);
            if xi2[d1.theta[x * m1 + y]] != d2.theta[u * m2 + v] {
                return Err(format!("additive commutator square fails at ({x}, {y})"));
            }
            if xi2[d1.theta_star[x * m1 + y]] != d2.theta_star[u * m2 + v] {
                return Err(format!("brace commutator square fails at ({x}, {y})"));
            }
        }
    }
    Ok(())
}

/// Searches for an isoclinism of skew braces.
pub fn brace_isoclinic(b1: &SkewBrace, b2: &SkewBrace, bound: usize) -> Result<BraceIsoclinism, BraceError> {
    let (d1, d2) = (BraceIsoclinismData::new(b1), BraceIsoclinismData::new(b2));
    let (q1, q2) = (&d1.quotient.brace, &d2.quotient.brace);
    if q1.order() != q2.order() {
        return Ok(BraceIsoclinism::NotIsoclinic("annihilator quotients differ in order".into()));
    }
    if d1.commutator.order() != d2.commutator.order() {
        return Ok(BraceIsoclinism::NotIsoclinic("commutators differ in order".into()));
    }
    if q1.dot().order_profile() != q2.dot().order_profile() || q1.circle().order_profile() != q2.circle().order_profile() {
        return Ok(BraceIsoclinism::NotIsoclinic("annihilator quotients are not isomorphic".into()));
    }
    for size in [q1.order(), d1.commutator.order()] {
        if size > bound {
            return Err(GroupError::SearchBoundExceeded { what: "isoclinism search", size, bound }.into());
        }
    }
    let m = q1.order();
    for xi1 in HomSearch::new(q1.dot(), q2.dot()).bijective().run() {
        if !q1.is_isomorphism(q2, &xi1.images) {
            continue;
        }
        let mut pairs = Vec::new();
        for x in 0..m {
            for y in 0..m {
                let (u, v) = (xi1.images[x], xi1.images[y]);
                pairs.push((d1.theta[x * m + y], d2.theta[u * m + v]));
                pairs.push((d1.theta_star[x * m + y], d2.theta_star[u * m + v]));
            }
        }
        let Some(map) = b1.dot().close_partial_map(b2.dot(), &pairs) else { continue };
        let xi2: Vec<(usize, usize)> = d1.commutator.elements().iter().map(|&a| (a, map[a].expect("generated"))).collect();
        let w = BraceIsoclinismWitness { xi1: xi1.images.clone(), xi2 };
        if verify_brace_isoclinism(b1, b2, &w).is_ok() {
            return Ok(BraceIsoclinism::Isoclinic(w));
        }
    }
    Ok(BraceIsoclinism::NotIsoclinic("no isomorphism pair makes both squares commute".into()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_abelian_brace_gives_flip() {
        let b = SkewBrace::trivial(FiniteGroup::cyclic(4));
        let r = b.ybe_map().unwrap();
        for x in 0..4 {
            for y in 0..4 {
                assert_eq!(r.apply(x, y), (y, x));
            }
        }
    }

    #[test]
    fn trivial_s3_brace_is_conjugation() {
        let s3 = FiniteGroup::symmetric(3);
        let r = SkewBrace::trivial(s3.clone()).ybe_map().unwrap();
        for x in 0..6 {
            for y in 0..6 {
                assert_eq!(r.apply(x, y), (y, s3.mul(s3.mul(s3.inv(y), x), y)));
            }
        }
    }

    #[test]
    fn broken_map_is_rejected() {
        // constant first component is degenerate
        let pairs = (0..4).flat_map(|x| (0..4).map(move |_| (0, x))).collect();
        assert!(YbMap::new(4, pairs).verify().is_err());
    }

    #[test]
    fn isoclinism_of_trivial_braces() {
        let z2 = SkewBrace::trivial(FiniteGroup::cyclic(2));
        let z4 = SkewBrace::trivial(FiniteGroup::cyclic(4));
        assert!(matches!(brace_isoclinic(&z2, &z4, 16).unwrap(), BraceIsoclinism::Isoclinic(_)));
        let s3 = SkewBrace::trivial(FiniteGroup::symmetric(3));
        assert!(matches!(brace_isoclinic(&z2, &s3, 16).unwrap(), BraceIsoclinism::NotIsoclinic(_)));
    }

    #[test]
    fn annihilator_and_commutator_are_ideals() {
        let s3 = FiniteGroup::symmetric(3);
        let conj: Vec<Vec<usize>> = (0..6).map(|g| (0..6).map(|x| s3.conj(g, x)).collect()).collect();
        for op in crate::rrb::enumerate_operators(&s3, &s3, &conj, 8).unwrap() {
            let b = SkewBrace::from_rrb(&op);
            assert!(b.quotient(&b.annihilator()).is_ok());
            assert!(b.quotient(&b.commutator()).is_ok());
            b.ybe_map().unwrap();
        }
    }
}
