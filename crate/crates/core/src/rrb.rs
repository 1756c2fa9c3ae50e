//! Relative Rota-Baxter groups `(H, G, phi, R)`.
//!
//! `phi: G -> Aut(H)` is an action and `R: H -> G` satisfies
//! `R(h1) R(h2) = R(h1 phi_{R(h1)}(h2))`.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::group::{FiniteGroup, GroupError, GroupHom, HomSearch, Subgroup};

/// Default ceiling on `|H|` and `|G|` for operator enumeration.
pub const DEFAULT_OPERATOR_BOUND: usize = 8;

const UNSET: usize = usize::MAX;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RrbError {
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("phi({g}) is not an automorphism: {detail}")]
    PhiNotAutomorphism { g: usize, detail: String },
    #[error("phi is not an action: phi({g1}*{g2}) != phi({g1}) o phi({g2})")]
    PhiNotAction { g1: usize, g2: usize },
    #[error("Rota-Baxter identity fails at ({h1}, {h2})")]
    RbIdentityFails { h1: usize, h2: usize },
    #[error("not an ideal: {0}")]
    NotIdeal(IdealViolation),
    #[error("not an RRB subgroup: {0}")]
    NotSubgroup(String),
    #[error("homomorphism compatibility fails: {0}")]
    CompatibilityFails(String),
    #[error(transparent)]
    Group(#[from] GroupError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IdealViolation {
    KNotNormal { element: usize, by: usize },
    LNotNormal { element: usize, by: usize },
    NotInvariant { g: usize, k: usize },
    Displacement { l: usize, h: usize },
}

impl std::fmt::Display for IdealViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            IdealViolation::KNotNormal { element, by } => write!(f, "K not normal in H ({element} conjugated by {by})"),
            IdealViolation::LNotNormal { element, by } => write!(f, "L not normal in G ({element} conjugated by {by})"),
            IdealViolation::NotInvariant { g, k } => write!(f, "phi_{g}({k}) leaves K"),
            IdealViolation::Displacement { l, h } => write!(f, "phi_{l}({h}) {h}^-1 leaves K"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RrbGroup {
    h: FiniteGroup,
    g: FiniteGroup,
    phi: Vec<usize>,
    r: Vec<usize>,
}

/// A pair `(K, L)` with `K <= H`, `L <= G`, `R(K) <= L` and `phi_L(K) <= K`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RrbSubgroup {
    pub k: Subgroup,
    pub l: Subgroup,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RrbHom {
    pub psi: GroupHom,
    pub eta: GroupHom,
}

#[derive(Clone, Debug)]
pub struct RrbQuotient {
    pub group: RrbGroup,
    pub projection: RrbHom,
    pub h_reps: Vec<usize>,
    pub g_reps: Vec<usize>,
}

impl RrbGroup {
    /// Validates `(H, G, phi, R)`. `phi` has one row per element of `G`.
    pub fn new(h: FiniteGroup, g: FiniteGroup, phi: Vec<Vec<usize>>, r: Vec<usize>) -> Result<Self, RrbError> {
        let (nh, ng) = (h.order(), g.order());
        if phi.len() != ng {
            return Err(RrbError::Shape(format!("phi has {} rows, |G| = {ng}", phi.len())));
        }
        if let Some(row) = phi.iter().position(|row| row.len() != nh) {
            return Err(RrbError::Shape(format!("phi row {row} has {} entries, |H| = {nh}", phi[row].len())));
        }
        if r.len() != nh {
            return Err(RrbError::Shape(format!("R has {} entries, |H| = {nh}", r.len())));
        }
        if let Some(&x) = phi.iter().flatten().find(|&&x| x >= nh) {
            return Err(RrbError::Shape(format!("phi value {x} out of range")));
        }
        if let Some(&x) = r.iter().find(|&&x| x >= ng) {
            return Err(RrbError::Shape(format!("R value {x} out of range")));
        }
        for (gi, row) in phi.iter().enumerate() {
            let mut seen = vec![false; nh];
            for &y in row {
                if seen[y] {
                    return Err(RrbError::PhiNotAutomorphism { g: gi, detail: format!("value {y} repeated") });
                }
                seen[y] = true;
            }
            for a in 0..nh {
                for b in 0..nh {
                    if row[h.mul(a, b)] != h.mul(row[a], row[b]) {
                        return Err(RrbError::PhiNotAutomorphism {
                            g: gi,
                            detail: format!("not multiplicative at ({a}, {b})"),
                        });
                    }
                }
            }
        }
        for g1 in 0..ng {
            for g2 in 0..ng {
                let prod = &phi[g.mul(g1, g2)];
                if (0..nh).any(|x| prod[x] != phi[g1][phi[g2][x]]) {
                    return Err(RrbError::PhiNotAction { g1, g2 });
                }
            }
        }
        if (0..nh).any(|x| phi[0][x] != x) {
            return Err(RrbError::PhiNotAction { g1: 0, g2: 0 });
        }
        for h1 in 0..nh {
            for h2 in 0..nh {
                let lhs = g.mul(r[h1], r[h2]);
                let rhs = r[h.mul(h1, phi[r[h1]][h2])];
                if lhs != rhs {
                    return Err(RrbError::RbIdentityFails { h1, h2 });
                }
            }
        }
        Ok(RrbGroup { phi: phi.into_iter().flatten().collect(), h, g, r })
    }

    /// The trivial structure `(H, G, trivial action, R)` for a homomorphism `R`.
    pub fn trivial_action(h: FiniteGroup, g: FiniteGroup, r: Vec<usize>) -> Result<Self, RrbError> {
        let phi = vec![(0..h.order()).collect::<Vec<_>>(); g.order()];
        Self::new(h, g, phi, r)
    }

    /// `(H, H, trivial action, id)`.
    pub fn identity_on(h: FiniteGroup) -> Self {
        let r = (0..h.order()).collect();
        Self::trivial_action(h.clone(), h, r).expect("identity is a Rota-Baxter operator for the trivial action")
    }

    pub fn h(&self) -> &FiniteGroup {
        &self.h
    }

    pub fn g(&self) -> &FiniteGroup {
        &self.g
    }

    #[inline]
    pub fn phi(&self, g: usize, x: usize) -> usize {
        self.phi[g * self.h.order() + x]
    }

    #[inline]
    pub fn r(&self, x: usize) -> usize {
        self.r[x]
    }

    pub fn r_map(&self) -> &[usize] {
        &self.r
    }

    pub fn phi_rows(&self) -> Vec<Vec<usize>> {
        self.phi.chunks(self.h.order()).map(|c| c.to_vec()).collect()
    }

    /// Descendent product `a o b = a phi_{R(a)}(b)`.
    #[inline]
    pub fn circle(&self, a: usize, b: usize) -> usize {
        self.h.mul(a, self.phi(self.r[a], b))
    }

    pub fn is_bijective(&self) -> bool {
        self.h.order() == self.g.order() && {
            let mut seen = vec![false; self.g.order()];
            self.r.iter().all(|&y| !std::mem::replace(&mut seen[y], true))
        }
    }

    pub fn has_trivial_action(&self) -> bool {
        (0..self.g.order()).all(|g| (0..self.h.order()).all(|x| self.phi(g, x) == x))
    }

    pub fn descendent_group(&self) -> FiniteGroup {
        FiniteGroup::from_fn(self.h.order(), format!("{}_R", self.h.name()), |a, b| self.circle(a, b))
            .expect("descendent operation of a Rota-Baxter operator is a group")
    }

    pub fn image_of_r(&self) -> Subgroup {
        self.g.subgroup_generated(&self.r).expect("R values are in range")
    }

    pub fn kernel_of_phi(&self) -> Subgroup {
        let nh = self.h.order();
        let members: Vec<usize> = (0..self.g.order()).filter(|&g| (0..nh).all(|x| self.phi(g, x) == x)).collect();
        self.g.subgroup_generated(&members).unwrap()
    }

    pub fn subgroup(&self, k: Subgroup, l: Subgroup) -> Result<RrbSubgroup, RrbError> {
        if k.parent_order() != self.h.order() || l.parent_order() != self.g.order() {
            return Err(RrbError::NotSubgroup("subgroups belong to groups of different order".into()));
        }
        if let Some(&x) = k.elements().iter().find(|&&x| !l.contains(self.r[x])) {
            return Err(RrbError::NotSubgroup(format!("R({x}) not in L")));
        }
        for &g in l.elements() {
            if let Some(&x) = k.elements().iter().find(|&&x| !k.contains(self.phi(g, x))) {
                return Err(RrbError::NotSubgroup(format!("phi_{g}({x}) not in K")));
            }
        }
        Ok(RrbSubgroup { k, l })
    }

    /// `(Z(H) cap ker(phi R) cap Fix(phi), ker phi)`.
    pub fn center(&self) -> RrbSubgroup {
        let (nh, ng) = (self.h.order(), self.g.order());
        let zh = self.h.center();
        let members: Vec<usize> = zh
            .elements()
            .iter()
            .copied()
            .filter(|&a| (0..nh).all(|x| self.phi(self.r[a], x) == x))
            .filter(|&a| (0..ng).all(|g| self.phi(g, a) == a))
            .collect();
        let k = self.h.subgroup_generated(&members).unwrap();
        debug_assert_eq!(k.order(), members.len());
        let sub = RrbSubgroup { k, l: self.kernel_of_phi() };
        debug_assert!(self.ideal_violation(&sub).is_none());
        sub
    }

    /// `H^phi = <[x, y], phi_g(h) h^-1>`, paired with all of `G`.
    pub fn commutator(&self) -> RrbSubgroup {
        let (nh, ng) = (self.h.order(), self.g.order());
        let mut gens = BTreeSet::new();
        for x in 0..nh {
            for y in 0..nh {
                gens.insert(self.h.commutator(x, y));
            }
            for g in 0..ng {
                gens.insert(self.h.mul(self.phi(g, x), self.h.inv(x)));
            }
        }
        let gens: Vec<usize> = gens.into_iter().collect();
        RrbSubgroup { k: self.h.subgroup_generated(&gens).unwrap(), l: self.g.whole() }
    }

    /// First violated ideal condition, if any.
    pub fn ideal_violation(&self, sub: &RrbSubgroup) -> Option<IdealViolation> {
        if let Some((element, by)) = self.h.normality_witness(&sub.k) {
            return Some(IdealViolation::KNotNormal { element, by });
        }
        if let Some((element, by)) = self.g.normality_witness(&sub.l) {
            return Some(IdealViolation::LNotNormal { element, by });
        }
        for g in 0..self.g.order() {
            for &k in sub.k.elements() {
                if !sub.k.contains(self.phi(g, k)) {
                    return Some(IdealViolation::NotInvariant { g, k });
                }
            }
        }
        for &l in sub.l.elements() {
            for h in 0..self.h.order() {
                if !sub.k.contains(self.h.mul(self.phi(l, h), self.h.inv(h))) {
                    return Some(IdealViolation::Displacement { l, h });
                }
            }
        }
        None
    }

    pub fn is_ideal(&self, sub: &RrbSubgroup) -> bool {
        self.ideal_violation(sub).is_none()
    }

    pub fn quotient(&self, ideal: &RrbSubgroup) -> Result<RrbQuotient, RrbError> {
        if let Some(v) = self.ideal_violation(ideal) {
            return Err(RrbError::NotIdeal(v));
        }
        let qh = self.h.quotient(&ideal.k)?;
        let qg = self.g.quotient(&ideal.l)?;
        let (ph, pg) = (&qh.projection, &qg.projection);
        // well-definedness over every representative
        let mut phi = vec![vec![UNSET; qh.group.order()]; qg.group.order()];
        for g in 0..self.g.order() {
            for x in 0..self.h.order() {
                let v = ph.apply(self.phi(g, x));
                let slot = &mut phi[pg.apply(g)][ph.apply(x)];
                assert!(*slot == UNSET || *slot == v, "induced action is not well defined");
                *slot = v;
            }
        }
        let mut r = vec![UNSET; qh.group.order()];
        for x in 0..self.h.order() {
            let v = pg.apply(self.r[x]);
            assert!(r[ph.apply(x)] == UNSET || r[ph.apply(x)] == v, "induced operator is not well defined");
            r[ph.apply(x)] = v;
        }
        let group = RrbGroup::new(qh.group.clone(), qg.group.clone(), phi, r)
            .expect("quotient of an RRB group by an ideal is an RRB group");
        let projection = RrbHom { psi: qh.projection.clone(), eta: qg.projection.clone() };
        debug_assert!(verify_rrb_hom(self, &group, &projection).is_ok());
        Ok(RrbQuotient { group, projection, h_reps: qh.reps, g_reps: qg.reps })
    }

    /// The RRB group obtained by restricting to the subgroups `sub`.
    pub fn restrict(&self, sub: &RrbSubgroup) -> (RrbGroup, Vec<usize>, Vec<usize>) {
        let (h, he) = self.h.subgroup_as_group(&sub.k);
        let (g, ge) = self.g.subgroup_as_group(&sub.l);
        let mut hpos = vec![UNSET; self.h.order()];
        for (i, &x) in he.iter().enumerate() {
            hpos[x] = i;
        }
        let mut gpos = vec![UNSET; self.g.order()];
        for (i, &x) in ge.iter().enumerate() {
            gpos[x] = i;
        }
        let phi = ge.iter().map(|&g| he.iter().map(|&x| hpos[self.phi(g, x)]).collect()).collect();
        let r = he.iter().map(|&x| gpos[self.r[x]]).collect();
        let rrb = RrbGroup::new(h, g, phi, r).expect("RRB subgroup restricts to an RRB group");
        (rrb, he, ge)
    }

    /// `(H, R(H), phi restricted, R)`, with the embedding of `R(H)` into `G`.
    pub fn iota(&self) -> (RrbGroup, Vec<usize>) {
        let sub = RrbSubgroup { k: self.h.whole(), l: self.image_of_r() };
        let (rrb, _, ge) = self.restrict(&sub);
        (rrb, ge)
    }

    pub fn name(&self) -> String {
        format!("({}, {})", self.h.name(), self.g.name())
    }
}

pub fn verify_rrb_hom(src: &RrbGroup, dst: &RrbGroup, hom: &RrbHom) -> Result<(), RrbError> {
    GroupHom::checked(src.h(), dst.h(), hom.psi.images.clone())?;
    GroupHom::checked(src.g(), dst.g(), hom.eta.images.clone())?;
    for x in 0..src.h().order() {
        if hom.eta.apply(src.r(x)) != dst.r(hom.psi.apply(x)) {
            return Err(RrbError::CompatibilityFails(format!("eta(R({x})) != S(psi({x}))")));
        }
    }
    for g in 0..src.g().order() {
        for x in 0..src.h().order() {
            if hom.psi.apply(src.phi(g, x)) != dst.phi(hom.eta.apply(g), hom.psi.apply(x)) {
                return Err(RrbError::CompatibilityFails(format!("psi(phi_{g}({x})) != phi'_eta({g})(psi({x}))")));
            }
        }
    }
    Ok(())
}

/// `(ker psi, ker eta)`, which is an ideal.
pub fn hom_kernel(src: &RrbGroup, hom: &RrbHom) -> RrbSubgroup {
    let sub = RrbSubgroup { k: hom.psi.kernel(), l: hom.eta.kernel() };
    assert!(src.is_ideal(&sub), "kernel of an RRB homomorphism is an ideal");
    sub
}

pub fn hom_image(dst: &RrbGroup, hom: &RrbHom) -> RrbSubgroup {
    dst.subgroup(hom.psi.image(dst.h()), hom.eta.image(dst.g())).expect("image of an RRB homomorphism is an RRB subgroup")
}

pub fn compose_homs(second: &RrbHom, first: &RrbHom) -> RrbHom {
    RrbHom { psi: second.psi.compose(&first.psi), eta: second.eta.compose(&first.eta) }
}

/// All RRB homomorphisms `src -> dst`, sorted.
pub fn rrb_homs(src: &RrbGroup, dst: &RrbGroup, bound: usize) -> Result<Vec<RrbHom>, RrbError> {
    let mut out = Vec::new();
    for psi in src.h().homs_to_bounded(dst.h(), bound)? {
        let forced: Vec<(usize, usize)> = (0..src.h().order()).map(|x| (src.r(x), dst.r(psi.apply(x)))).collect();
        if forced.iter().any(|&(a, b)| forced.iter().any(|&(c, d)| a == c && b != d)) {
            continue;
        }
        if src.g().order() > bound {
            return Err(GroupError::SearchBoundExceeded { what: "hom domain", size: src.g().order(), bound }.into());
        }
        for eta in HomSearch::new(src.g(), dst.g()).fix_all(forced.iter().copied()).run() {
            let hom = RrbHom { psi: psi.clone(), eta };
            if verify_rrb_hom(src, dst, &hom).is_ok() {
                out.push(hom);
            }
        }
    }
    out.sort();
    Ok(out)
}

/// All RRB isomorphisms `src -> dst`, up to `limit` of them.
pub fn rrb_isomorphisms(src: &RrbGroup, dst: &RrbGroup, bound: usize, limit: Option<usize>) -> Result<Vec<RrbHom>, RrbError> {
    let mut out = Vec::new();
    if src.h().order() != dst.h().order() || src.g().order() != dst.g().order() {
        return Ok(out);
    }
    for psi in src.h().isomorphisms_to(dst.h(), bound)? {
        let forced: Vec<(usize, usize)> = (0..src.h().order()).map(|x| (src.r(x), dst.r(psi.apply(x)))).collect();
        if src.g().order() > bound {
            return Err(GroupError::SearchBoundExceeded { what: "hom domain", size: src.g().order(), bound }.into());
        }
        for eta in HomSearch::new(src.g(), dst.g()).bijective().fix_all(forced.iter().copied()).run() {
            let hom = RrbHom { psi: psi.clone(), eta };
            if verify_rrb_hom(src, dst, &hom).is_ok() {
                out.push(hom);
                if limit.is_some_and(|l| out.len() >= l) {
                    return Ok(out);
                }
            }
        }
    }
    Ok(out)
}

/// All actions `G -> Aut(H)`, as `phi` row tables, sorted.
pub fn actions(h: &FiniteGroup, g: &FiniteGroup) -> Result<Vec<Vec<Vec<usize>>>, RrbError> {
    let (aut, auts) = h.automorphism_group()?;
    let mut out: Vec<Vec<Vec<usize>>> = g
        .homs_to_bounded(&aut, usize::MAX)?
        .into_iter()
        .map(|hom| hom.images.iter().map(|&i| auts[i].images.clone()).collect())
        .collect();
    out.sort();
    Ok(out)
}

/// All relative Rota-Baxter operators for the action `phi`, sorted by `R`.
pub fn enumerate_operators(
    h: &FiniteGroup,
    g: &FiniteGroup,
    phi: &[Vec<usize>],
    bound: usize,
) -> Result<Vec<RrbGroup>, RrbError> {
    for (what, size) in [("|H|", h.order()), ("|G|", g.order())] {
        if size > bound {
            return Err(GroupError::SearchBoundExceeded { what, size, bound }.into());
        }
    }
    // validate the action with the zero operator
    RrbGroup::new(h.clone(), g.clone(), phi.to_vec(), vec![0; h.order()])?;
    let mut found = Vec::new();
    let mut r = vec![UNSET; h.order()];
    r[0] = 0;
    search_operators(h, g, phi, &mut r, &mut found);
    found.sort();
    Ok(found
        .into_iter()
        .map(|r| RrbGroup::new(h.clone(), g.clone(), phi.to_vec(), r).expect("search only yields operators"))
        .collect())
}

/// Applies all forced values; returns false on a contradiction.
fn propagate(h: &FiniteGroup, g: &FiniteGroup, phi: &[Vec<usize>], r: &mut [usize]) -> bool {
    let n = h.order();
    loop {
        let mut changed = false;
        for a in 0..n {
            if r[a] == UNSET {
                continue;
            }
            for b in 0..n {
                if r[b] == UNSET {
                    continue;
                }
                let t = h.mul(a, phi[r[a]][b]);
                let v = g.mul(r[a], r[b]);
                if r[t] == UNSET {
                    r[t] = v;
                    changed = true;
                } else if r[t] != v {
                    return false;
                }
            }
        }
        if !changed {
            return true;
        }
    }
}

fn search_operators(h: &FiniteGroup, g: &FiniteGroup, phi: &[Vec<usize>], r: &mut [usize], out: &mut Vec<Vec<usize>>) {
    if !propagate(h, g, phi, r) {
        return;
    }
    let Some(next) = r.iter().position(|&x| x == UNSET) else {
        out.push(r.to_vec());
        return;
    };
    for v in 0..g.order() {
        let mut trial = r.to_vec();
        trial[next] = v;
        search_operators(h, g, phi, &mut trial, out);
    }
}

impl PartialOrd for RrbGroup {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for RrbGroup {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.h.order(), self.g.order(), &self.phi, &self.r).cmp(&(other.h.order(), other.g.order(), &other.phi, &other.r))
    }
}
