//! Isoclinism and weak isoclinism of RRB groups.
//!
//! Both relations compare the quotients by the centre and the H-parts of the
//! commutators through the pairings `w(x, y) = x y x^-1 y^-1` and
//! `w_phi(x, y) = phi_{R(x)}(y) y^-1` on the central quotient.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::brace::{verify_brace_isoclinism, BraceIsoclinismWitness, SkewBrace};
use crate::group::{FiniteGroup, GroupError, HomSearch, Subgroup};
use crate::rrb::{rrb_isomorphisms, verify_rrb_hom, RrbError, RrbGroup, RrbHom, RrbQuotient};

pub use crate::brace::DEFAULT_ISOCLINISM_BOUND;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum IsoclinismError {
    #[error("witness fails verification: {0}")]
    WitnessInvalid(String),
    #[error(transparent)]
    Rrb(#[from] RrbError),
    #[error(transparent)]
    Group(#[from] GroupError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    /// `(psi2, eta2)` an RRB isomorphism of the commutators
    Strict,
    /// `psi2` a group isomorphism and `(psi2, eta2)` an RRB homomorphism
    /// between the commutators with G-parts cut down to the image of the operator
    Weak,
}

/// The central quotient with the two pairings tabulated on its labels.
#[derive(Clone, Debug)]
pub struct OmegaTables {
    pub quotient: RrbQuotient,
    pub omega: Vec<usize>,
    pub omega_phi: Vec<usize>,
}

impl OmegaTables {
    pub fn size(&self) -> usize {
        self.quotient.group.h().order()
    }

    pub fn omega(&self, x: usize, y: usize) -> usize {
        self.omega[x * self.size() + y]
    }

    pub fn omega_phi(&self, x: usize, y: usize) -> usize {
        self.omega_phi[x * self.size() + y]
    }
}

fn omega_value(r: &RrbGroup, x: usize, y: usize) -> usize {
    r.h().commutator(x, y)
}

fn omega_phi_value(r: &RrbGroup, x: usize, y: usize) -> usize {
    r.h().mul(r.phi(r.r(x), y), r.h().inv(y))
}

/// Panics if either pairing depends on the coset representatives.
pub fn omega_tables(r: &RrbGroup) -> OmegaTables {
    let quotient = r.quotient(&r.center()).expect("the centre is an ideal");
    let m = quotient.group.h().order();
    let label = &quotient.projection.psi.images;
    let mut omega = vec![usize::MAX; m * m];
    let mut omega_phi = vec![usize::MAX; m * m];
    let n = r.h().order();
    for x in 0..n {
        for y in 0..n {
            let i = label[x] * m + label[y];
            for (tab, v) in [(&mut omega, omega_value(r, x, y)), (&mut omega_phi, omega_phi_value(r, x, y))] {
                assert!(tab[i] == usize::MAX || tab[i] == v, "pairing depends on coset representatives");
                tab[i] = v;
            }
        }
    }
    OmegaTables { quotient, omega, omega_phi }
}

/// Maps are stored as `(x, image)` pairs over the domain in increasing order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsoclinismWitness {
    /// labels of the central quotients, H-part
    pub psi1: Vec<usize>,
    /// labels of the central quotients, G-part
    pub eta1: Vec<usize>,
    pub psi2: Vec<(usize, usize)>,
    pub eta2: Vec<(usize, usize)>,
}

#[derive(Clone, Debug)]
pub enum Verdict {
    Related(IsoclinismWitness),
    NotRelated(String),
    /// a search bound was exceeded; nothing is claimed
    Unknown(String),
}

impl Verdict {
    pub fn witness(&self) -> Option<&IsoclinismWitness> {
        match self {
            Verdict::Related(w) => Some(w),
            _ => None,
        }
    }
}

fn lookup(pairs: &[(usize, usize)], n: usize) -> Vec<usize> {
    let mut m = vec![usize::MAX; n];
    for &(x, y) in pairs {
        m[x] = y;
    }
    m
}

fn image_of_r_on(r: &RrbGroup, sub: &Subgroup) -> Subgroup {
    let vals: Vec<usize> = sub.elements().iter().map(|&x| r.r(x)).collect();
    r.g().subgroup_generated(&vals).expect("R values are in range")
}

fn intersection(g: &FiniteGroup, a: &Subgroup, b: &Subgroup) -> Subgroup {
    let common: Vec<usize> = a.elements().iter().copied().filter(|&x| b.contains(x)).collect();
    g.subgroup_generated(&common).expect("elements are in range")
}

fn subgroup_quotient(g: &FiniteGroup, sub: &Subgroup, normal: &Subgroup) -> FiniteGroup {
    let (sg, emb) = g.subgroup_as_group(sub);
    let inner: Vec<usize> = emb.iter().enumerate().filter(|(_, &x)| normal.contains(x)).map(|(i, _)| i).collect();
    let inner = sg.subgroup_generated(&inner).expect("indices are in range");
    sg.quotient(&inner).expect("normal subgroup").group
}

fn displacement_subgroup(r: &RrbGroup) -> Subgroup {
    let n = r.h().order();
    let vals: BTreeSet<usize> = (0..n).flat_map(|x| (0..n).map(move |y| (x, y))).map(|(x, y)| omega_phi_value(r, x, y)).collect();
    r.h().subgroup_generated(&vals.into_iter().collect::<Vec<_>>()).expect("in range")
}

/// Invariants that isoclinic (and weakly isoclinic) pairs share.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SharedInvariants {
    /// `im R / (im R cap ker phi)`
    pub image_quotients: bool,
    /// the subgroups generated by the values of `w_phi`
    pub displacements: bool,
    /// H-parts of the central quotients of the images under `iota`
    pub iota_quotients: bool,
}

impl SharedInvariants {
    pub fn all(&self) -> bool {
        self.image_quotients && self.displacements && self.iota_quotients
    }
}

pub fn shared_invariants(r1: &RrbGroup, r2: &RrbGroup) -> SharedInvariants {
    let iq = |r: &RrbGroup| {
        let im = r.image_of_r();
        subgroup_quotient(r.g(), &im, &intersection(r.g(), &im, &r.kernel_of_phi()))
    };
    let disp = |r: &RrbGroup| r.h().subgroup_as_group(&displacement_subgroup(r)).0;
    let zq = |r: &RrbGroup| {
        let i = r.iota().0;
        i.h().quotient(&i.center().k).expect("centre is normal").group
    };
    SharedInvariants {
        image_quotients: iq(r1).is_isomorphic(&iq(r2)),
        displacements: disp(r1).is_isomorphic(&disp(r2)),
        iota_quotients: zq(r1).is_isomorphic(&zq(r2)),
    }
}

fn obstruction(r1: &RrbGroup, t1: &OmegaTables, r2: &RrbGroup, t2: &OmegaTables, mode: Mode) -> Option<String> {
    let (q1, q2) = (&t1.quotient.group, &t2.quotient.group);
    let (c1, c2) = (r1.commutator().k, r2.commutator().k);
    if q1.h().order() != q2.h().order() || q1.g().order() != q2.g().order() {
        return Some("central quotients differ in order".into());
    }
    if c1.order() != c2.order() {
        return Some(format!("commutators have orders {} and {}", c1.order(), c2.order()));
    }
    if q1.h().order_profile() != q2.h().order_profile() || q1.g().order_profile() != q2.g().order_profile() {
        return Some("central quotients have different element orders".into());
    }
    let p1 = r1.h().subgroup_as_group(&c1).0.order_profile();
    if p1 != r2.h().subgroup_as_group(&c2).0.order_profile() {
        return Some("commutators have different element orders".into());
    }
    if mode == Mode::Strict && r1.g().order_profile() != r2.g().order_profile() {
        return Some("commutator G-parts are not isomorphic".into());
    }
    let s = shared_invariants(r1, r2);
    if !s.all() {
        return Some(format!("shared invariants differ: {s:?}"));
    }
    None
}

/// `psi2` as a map on `H1` indices, from the pairs forced by the pairings.
fn candidate_psi2(
    r1: &RrbGroup,
    r2: &RrbGroup,
    t1: &OmegaTables,
    t2: &OmegaTables,
    psi1: &[usize],
    c1: &Subgroup,
    c2: &Subgroup,
) -> Vec<Vec<usize>> {
    let m = t1.size();
    let mut pairs = Vec::new();
    for x in 0..m {
        for y in 0..m {
            pairs.push((t1.omega(x, y), t2.omega(psi1[x], psi1[y])));
            pairs.push((t1.omega_phi(x, y), t2.omega_phi(psi1[x], psi1[y])));
        }
    }
    let Some(closed) = r1.h().close_partial_map(r2.h(), &pairs) else { return Vec::new() };
    let (g1, e1) = r1.h().subgroup_as_group(c1);
    let (g2, e2) = r2.h().subgroup_as_group(c2);
    let mut pos2 = vec![usize::MAX; r2.h().order()];
    for (i, &x) in e2.iter().enumerate() {
        pos2[x] = i;
    }
    let mut fixed = Vec::new();
    for (i, &x) in e1.iter().enumerate() {
        if let Some(y) = closed[x] {
            if pos2[y] == usize::MAX {
                return Vec::new();
            }
            fixed.push((i, pos2[y]));
        }
    }
    HomSearch::new(&g1, &g2)
        .bijective()
        .fix_all(fixed.iter().copied())
        .run()
        .into_iter()
        .filter(|h| fixed.iter().all(|&(i, j)| h.apply(i) == j))
        .map(|h| {
            let mut full = vec![usize::MAX; r1.h().order()];
            for (i, &x) in e1.iter().enumerate() {
                full[x] = e2[h.apply(i)];
            }
            full
        })
        .collect()
}

/// `eta2` for a given `psi2`, or `None`.
fn candidate_eta2(r1: &RrbGroup, r2: &RrbGroup, c1: &Subgroup, psi2: &[usize], mode: Mode) -> Option<Vec<(usize, usize)>> {
    let forced: Vec<(usize, usize)> = c1.elements().iter().map(|&x| (r1.r(x), r2.r(psi2[x]))).collect();
    let compatible = |eta: &[usize], dom: &[usize]| {
        dom.iter().all(|&g| c1.elements().iter().all(|&x| psi2[r1.phi(g, x)] == r2.phi(eta[g], psi2[x])))
    };
    match mode {
        Mode::Strict => {
            let closed = r1.g().close_partial_map(r2.g(), &forced)?;
            let fixed: Vec<(usize, usize)> =
                closed.iter().enumerate().filter_map(|(g, v)| v.map(|y| (g, y))).collect();
            let dom: Vec<usize> = (0..r1.g().order()).collect();
            HomSearch::new(r1.g(), r2.g())
                .bijective()
                .fix_all(fixed.iter().copied())
                .run()
                .into_iter()
                .filter(|h| fixed.iter().all(|&(g, y)| h.apply(g) == y))
                .find(|h| compatible(&h.images, &dom))
                .map(|h| h.images.into_iter().enumerate().collect())
        }
        Mode::Weak => {
            // the domain R1(H1') is generated by the forced values, so eta2 is determined
            let closed = r1.g().close_partial_map(r2.g(), &forced)?;
            let dom = image_of_r_on(r1, c1);
            let eta: Vec<usize> = closed.iter().map(|v| v.unwrap_or(usize::MAX)).collect();
            if dom.elements().iter().any(|&g| eta[g] == usize::MAX) {
                return None;
            }
            compatible(&eta, dom.elements()).then(|| dom.elements().iter().map(|&g| (g, eta[g])).collect())
        }
    }
}

fn search(r1: &RrbGroup, r2: &RrbGroup, bound: usize, mode: Mode) -> Result<Verdict, IsoclinismError> {
    let (t1, t2) = (omega_tables(r1), omega_tables(r2));
    if let Some(reason) = obstruction(r1, &t1, r2, &t2, mode) {
        return Ok(Verdict::NotRelated(reason));
    }
    let (c1, c2) = (r1.commutator().k, r2.commutator().k);
    let q1 = &t1.quotient.group;
    for (what, size) in [("central quotient", q1.h().order().max(q1.g().order())), ("commutator", c1.order())] {
        if size > bound {
            return Ok(Verdict::Unknown(format!("{what} of order {size} exceeds the bound {bound}")));
        }
    }
    if mode == Mode::Strict && r1.g().order() > bound {
        return Ok(Verdict::Unknown(format!("G-part of order {} exceeds the bound {bound}", r1.g().order())));
    }
    let mut isos = rrb_isomorphisms(q1, &t2.quotient.group, usize::MAX, None)?;
    isos.sort();
    for iso in isos {
        for psi2 in candidate_psi2(r1, r2, &t1, &t2, &iso.psi.images, &c1, &c2) {
            if let Some(eta2) = candidate_eta2(r1, r2, &c1, &psi2, mode) {
                let w = IsoclinismWitness {
                    psi1: iso.psi.images.clone(),
                    eta1: iso.eta.images.clone(),
                    psi2: c1.elements().iter().map(|&x| (x, psi2[x])).collect(),
                    eta2,
                };
                verify_witness(r1, r2, &w, mode).map_err(IsoclinismError::WitnessInvalid)?;
                return Ok(Verdict::Related(w));
            }
        }
    }
    Ok(Verdict::NotRelated("no pair of quotient and commutator maps makes both squares commute".into()))
}

pub fn are_isoclinic(r1: &RrbGroup, r2: &RrbGroup, bound: usize) -> Result<Verdict, IsoclinismError> {
    search(r1, r2, bound, Mode::Strict)
}

/// Not symmetric in general; the arguments are ordered.
pub fn are_weakly_isoclinic(r1: &RrbGroup, r2: &RrbGroup, bound: usize) -> Result<Verdict, IsoclinismError> {
    search(r1, r2, bound, Mode::Weak)
}

fn is_bijection_onto(map: &[(usize, usize)], dom: &Subgroup, cod: &Subgroup) -> bool {
    let keys: Vec<usize> = map.iter().map(|p| p.0).collect();
    let vals: BTreeSet<usize> = map.iter().map(|p| p.1).collect();
    keys == dom.elements() && vals.len() == cod.order() && vals.iter().all(|&y| cod.contains(y))
}

/// Checks a witness from scratch: the pairings are evaluated on elements, not
/// read from tables.
pub fn verify_witness(r1: &RrbGroup, r2: &RrbGroup, w: &IsoclinismWitness, mode: Mode) -> Result<(), String> {
    let z1 = r1.quotient(&r1.center()).map_err(|e| e.to_string())?;
    let z2 = r2.quotient(&r2.center()).map_err(|e| e.to_string())?;
    let hom = RrbHom {
        psi: crate::group::GroupHom { images: w.psi1.clone() },
        eta: crate::group::GroupHom { images: w.eta1.clone() },
    };
    if w.psi1.len() != z1.group.h().order() || w.eta1.len() != z1.group.g().order() {
        return Err("quotient maps have the wrong size".into());
    }
    verify_rrb_hom(&z1.group, &z2.group, &hom).map_err(|e| format!("quotient maps: {e}"))?;
    let bij = |v: &[usize], n: usize| v.len() == n && v.iter().collect::<BTreeSet<_>>().len() == n;
    if !bij(&w.psi1, z2.group.h().order()) || !bij(&w.eta1, z2.group.g().order()) {
        return Err("quotient maps are not bijective".into());
    }
    let (c1, c2) = (r1.commutator().k, r2.commutator().k);
    if !is_bijection_onto(&w.psi2, &c1, &c2) {
        return Err("psi2 is not a bijection between commutators".into());
    }
    let psi2 = lookup(&w.psi2, r1.h().order());
    for &a in c1.elements() {
        for &b in c1.elements() {
            if psi2[r1.h().mul(a, b)] != r2.h().mul(psi2[a], psi2[b]) {
                return Err(format!("psi2 is not multiplicative at ({a}, {b})"));
            }
        }
    }
    let lift = |x: usize| z2.h_reps[w.psi1[z1.projection.psi.apply(x)]];
    for x in 0..r1.h().order() {
        for y in 0..r1.h().order() {
            let (u, v) = (lift(x), lift(y));
            if psi2[omega_value(r1, x, y)] != omega_value(r2, u, v) {
                return Err(format!("commutator square fails at ({x}, {y})"));
            }
            if psi2[omega_phi_value(r1, x, y)] != omega_phi_value(r2, u, v) {
                return Err(format!("displacement square fails at ({x}, {y})"));
            }
        }
    }
    let dom = match mode {
        Mode::Strict => r1.g().whole(),
        Mode::Weak => image_of_r_on(r1, &c1),
    };
    let cod = match mode {
        Mode::Strict => r2.g().whole(),
        Mode::Weak => image_of_r_on(r2, &c2),
    };
    let keys: Vec<usize> = w.eta2.iter().map(|p| p.0).collect();
    if keys != dom.elements() || w.eta2.iter().any(|&(_, y)| !cod.contains(y)) {
        return Err("eta2 has the wrong domain or codomain".into());
    }
    if mode == Mode::Strict && !is_bijection_onto(&w.eta2, &dom, &cod) {
        return Err("eta2 is not bijective".into());
    }
    let eta2 = lookup(&w.eta2, r1.g().order());
    for &g in dom.elements() {
        for &h in dom.elements() {
            if eta2[r1.g().mul(g, h)] != r2.g().mul(eta2[g], eta2[h]) {
                return Err(format!("eta2 is not multiplicative at ({g}, {h})"));
            }
        }
        for &x in c1.elements() {
            if psi2[r1.phi(g, x)] != r2.phi(eta2[g], psi2[x]) {
                return Err(format!("action compatibility fails at ({g}, {x})"));
            }
        }
    }
    for &x in c1.elements() {
        if eta2[r1.r(x)] != r2.r(psi2[x]) {
            return Err(format!("operator compatibility fails at {x}"));
        }
    }
    Ok(())
}

/// Restricts a weak-isoclinism witness of `(r1, r2)` to one of their images
/// under `iota`, and verifies it.
pub fn transport_to_iota(r1: &RrbGroup, r2: &RrbGroup, w: &IsoclinismWitness) -> Result<IsoclinismWitness, String> {
    let (i1, ge1) = r1.iota();
    let (i2, ge2) = r2.iota();
    let z1 = r1.quotient(&r1.center()).map_err(|e| e.to_string())?;
    let z2 = r2.quotient(&r2.center()).map_err(|e| e.to_string())?;
    let y1 = i1.quotient(&i1.center()).map_err(|e| e.to_string())?;
    let y2 = i2.quotient(&i2.center()).map_err(|e| e.to_string())?;
    // iota keeps H, so H indices agree; the centre of iota(r) contains that of r
    let mut psi1 = vec![usize::MAX; y1.group.h().order()];
    for x in 0..r1.h().order() {
        let target = y2.projection.psi.apply(z2.h_reps[w.psi1[z1.projection.psi.apply(x)]]);
        let slot = &mut psi1[y1.projection.psi.apply(x)];
        if *slot != usize::MAX && *slot != target {
            return Err("psi1 does not descend to the iota quotients".into());
        }
        *slot = target;
    }
    // G-part: pick a preimage in im(S) of the image coset
    let mut pos2 = vec![usize::MAX; r2.g().order()];
    for (i, &g) in ge2.iter().enumerate() {
        pos2[g] = i;
    }
    let mut eta1 = vec![usize::MAX; y1.group.g().order()];
    for (i, &g) in ge1.iter().enumerate() {
        let coset = w.eta1[z1.projection.eta.apply(g)];
        let Some(&l) = ge2.iter().find(|&&l| z2.projection.eta.apply(l) == coset) else {
            return Err("eta1 does not map the image of R into the image of S".into());
        };
        let target = y2.projection.eta.apply(pos2[l]);
        let slot = &mut eta1[y1.projection.eta.apply(i)];
        if *slot != usize::MAX && *slot != target {
            return Err("eta1 does not descend to the iota quotients".into());
        }
        *slot = target;
    }
    let (c1, c2) = (i1.commutator().k, i2.commutator().k);
    let psi2_full = lookup(&w.psi2, r1.h().order());
    if c1.elements().iter().any(|&x| psi2_full[x] == usize::MAX) {
        return Err("psi2 is not defined on the iota commutator".into());
    }
    let psi2: Vec<(usize, usize)> = c1.elements().iter().map(|&x| (x, psi2_full[x])).collect();
    if !is_bijection_onto(&psi2, &c1, &c2) {
        return Err("psi2 does not restrict to a bijection of iota commutators".into());
    }
    let eta2_full = lookup(&w.eta2, r1.g().order());
    let mut pos1 = vec![usize::MAX; r1.g().order()];
    for (i, &g) in ge1.iter().enumerate() {
        pos1[g] = i;
    }
    let dom = image_of_r_on(&i1, &c1);
    let mut eta2 = Vec::new();
    for &g in dom.elements() {
        let v = eta2_full[ge1[g]];
        if v == usize::MAX || pos2[v] == usize::MAX {
            return Err("eta2 does not restrict to the iota commutators".into());
        }
        eta2.push((g, pos2[v]));
    }
    let out = IsoclinismWitness { psi1, eta1, psi2, eta2 };
    verify_witness(&i1, &i2, &out, Mode::Weak)?;
    Ok(out)
}

/// An isoclinism of the induced skew braces built from a weak-isoclinism
/// witness, checked by the brace module.
pub fn transport_to_braces(r1: &RrbGroup, r2: &RrbGroup, w: &IsoclinismWitness) -> Result<BraceIsoclinismWitness, String> {
    let wi = transport_to_iota(r1, r2, w)?;
    let (i1, _) = r1.iota();
    let (i2, _) = r2.iota();
    let (b1, b2) = (SkewBrace::from_rrb(r1), SkewBrace::from_rrb(r2));
    let a1 = b1.quotient(&b1.annihilator()).map_err(|e| e.to_string())?;
    let a2 = b2.quotient(&b2.annihilator()).map_err(|e| e.to_string())?;
    let y1 = i1.quotient(&i1.center()).map_err(|e| e.to_string())?;
    let y2 = i2.quotient(&i2.center()).map_err(|e| e.to_string())?;
    // the annihilator of the induced brace is the H-part of the centre of iota(r)
    let xi1: Vec<usize> =
        a1.reps.iter().map(|&x| a2.labels[y2.h_reps[wi.psi1[y1.projection.psi.apply(x)]]]).collect();
    let comm = b1.commutator();
    let psi2 = lookup(&wi.psi2, r1.h().order());
    let xi2: Vec<(usize, usize)> = comm.elements().iter().map(|&x| (x, psi2[x])).collect();
    if xi2.iter().any(|&(_, y)| y == usize::MAX) {
        return Err("brace commutator is not inside the iota commutator".into());
    }
    let bw = BraceIsoclinismWitness { xi1, xi2 };
    verify_brace_isoclinism(&b1, &b2, &bw)?;
    Ok(bw)
}

/// The identity witness of `(r, r)`.
pub fn identity_witness(r: &RrbGroup, mode: Mode) -> IsoclinismWitness {
    let t = omega_tables(r);
    let c = r.commutator().k;
    let g = match mode {
        Mode::Strict => r.g().whole(),
        Mode::Weak => image_of_r_on(r, &c),
    };
    IsoclinismWitness {
        psi1: (0..t.quotient.group.h().order()).collect(),
        eta1: (0..t.quotient.group.g().order()).collect(),
        psi2: c.elements().iter().map(|&x| (x, x)).collect(),
        eta2: g.elements().iter().map(|&x| (x, x)).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn padded(r: &RrbGroup) -> RrbGroup {
        let z2 = FiniteGroup::cyclic(2);
        let h = FiniteGroup::direct_product(r.h(), &z2);
        let g = FiniteGroup::direct_product(r.g(), &FiniteGroup::trivial());
        let phi = (0..g.order()).map(|b| (0..h.order()).map(|x| r.phi(b, x / 2) * 2 + x % 2).collect()).collect();
        let rr = (0..h.order()).map(|x| r.r(x / 2)).collect();
        RrbGroup::new(h, g, phi, rr).unwrap()
    }

    #[test]
    fn omega_examples() {
        let t = omega_tables(&RrbGroup::identity_on(FiniteGroup::cyclic(4)));
        assert!(t.omega.iter().all(|&v| v == 0) && t.omega_phi.iter().all(|&v| v == 0));
        let s3 = FiniteGroup::symmetric(3);
        let r = RrbGroup::trivial_action(s3.clone(), s3.clone(), vec![0; 6]).unwrap();
        let t = omega_tables(&r);
        assert_eq!(t.size(), 6);
        assert!(t.omega_phi.iter().all(|&v| v == 0));
        assert!((0..6).all(|x| (0..6).all(|y| t.omega(x, y) == s3.commutator(x, y))));
    }

    #[test]
    fn reflexive_and_padded() {
        let s3 = FiniteGroup::symmetric(3);
        let r = RrbGroup::identity_on(s3);
        let v = are_isoclinic(&r, &r, DEFAULT_ISOCLINISM_BOUND).unwrap();
        assert!(v.witness().is_some());
        verify_witness(&r, &r, &identity_witness(&r, Mode::Strict), Mode::Strict).unwrap();
        let p = padded(&r);
        let w = are_isoclinic(&r, &p, DEFAULT_ISOCLINISM_BOUND).unwrap();
        assert!(w.witness().is_some(), "{w:?}");
        assert!(are_isoclinic(&p, &r, DEFAULT_ISOCLINISM_BOUND).unwrap().witness().is_some());
        let w = are_weakly_isoclinic(&r, &p, DEFAULT_ISOCLINISM_BOUND).unwrap();
        let w = w.witness().unwrap();
        transport_to_iota(&r, &p, w).unwrap();
        transport_to_braces(&r, &p, w).unwrap();
    }

    #[test]
    fn commutator_order_obstruction() {
        let a = RrbGroup::trivial_action(FiniteGroup::cyclic(4), FiniteGroup::trivial(), vec![0; 4]).unwrap();
        let b = RrbGroup::trivial_action(FiniteGroup::symmetric(3), FiniteGroup::trivial(), vec![0; 6]).unwrap();
        assert!(matches!(are_isoclinic(&a, &b, DEFAULT_ISOCLINISM_BOUND).unwrap(), Verdict::NotRelated(_)));
    }
}
