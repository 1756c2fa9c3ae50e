use std::collections::BTreeSet;

use crate::group::{FiniteGroup, GroupHom};
use crate::rrb::{RrbGroup, RrbHom};

use super::cocycle::{Cocycle4, RrbLayout};
use super::h2::{first_violation, CochainLayout};
use super::{CohomologyError, TrivialModule};

/// A set-theoretic section of both projections of an extension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Section {
    pub sh: Vec<usize>,
    pub sg: Vec<usize>,
}

/// A central extension `K -> H -> A`, `L -> G -> B` built on `A x K` and
/// `B x L`. Element `(a, k)` of `H` has index `a * |K| + k`, similarly for `G`.
#[derive(Clone, Debug)]
pub struct ExtensionData {
    pub total: RrbGroup,
    pub base: RrbGroup,
    pub module: TrivialModule,
    pub inj: RrbHom,
    pub proj: RrbHom,
    pub canonical_section: Section,
}

struct Tables {
    h: Vec<Vec<usize>>,
    g: Vec<Vec<usize>>,
    phi: Vec<Vec<usize>>,
    r: Vec<usize>,
}

fn add_idx(m: &super::CyclicProduct, x: &[i64], y: &[i64], z: &[i64]) -> usize {
    let s: Vec<i64> = x.iter().zip(y).zip(z).map(|((a, b), c)| a + b + c).collect();
    m.index(&s)
}

fn build_tables(base: &RrbGroup, module: &TrivialModule, c: &Cocycle4) -> Tables {
    let (a, b) = (base.h(), base.g());
    let (na, nb) = (a.order(), b.order());
    let (kp, lp) = (module.k(), module.l());
    let (nk, nl) = (kp.order(), lp.order());
    let kc: Vec<Vec<i64>> = (0..nk).map(|i| kp.coords(i)).collect();
    let lc: Vec<Vec<i64>> = (0..nl).map(|i| lp.coords(i)).collect();
    let mut h = vec![vec![0; na * nk]; na * nk];
    for a1 in 0..na {
        for a2 in 0..na {
            let a12 = a.mul(a1, a2);
            let t = c.tau1(a1, a2);
            for k1 in 0..nk {
                for k2 in 0..nk {
                    h[a1 * nk + k1][a2 * nk + k2] = a12 * nk + add_idx(kp, &kc[k1], &kc[k2], t);
                }
            }
        }
    }
    let mut g = vec![vec![0; nb * nl]; nb * nl];
    for b1 in 0..nb {
        for b2 in 0..nb {
            let b12 = b.mul(b1, b2);
            let t = c.tau2(b1, b2);
            for l1 in 0..nl {
                for l2 in 0..nl {
                    g[b1 * nl + l1][b2 * nl + l2] = b12 * nl + add_idx(lp, &lc[l1], &lc[l2], t);
                }
            }
        }
    }
    let zero_k = vec![0i64; kp.rank()];
    let mut phi = vec![vec![0; na * nk]; nb * nl];
    for bb in 0..nb {
        let mut row = vec![0; na * nk];
        for x in 0..na {
            let moved = base.phi(bb, x);
            for k in 0..nk {
                row[x * nk + k] = moved * nk + add_idx(kp, c.rho(x, bb), &kc[k], &zero_k);
            }
        }
        for l in 0..nl {
            phi[bb * nl + l] = row.clone();
        }
    }
    let zero_l = vec![0i64; lp.rank()];
    let mut r = vec![0; na * nk];
    for x in 0..na {
        let t = base.r(x);
        for k in 0..nk {
            r[x * nk + k] = t * nl + add_idx(lp, c.chi(x), &module.apply_s(&kc[k]), &zero_l);
        }
    }
    Tables { h, g, phi, r }
}

/// Builds the quadruple's candidate extension and reports whether it is an RRB
/// group. Only the shape of `c` is checked up front; the verdict is independent
/// of the linear cocycle conditions.
pub fn extension_oracle(
    base: &RrbGroup,
    module: &TrivialModule,
    c: &Cocycle4,
) -> Result<Result<RrbGroup, String>, CohomologyError> {
    let dims = (base.h().order(), base.g().order(), module.k().rank(), module.l().rank());
    if c.dims() != dims {
        return Err(CohomologyError::Shape(format!("cocycle has shape {:?}, expected {dims:?}", c.dims())));
    }
    let mut c = c.clone();
    c.reduce(module);
    let t = build_tables(base, module, &c);
    let h = match FiniteGroup::from_table(t.h, format!("{}.K", base.h().name())) {
        Ok(h) => h,
        Err(e) => return Ok(Err(format!("H: {e}"))),
    };
    let g = match FiniteGroup::from_table(t.g, format!("{}.L", base.g().name())) {
        Ok(g) => g,
        Err(e) => return Ok(Err(format!("G: {e}"))),
    };
    Ok(RrbGroup::new(h, g, t.phi, t.r).map_err(|e| e.to_string()))
}

/// The extension determined by a cocycle, with centrality of `(K, L)` asserted.
pub fn extension_from_cocycle(base: &RrbGroup, module: &TrivialModule, c: &Cocycle4) -> Result<ExtensionData, CohomologyError> {
    let layout = RrbLayout::new(base, module);
    let v = layout.flatten(c)?;
    if let Some(site) = first_violation(&layout, &v) {
        return Err(CohomologyError::NotACocycle(site));
    }
    let total = match extension_oracle(base, module, c)? {
        Ok(t) => t,
        Err(detail) => return Err(CohomologyError::Consistency { linear: true, oracle: false, detail }),
    };
    let (na, nb) = (base.h().order(), base.g().order());
    let (nk, nl) = (module.k().order(), module.l().order());
    let inj = RrbHom { psi: GroupHom { images: (0..nk).collect() }, eta: GroupHom { images: (0..nl).collect() } };
    let proj = RrbHom {
        psi: GroupHom { images: (0..na * nk).map(|x| x / nk).collect() },
        eta: GroupHom { images: (0..nb * nl).map(|y| y / nl).collect() },
    };
    let canonical_section = Section { sh: (0..na).map(|a| a * nk).collect(), sg: (0..nb).map(|b| b * nl).collect() };
    let ext = ExtensionData { total, base: base.clone(), module: module.clone(), inj, proj, canonical_section };
    let centre = ext.total.center();
    let central_k = ext.inj.psi.images.iter().all(|&x| centre.k.contains(x));
    let central_l = ext.inj.eta.images.iter().all(|&y| centre.l.contains(y) && ext.total.g().center().contains(y));
    if !(central_k && central_l) {
        return Err(CohomologyError::Violation("module image is not central in the extension".into()));
    }
    Ok(ext)
}

impl ExtensionData {
    pub fn h_index(&self, a: usize, k: usize) -> usize {
        a * self.module.k().order() + k
    }

    pub fn g_index(&self, b: usize, l: usize) -> usize {
        b * self.module.l().order() + l
    }

    fn k_of(&self, x: usize) -> Option<usize> {
        self.inj.psi.images.iter().position(|&y| y == x)
    }

    fn l_of(&self, y: usize) -> Option<usize> {
        self.inj.eta.images.iter().position(|&z| z == y)
    }

    pub fn validate_section(&self, s: &Section) -> Result<(), CohomologyError> {
        let (na, nb) = (self.base.h().order(), self.base.g().order());
        if s.sh.len() != na || s.sg.len() != nb {
            return Err(CohomologyError::SectionInvalid("section lengths do not match the base".into()));
        }
        if s.sh[0] != 0 || s.sg[0] != 0 {
            return Err(CohomologyError::SectionInvalid("section must send the identity to the identity".into()));
        }
        for (a, &x) in s.sh.iter().enumerate() {
            if x >= self.total.h().order() || self.proj.psi.apply(x) != a {
                return Err(CohomologyError::SectionInvalid(format!("sH({a}) does not project to {a}")));
            }
        }
        for (b, &y) in s.sg.iter().enumerate() {
            if y >= self.total.g().order() || self.proj.eta.apply(y) != b {
                return Err(CohomologyError::SectionInvalid(format!("sG({b}) does not project to {b}")));
            }
        }
        Ok(())
    }

    /// The section `a -> sH(a) i1(theta1(a))`, `b -> sG(b) i2(theta2(b))`
    /// starting from the canonical one.
    pub fn shifted_section(&self, theta1: &[Vec<i64>], theta2: &[Vec<i64>]) -> Section {
        let (h, g) = (self.total.h(), self.total.g());
        let (kp, lp) = (self.module.k(), self.module.l());
        let cs = &self.canonical_section;
        Section {
            sh: cs.sh.iter().enumerate().map(|(a, &x)| h.mul(x, self.inj.psi.apply(kp.index(&theta1[a])))).collect(),
            sg: cs.sg.iter().enumerate().map(|(b, &y)| g.mul(y, self.inj.eta.apply(lp.index(&theta2[b])))).collect(),
        }
    }

    /// `(Z^phi_R(H), ker phi)` read off from the cocycle tables.
    pub fn centre_by_formula(&self, c: &Cocycle4) -> (Vec<usize>, Vec<usize>) {
        let (a, b) = (self.base.h(), self.base.g());
        let (na, nb) = (a.order(), b.order());
        let (nk, nl) = (self.module.k().order(), self.module.l().order());
        let zero = |s: &[i64], m: &[u64]| s.iter().zip(m).all(|(x, &q)| x.rem_euclid(q as i64) == 0);
        let km = self.module.k().moduli();
        let eq = |s: &[i64], t: &[i64]| s.iter().zip(t).zip(km).all(|((x, y), &q)| (x - y).rem_euclid(q as i64) == 0);
        let mut hz = Vec::new();
        for x in 0..na {
            let t = self.base.r(x);
            let ok = (0..na).all(|y| a.mul(x, y) == a.mul(y, x) && eq(c.tau1(x, y), c.tau1(y, x)))
                && (0..na).all(|y| self.base.phi(t, y) == y && zero(c.rho(y, t), km))
                && (0..nb).all(|g| self.base.phi(g, x) == x && zero(c.rho(x, g), km));
            if ok {
                hz.extend((0..nk).map(|k| self.h_index(x, k)));
            }
        }
        let mut gk = Vec::new();
        for g in 0..nb {
            if (0..na).all(|y| self.base.phi(g, y) == y && zero(c.rho(y, g), km)) {
                gk.extend((0..nl).map(|l| self.g_index(g, l)));
            }
        }
        (hz, gk)
    }

    /// Generators of `H^phi` and `G'` written in terms of the cocycle tables.
    pub fn commutator_generators_by_formula(&self, c: &Cocycle4) -> (Vec<usize>, Vec<usize>) {
        let (a, b) = (self.base.h(), self.base.g());
        let (kp, lp) = (self.module.k(), self.module.l());
        let comb = |terms: &[(&[i64], i64)], rank: usize| -> Vec<i64> {
            let mut v = vec![0i64; rank];
            for (t, sgn) in terms {
                for (x, y) in v.iter_mut().zip(t.iter()) {
                    *x += sgn * y;
                }
            }
            v
        };
        let mut hs = BTreeSet::new();
        for a1 in 0..a.order() {
            for a2 in 0..a.order() {
                let (i1, i2, p) = (a.inv(a1), a.inv(a2), a.mul(a1, a2));
                let q = a.mul(p, i1);
                let k = comb(
                    &[(c.tau1(a1, a2), 1), (c.tau1(a1, i1), -1), (c.tau1(p, i1), 1), (c.tau1(a2, i2), -1), (c.tau1(q, i2), 1)],
                    kp.rank(),
                );
                hs.insert(self.h_index(a.commutator(a1, a2), kp.index(&k)));
            }
            for g in 0..b.order() {
                let moved = self.base.phi(g, a1);
                let i1 = a.inv(a1);
                let k = comb(&[(c.rho(a1, g), 1), (c.tau1(a1, i1), -1), (c.tau1(moved, i1), 1)], kp.rank());
                hs.insert(self.h_index(a.mul(moved, i1), kp.index(&k)));
            }
        }
        let mut gs = BTreeSet::new();
        for b1 in 0..b.order() {
            for b2 in 0..b.order() {
                let (i1, i2, p) = (b.inv(b1), b.inv(b2), b.mul(b1, b2));
                let q = b.mul(p, i1);
                let l = comb(
                    &[(c.tau2(b1, b2), 1), (c.tau2(b1, i1), -1), (c.tau2(p, i1), 1), (c.tau2(b2, i2), -1), (c.tau2(q, i2), 1)],
                    lp.rank(),
                );
                gs.insert(self.g_index(b.commutator(b1, b2), lp.index(&l)));
            }
        }
        (hs.into_iter().collect(), gs.into_iter().collect())
    }

    /// Compares the centre and commutator formulas with direct computation.
    pub fn check_structure_formulas(&self, c: &Cocycle4) -> Result<(), CohomologyError> {
        let (hz, gk) = self.centre_by_formula(c);
        let centre = self.total.center();
        if centre.k.elements() != hz.as_slice() {
            return Err(CohomologyError::Violation(format!(
                "centre formula gives {} elements, direct computation {}",
                hz.len(),
                centre.k.order()
            )));
        }
        if centre.l.elements() != gk.as_slice() {
            return Err(CohomologyError::Violation("kernel-of-action formula disagrees".into()));
        }
        let (hs, gs) = self.commutator_generators_by_formula(c);
        let hphi = self.total.h().subgroup_generated(&hs)?;
        if hphi != self.total.commutator().k {
            return Err(CohomologyError::Violation("generators of the commutator H-part disagree".into()));
        }
        let gd = self.total.g().subgroup_generated(&gs)?;
        if gd != self.total.g().commutator_subgroup() {
            return Err(CohomologyError::Violation("generators of the derived subgroup of G disagree".into()));
        }
        Ok(())
    }
}

/// Reads a cocycle off an extension through a section.
pub fn cocycle_from_extension(ext: &ExtensionData, s: &Section) -> Result<Cocycle4, CohomologyError> {
    ext.validate_section(s)?;
    let (h, g) = (ext.total.h(), ext.total.g());
    let (a, b) = (ext.base.h(), ext.base.g());
    let (kp, lp) = (ext.module.k(), ext.module.l());
    let mut c = Cocycle4::zero(a.order(), b.order(), kp.rank(), lp.rank());
    let k_at = |x: usize| -> Result<Vec<i64>, CohomologyError> {
        ext.k_of(x)
            .map(|k| kp.coords(k))
            .ok_or_else(|| CohomologyError::SectionInvalid(format!("element {x} is not in the image of K")))
    };
    let l_at = |y: usize| -> Result<Vec<i64>, CohomologyError> {
        ext.l_of(y)
            .map(|l| lp.coords(l))
            .ok_or_else(|| CohomologyError::SectionInvalid(format!("element {y} is not in the image of L")))
    };
    for a1 in 0..a.order() {
        for a2 in 0..a.order() {
            let x = h.mul(h.inv(s.sh[a.mul(a1, a2)]), h.mul(s.sh[a1], s.sh[a2]));
            c.tau1_mut(a1, a2).copy_from_slice(&k_at(x)?);
        }
        for bb in 0..b.order() {
            let x = h.mul(h.inv(s.sh[ext.base.phi(bb, a1)]), ext.total.phi(s.sg[bb], s.sh[a1]));
            c.rho_mut(a1, bb).copy_from_slice(&k_at(x)?);
        }
        let y = g.mul(g.inv(s.sg[ext.base.r(a1)]), ext.total.r(s.sh[a1]));
        c.chi_mut(a1).copy_from_slice(&l_at(y)?);
    }
    for b1 in 0..b.order() {
        for b2 in 0..b.order() {
            let y = g.mul(g.inv(s.sg[b.mul(b1, b2)]), g.mul(s.sg[b1], s.sg[b2]));
            c.tau2_mut(b1, b2).copy_from_slice(&l_at(y)?);
        }
    }
    Ok(c)
}
