use std::collections::BTreeSet;

use crate::group::GroupHom;
use crate::linalg::{AbElement, FinAbPresentation};
use crate::rrb::{compose_homs, rrb_homs, RrbGroup, RrbHom};

use super::cocycle::{h2_rrb, Cocycle4, RrbH2};
use super::extension::{cocycle_from_extension, ExtensionData, Section};
use super::{CohomologyError, TrivialModule};

/// Default ceiling on hom-set domain orders.
pub const DEFAULT_HOM_DOMAIN_BOUND: usize = 256;

pub fn hom_rrb(x: &RrbGroup, y: &RrbGroup, bound: usize) -> Result<Vec<RrbHom>, CohomologyError> {
    Ok(rrb_homs(x, y, bound)?)
}

/// RRB homomorphisms from `x` into the module viewed as an RRB group.
pub fn module_homs(x: &RrbGroup, m: &TrivialModule, bound: usize) -> Result<Vec<RrbHom>, CohomologyError> {
    hom_rrb(x, &m.as_rrb(), bound)
}

fn zero_hom(x: &RrbGroup) -> RrbHom {
    RrbHom { psi: GroupHom { images: vec![0; x.h().order()] }, eta: GroupHom { images: vec![0; x.g().order()] } }
}

/// Pointwise sum of two homomorphisms into a module.
pub fn hom_sum(m: &TrivialModule, f: &RrbHom, g: &RrbHom) -> RrbHom {
    let add = |p: &super::CyclicProduct, a: usize, b: usize| {
        let s: Vec<i64> = p.coords(a).iter().zip(p.coords(b)).map(|(x, y)| x + y).collect();
        p.index(&s)
    };
    RrbHom {
        psi: GroupHom { images: f.psi.images.iter().zip(&g.psi.images).map(|(&a, &b)| add(m.k(), a, b)).collect() },
        eta: GroupHom { images: f.eta.images.iter().zip(&g.eta.images).map(|(&a, &b)| add(m.l(), a, b)).collect() },
    }
}

/// Pushes the values of a cocycle with coefficients in `src` through a module
/// homomorphism `src -> dst`.
pub fn push_forward(src: &TrivialModule, dst: &TrivialModule, g: &RrbHom, c: &Cocycle4) -> Cocycle4 {
    c.map_values(
        dst.k().rank(),
        dst.l().rank(),
        |kv| dst.k().coords(g.psi.apply(src.k().index(kv))),
        |lv| dst.l().coords(g.eta.apply(src.l().index(lv))),
    )
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactnessCheck {
    pub position: &'static str,
    pub image: usize,
    pub kernel: usize,
    pub holds: bool,
}

#[derive(Clone, Debug, Default)]
pub struct ExactnessReport {
    pub checks: Vec<ExactnessCheck>,
    /// Maps found not to be additive, or to depend on the section.
    pub failures: Vec<String>,
}

impl ExactnessReport {
    pub fn holds(&self) -> bool {
        self.failures.is_empty() && self.checks.iter().all(|c| c.holds)
    }
}

impl std::fmt::Display for ExactnessReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for c in &self.checks {
            writeln!(f, "{:<10} |im| = {:<4} |ker| = {:<4} {}", c.position, c.image, c.kernel, if c.holds { "exact" } else { "NOT exact" })?;
        }
        for x in &self.failures {
            writeln!(f, "failure: {x}")?;
        }
        Ok(())
    }
}

/// The maps of the five-term sequence
/// `0 -> Hom(A, M) -> Hom(H, M) -> Hom(K, M) -> H2(A, M) -> H2(H, M)`
/// for an extension `K -> H -> A`.
pub struct HssMaps {
    ext: ExtensionData,
    m: TrivialModule,
    cocycle: Cocycle4,
    pub hom_a: Vec<RrbHom>,
    pub hom_h: Vec<RrbHom>,
    pub hom_k: Vec<RrbHom>,
    pub h2_a: RrbH2,
    pub h2_h: RrbH2,
}

impl HssMaps {
    pub fn new(ext: &ExtensionData, m: &TrivialModule, hom_bound: usize, max_vars: usize) -> Result<Self, CohomologyError> {
        let cocycle = cocycle_from_extension(ext, &ext.canonical_section)?;
        Ok(HssMaps {
            hom_a: module_homs(&ext.base, m, hom_bound)?,
            hom_h: module_homs(&ext.total, m, hom_bound)?,
            hom_k: module_homs(&ext.module.as_rrb(), m, hom_bound)?,
            h2_a: h2_rrb(&ext.base, m, max_vars)?,
            h2_h: h2_rrb(&ext.total, m, max_vars)?,
            ext: ext.clone(),
            m: m.clone(),
            cocycle,
        })
    }

    /// `f -> f . pi`.
    pub fn inf1(&self, f: &RrbHom) -> RrbHom {
        compose_homs(f, &self.ext.proj)
    }

    /// `f -> f . i`.
    pub fn res(&self, f: &RrbHom) -> RrbHom {
        compose_homs(f, &self.ext.inj)
    }

    pub fn tra(&self, g: &RrbHom) -> Result<AbElement, CohomologyError> {
        self.h2_a.coordinates(&push_forward(&self.ext.module, &self.m, g, &self.cocycle))
    }

    /// Transgression computed from the cocycle of another section.
    pub fn tra_with_section(&self, g: &RrbHom, s: &Section) -> Result<AbElement, CohomologyError> {
        let c = cocycle_from_extension(&self.ext, s)?;
        self.h2_a.coordinates(&push_forward(&self.ext.module, &self.m, g, &c))
    }

    /// Pull-back of a class along the projection.
    pub fn inf2(&self, e: &AbElement) -> Result<AbElement, CohomologyError> {
        let c = self.h2_a.lift(e);
        let (h, g) = (self.ext.total.h(), self.ext.total.g());
        let pulled = c.pull_back(h.order(), g.order(), &self.ext.proj.psi.images, &self.ext.proj.eta.images);
        self.h2_h.coordinates(&pulled)
    }

    pub fn exactness(&self) -> Result<ExactnessReport, CohomologyError> {
        let mut rep = ExactnessReport::default();
        let zero_h = zero_hom(&self.ext.total);
        let zero_k = zero_hom(&self.ext.module.as_rrb());
        let pres_a = self.h2_a.structure().clone();

        let inf1: Vec<RrbHom> = self.hom_a.iter().map(|f| self.inf1(f)).collect();
        let ker_inf1 = inf1.iter().filter(|f| **f == zero_h).count();
        rep.checks.push(ExactnessCheck { position: "Hom(A,M)", image: 1, kernel: ker_inf1, holds: ker_inf1 == 1 });

        let im_inf1: BTreeSet<RrbHom> = inf1.into_iter().collect();
        let ker_res: BTreeSet<RrbHom> = self.hom_h.iter().filter(|f| self.res(f) == zero_k).cloned().collect();
        rep.checks.push(ExactnessCheck {
            position: "Hom(H,M)",
            image: im_inf1.len(),
            kernel: ker_res.len(),
            holds: im_inf1 == ker_res,
        });

        let im_res: BTreeSet<RrbHom> = self.hom_h.iter().map(|f| self.res(f)).collect();
        let mut tra = Vec::with_capacity(self.hom_k.len());
        for g in &self.hom_k {
            tra.push(self.tra(g)?);
        }
        let ker_tra: BTreeSet<RrbHom> =
            self.hom_k.iter().zip(&tra).filter(|(_, t)| FinAbPresentation::is_zero(t)).map(|(g, _)| g.clone()).collect();
        rep.checks.push(ExactnessCheck {
            position: "Hom(K,M)",
            image: im_res.len(),
            kernel: ker_tra.len(),
            holds: im_res == ker_tra,
        });

        let im_tra: BTreeSet<AbElement> = tra.iter().cloned().collect();
        let mut ker_inf2 = BTreeSet::new();
        for e in pres_a.elements() {
            if FinAbPresentation::is_zero(&self.inf2(&e)?) {
                ker_inf2.insert(e);
            }
        }
        rep.checks.push(ExactnessCheck {
            position: "H2(A,M)",
            image: im_tra.len(),
            kernel: ker_inf2.len(),
            holds: im_tra == ker_inf2,
        });

        self.check_additivity(&tra, &mut rep)?;
        Ok(rep)
    }

    fn check_additivity(&self, tra: &[AbElement], rep: &mut ExactnessReport) -> Result<(), CohomologyError> {
        let m = &self.m;
        for f in &self.hom_a {
            for g in &self.hom_a {
                if self.inf1(&hom_sum(m, f, g)) != hom_sum(m, &self.inf1(f), &self.inf1(g)) {
                    rep.failures.push("Inf on Hom is not additive".into());
                }
            }
        }
        for f in &self.hom_h {
            for g in &self.hom_h {
                if self.res(&hom_sum(m, f, g)) != hom_sum(m, &self.res(f), &self.res(g)) {
                    rep.failures.push("Res is not additive".into());
                }
            }
        }
        let pres_a = self.h2_a.structure();
        for (i, f) in self.hom_k.iter().enumerate() {
            for (j, g) in self.hom_k.iter().enumerate() {
                if self.tra(&hom_sum(m, f, g))? != pres_a.add(&tra[i], &tra[j]) {
                    rep.failures.push("Tra is not additive".into());
                }
            }
        }
        let pres_h = self.h2_h.structure();
        let gens: Vec<AbElement> = (0..pres_a.rank()).map(|i| pres_a.unit(i)).collect();
        for x in &gens {
            for y in &gens {
                if self.inf2(&pres_a.add(x, y))? != pres_h.add(&self.inf2(x)?, &self.inf2(y)?) {
                    rep.failures.push("Inf on H2 is not additive".into());
                }
            }
        }
        // a second section: shift by the first coordinate on every non-identity element
        let (kp, lp) = (self.ext.module.k(), self.ext.module.l());
        let unit = |rank: usize| (0..rank).map(|c| (c == 0) as i64).collect::<Vec<_>>();
        let th1: Vec<Vec<i64>> = (0..self.ext.base.h().order())
            .map(|a| if a % 2 == 1 { unit(kp.rank()) } else { vec![0; kp.rank()] })
            .collect();
        let th2: Vec<Vec<i64>> = (0..self.ext.base.g().order())
            .map(|b| if b > 0 && b % 3 == 0 { unit(lp.rank()) } else { vec![0; lp.rank()] })
            .collect();
        let s = self.ext.shifted_section(&th1, &th2);
        for (g, t) in self.hom_k.iter().zip(tra) {
            if &self.tra_with_section(g, &s)? != t {
                rep.failures.push("Tra depends on the section".into());
            }
        }
        Ok(())
    }
}

/// Five-term exactness report for `ext` with coefficients in `m`.
pub fn five_term_exactness(ext: &ExtensionData, m: &TrivialModule, max_vars: usize) -> Result<ExactnessReport, CohomologyError> {
    HssMaps::new(ext, m, DEFAULT_HOM_DOMAIN_BOUND, max_vars)?.exactness()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cohomology::{extension_from_cocycle, DEFAULT_VARIABLE_BOUND};
    use crate::group::FiniteGroup;

    #[test]
    fn split_and_nonsplit_extensions_are_exact() {
        let base = RrbGroup::identity_on(FiniteGroup::cyclic(2));
        let m = TrivialModule::cyclic(2);
        let h = h2_rrb(&base, &m, DEFAULT_VARIABLE_BOUND).unwrap();
        let mut cs = vec![Cocycle4::zero_for(&base, &m)];
        cs.extend(h.basis().iter().cloned());
        for c in &cs {
            let ext = extension_from_cocycle(&base, &m, c).unwrap();
            let rep = five_term_exactness(&ext, &m, DEFAULT_VARIABLE_BOUND).unwrap();
            assert!(rep.holds(), "{rep}");
        }
        let ext = extension_from_cocycle(&base, &m, &cs[0]).unwrap();
        let maps = HssMaps::new(&ext, &m, DEFAULT_HOM_DOMAIN_BOUND, DEFAULT_VARIABLE_BOUND).unwrap();
        for g in &maps.hom_k {
            assert!(FinAbPresentation::is_zero(&maps.tra(g).unwrap()));
        }
    }

    #[test]
    fn homs_from_bijective_trivial_group_count() {
        let k = FiniteGroup::cyclic_product(&[2, 3]);
        let x = RrbGroup::identity_on(k);
        let c = TrivialModule::cyclic(6);
        assert_eq!(module_homs(&x, &c, 64).unwrap().len(), 6);
        assert!(hom_rrb(&x, &x, 64).unwrap().iter().any(|h| h.psi.images == (0..6).collect::<Vec<_>>()));
    }
}
