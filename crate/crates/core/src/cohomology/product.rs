use crate::linalg::{AbElement, FinAbPresentation};
use crate::rrb::RrbGroup;

use super::cocycle::{h2_rrb, Cocycle4, RrbH2};
use super::{CohomologyError, TrivialModule};

/// Concatenates the values of cocycles with coefficients in the factors of a
/// product module.
pub fn assemble(parts: &[Cocycle4]) -> Cocycle4 {
    let (na, nb, _, _) = parts[0].dims();
    let rk: usize = parts.iter().map(|p| p.dims().2).sum();
    let rl: usize = parts.iter().map(|p| p.dims().3).sum();
    let cat = |f: &dyn Fn(&Cocycle4) -> Vec<i64>| -> Vec<i64> { parts.iter().flat_map(f).collect() };
    let mut out = Cocycle4::zero(na, nb, rk, rl);
    for x in 0..na {
        for y in 0..na {
            out.tau1_mut(x, y).copy_from_slice(&cat(&|p| p.tau1(x, y).to_vec()));
        }
        for b in 0..nb {
            out.rho_mut(x, b).copy_from_slice(&cat(&|p| p.rho(x, b).to_vec()));
        }
        out.chi_mut(x).copy_from_slice(&cat(&|p| p.chi(x).to_vec()));
    }
    for x in 0..nb {
        for y in 0..nb {
            out.tau2_mut(x, y).copy_from_slice(&cat(&|p| p.tau2(x, y).to_vec()));
        }
    }
    out
}

/// The component of a product-coefficient cocycle in factor `i`.
pub fn project(c: &Cocycle4, modules: &[TrivialModule], i: usize) -> Cocycle4 {
    let ko: usize = modules[..i].iter().map(|m| m.k().rank()).sum();
    let lo: usize = modules[..i].iter().map(|m| m.l().rank()).sum();
    let (kr, lr) = (modules[i].k().rank(), modules[i].l().rank());
    c.map_values(kr, lr, |v| v[ko..ko + kr].to_vec(), |v| v[lo..lo + lr].to_vec())
}

/// `H2(A, K_1 x ... x K_r)` against the direct sum of the `H2(A, K_i)`.
pub struct ProductIso {
    pub modules: Vec<TrivialModule>,
    pub product: RrbH2,
    pub parts: Vec<RrbH2>,
}

impl ProductIso {
    pub fn compute(base: &RrbGroup, modules: &[TrivialModule], max_vars: usize) -> Result<Self, CohomologyError> {
        assert!(!modules.is_empty(), "need at least one module");
        let prod = TrivialModule::product(modules);
        let mut parts = Vec::with_capacity(modules.len());
        for m in modules {
            parts.push(h2_rrb(base, m, max_vars)?);
        }
        Ok(ProductIso { modules: modules.to_vec(), product: h2_rrb(base, &prod, max_vars)?, parts })
    }

    /// Componentwise assembly of classes.
    pub fn psi(&self, classes: &[AbElement]) -> Result<AbElement, CohomologyError> {
        let lifts: Vec<Cocycle4> = self.parts.iter().zip(classes).map(|(h, e)| h.lift(e)).collect();
        self.product.coordinates(&assemble(&lifts))
    }

    /// Inverse of [`ProductIso::psi`]: project onto each factor.
    pub fn phi(&self, class: &AbElement) -> Result<Vec<AbElement>, CohomologyError> {
        let c = self.product.lift(class);
        (0..self.parts.len()).map(|i| self.parts[i].coordinates(&project(&c, &self.modules, i))).collect()
    }

    pub fn direct_sum(&self) -> FinAbPresentation {
        self.parts.iter().fold(FinAbPresentation::trivial(), |acc, h| acc.direct_sum(h.structure()))
    }

    /// Invariant factors, round trips on generators and additivity.
    pub fn verify(&self) -> Result<(), CohomologyError> {
        let sum = self.direct_sum();
        if !sum.is_isomorphic(self.product.structure()) {
            return Err(CohomologyError::Violation(format!(
                "product coefficients give {:?}, componentwise {:?}",
                self.product.structure().factors(),
                sum.canonical().factors()
            )));
        }
        let zeros: Vec<AbElement> = self.parts.iter().map(|h| h.structure().zero()).collect();
        let mut images = Vec::new();
        for (i, h) in self.parts.iter().enumerate() {
            for j in 0..h.structure().rank() {
                let mut x = zeros.clone();
                x[i] = h.structure().unit(j);
                let y = self.psi(&x)?;
                if self.phi(&y)? != x {
                    return Err(CohomologyError::Violation(format!("round trip fails on generator {j} of factor {i}")));
                }
                images.push((x, y));
            }
        }
        let pres = self.product.structure();
        for j in 0..pres.rank() {
            let e = pres.unit(j);
            if self.psi(&self.phi(&e)?)? != e {
                return Err(CohomologyError::Violation(format!("inverse round trip fails on generator {j}")));
            }
        }
        for (x1, y1) in &images {
            for (x2, y2) in &images {
                let s: Vec<AbElement> =
                    x1.iter().zip(x2).zip(&self.parts).map(|((a, b), h)| h.structure().add(a, b)).collect();
                if self.psi(&s)? != pres.add(y1, y2) {
                    return Err(CohomologyError::Violation("assembly map is not additive".into()));
                }
            }
        }
        Ok(())
    }
}

pub fn product_coeff_iso(base: &RrbGroup, modules: &[TrivialModule], max_vars: usize) -> Result<ProductIso, CohomologyError> {
    let iso = ProductIso::compute(base, modules, max_vars)?;
    iso.verify()?;
    Ok(iso)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cohomology::DEFAULT_VARIABLE_BOUND;
    use crate::group::FiniteGroup;

    #[test]
    fn z2_and_z3_pairs() {
        let base = RrbGroup::identity_on(FiniteGroup::cyclic(2));
        let ms = [TrivialModule::z2_pair(true), TrivialModule::cyclic(3)];
        let iso = product_coeff_iso(&base, &ms, DEFAULT_VARIABLE_BOUND).unwrap();
        assert_eq!(iso.product.order(), iso.parts[0].order() * iso.parts[1].order());
        let single = product_coeff_iso(&base, &ms[..1], DEFAULT_VARIABLE_BOUND).unwrap();
        assert_eq!(single.product.structure(), single.parts[0].structure());
    }
}
