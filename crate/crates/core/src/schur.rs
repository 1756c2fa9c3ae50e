//! Schur multipliers and Schur covers of RRB groups.
//!
//! Multiplicative coefficients are never represented. Classes with values in
//! the roots of unity are computed as the image of
//! `H2(A, K_N) -> H2(A, K_{NE})`, `x -> E x`, where `K_m = (Z/m, Z/m, trivial, id)`
//! and `N = E = |A||B|`. Every class has a representative with values of
//! order dividing `N`, so the `N`-truncation is onto; a coboundary over the
//! rationals mod 1 trivializing an `N`-torsion cocycle has components that are
//! homomorphisms mod `1/N`, hence killed by `N|A|` and `N|B|`, which `NE` covers.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use thiserror::Error;

use crate::cohomology::h2::{first_violation, CochainLayout};
use crate::cohomology::hss::{module_homs, push_forward, DEFAULT_HOM_DOMAIN_BOUND};
use crate::cohomology::product::assemble;
use crate::cohomology::{
    cocycle_from_extension, extension_from_cocycle, h2_rrb, Cocycle4, CohomologyError, ExtensionData, RrbH2, RrbLayout,
    TrivialModule,
};
use crate::group::{FiniteGroup, GroupHom};
use crate::linalg::{kernel_generators, solve_mod, subquotient_structure, AbElement, FinAbPresentation, IntMatrix, ModConstraint, SubquotientSolver};
use crate::rrb::{verify_rrb_hom, RrbGroup, RrbHom, RrbSubgroup};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SchurError {
    #[error("hypothesis fails: {0}")]
    HypothesisFails(String),
    #[error("module does not match the multiplier: {0}")]
    ModuleMismatch(String),
    #[error("no representative found: {0}")]
    NoSolution(String),
    #[error("invalid generators: {0}")]
    InvalidGenerators(String),
    #[error(transparent)]
    Cohomology(#[from] CohomologyError),
    #[error(transparent)]
    Rrb(#[from] crate::rrb::RrbError),
    #[error(transparent)]
    Group(#[from] crate::group::GroupError),
    #[error(transparent)]
    Linalg(#[from] crate::linalg::LinalgError),
}

#[derive(Clone, Debug)]
pub struct SchurMultiplier {
    base: RrbGroup,
    n: u64,
    e: u64,
    small: RrbH2,
    big: RrbH2,
    /// images of the generators of `H2(A, K_N)` in `H2(A, K_{NE})`
    images: Vec<AbElement>,
    /// generators of the kernel of the coefficient map, in `H2(A, K_N)` coordinates
    kernel: Vec<Vec<i64>>,
    solver: Option<SubquotientSolver>,
    structure: FinAbPresentation,
    generators: Vec<Cocycle4>,
}

/// A representative with values in the order-`n` subgroup.
#[derive(Clone, Debug)]
pub struct Minimized {
    pub order: u64,
    /// values in `Z/n`
    pub reduced: Cocycle4,
    /// the same cocycle in `Z/N`, values multiples of `N/n`
    pub embedded: Cocycle4,
}

fn scale_values(c: &Cocycle4, k: i64) -> Cocycle4 {
    let (_, _, rk, rl) = c.dims();
    c.map_values(rk, rl, |v| v.iter().map(|x| x * k).collect(), |v| v.iter().map(|x| x * k).collect())
}

impl SchurMultiplier {
    pub fn compute(base: &RrbGroup, max_vars: usize) -> Result<Self, SchurError> {
        let n = (base.h().order() * base.g().order()) as u64;
        Self::compute_with(base, n, n, max_vars)
    }

    /// The image of `H2(A, K_n) -> H2(A, K_{ne})`.
    pub fn compute_with(base: &RrbGroup, n: u64, e: u64, max_vars: usize) -> Result<Self, SchurError> {
        let small = h2_rrb(base, &TrivialModule::cyclic(n), max_vars)?;
        let big = h2_rrb(base, &TrivialModule::cyclic(n * e), max_vars)?;
        let mut images = Vec::new();
        for b in small.basis() {
            images.push(big.coordinates(&scale_values(b, e as i64))?);
        }
        let d = small.structure().factors().to_vec();
        let mut me = SchurMultiplier {
            base: base.clone(),
            n,
            e,
            small,
            big,
            images,
            kernel: Vec::new(),
            solver: None,
            structure: FinAbPresentation::trivial(),
            generators: Vec::new(),
        };
        if d.is_empty() {
            return Ok(me);
        }
        let dd = me.big.structure().factors().to_vec();
        let constraints: Vec<ModConstraint> = (0..dd.len())
            .map(|j| ModConstraint::normalized(me.images.iter().enumerate().map(|(i, im)| (i, im.0[j] as i64)).collect(), dd[j]))
            .filter(|c| !c.terms.is_empty())
            .collect();
        me.kernel = kernel_generators(&d, &constraints);
        let k = d.len();
        let identity: Vec<Vec<i64>> = (0..k).map(|i| (0..k).map(|j| (i == j) as i64).collect()).collect();
        let moduli: Vec<BigInt> = d.iter().map(|&x| BigInt::from(x)).collect();
        let (pres, solver) = subquotient_structure(
            &IntMatrix::from_columns_i64(k, &identity),
            &IntMatrix::from_columns_i64(k, &me.kernel),
            &moduli,
        )?;
        me.structure = pres;
        me.solver = Some(solver);
        me.generators = (0..me.structure.rank()).map(|i| me.lift(&me.structure.unit(i))).collect();
        Ok(me)
    }

    pub fn base(&self) -> &RrbGroup {
        &self.base
    }

    pub fn structure(&self) -> &FinAbPresentation {
        &self.structure
    }

    pub fn order(&self) -> u64 {
        self.structure.order().expect("multiplier is finite")
    }

    pub fn exponent(&self) -> u64 {
        self.structure.exponent().expect("multiplier is finite")
    }

    /// `(N, E)`.
    pub fn moduli(&self) -> (u64, u64) {
        (self.n, self.e)
    }

    pub fn coefficient_module(&self) -> TrivialModule {
        TrivialModule::cyclic(self.n)
    }

    /// Representative `Z/N` cocycles of the cyclic generators.
    pub fn generators(&self) -> &[Cocycle4] {
        &self.generators
    }

    pub fn truncated_h2(&self) -> &RrbH2 {
        &self.small
    }

    /// A `Z/N` cocycle representing the class.
    pub fn lift(&self, e: &AbElement) -> Cocycle4 {
        let Some(solver) = &self.solver else {
            return Cocycle4::zero_for(&self.base, &self.coefficient_module());
        };
        let x = solver.lift(e);
        let d = self.small.structure().factors();
        let red: Vec<u64> =
            x.iter().zip(d).map(|(v, &m)| v.mod_floor(&BigInt::from(m)).to_u64().expect("reduced coordinate")).collect();
        self.small.lift(&AbElement(red))
    }

    /// Multiplier class of a `Z/N` cocycle.
    pub fn class_of(&self, c: &Cocycle4) -> Result<AbElement, SchurError> {
        let x = self.small.coordinates(c)?;
        match &self.solver {
            None => Ok(AbElement(vec![])),
            Some(s) => Ok(s.coordinates_i64(&x.0.iter().map(|&v| v as i64).collect::<Vec<_>>())?),
        }
    }

    /// Whether replacing `E` by `2E` leaves the image unchanged: same kernel of
    /// the coefficient map and isomorphic structure.
    pub fn stabilization_holds(&self, max_vars: usize) -> Result<bool, SchurError> {
        let other = Self::compute_with(&self.base, self.n, 2 * self.e, max_vars)?;
        if !other.structure.is_isomorphic(&self.structure) {
            return Ok(false);
        }
        let vanishes = |m: &SchurMultiplier, x: &[i64]| -> bool {
            let mut acc = m.big.structure().zero();
            for (i, &c) in x.iter().enumerate() {
                acc = m.big.structure().add(&acc, &m.big.structure().scale(c, &m.images[i]));
            }
            FinAbPresentation::is_zero(&acc)
        };
        Ok(self.kernel.iter().all(|x| vanishes(&other, x)) && other.kernel.iter().all(|x| vanishes(self, x)))
    }

    /// A representative of `class` with all values in the order-`n` subgroup,
    /// `n` the order of the class.
    pub fn minimize_representative(&self, class: &AbElement) -> Result<Minimized, SchurError> {
        let n = self.structure.element_order(class);
        let module_n = TrivialModule::cyclic(n);
        if n == 1 {
            return Ok(Minimized {
                order: 1,
                reduced: Cocycle4::zero_for(&self.base, &module_n),
                embedded: Cocycle4::zero_for(&self.base, &self.coefficient_module()),
            });
        }
        if self.n % n != 0 {
            return Err(SchurError::NoSolution(format!("class order {n} does not divide {}", self.n)));
        }
        let ne = self.n * self.e;
        let z = self.lift(class);
        // over Z/(NE n) the class is n E z; find theta with n E z + d(theta) divisible by NE
        let layout = RrbLayout::new(&self.base, &TrivialModule::cyclic(ne));
        let zv = layout.flatten(&z)?;
        let scale = (n * self.e) as i128;
        let rhs: Vec<BigInt> = zv.iter().map(|&x| BigInt::from((-(x as i128) * scale).rem_euclid(ne as i128))).collect();
        let p = layout.theta_len();
        let mut cols = Vec::with_capacity(p);
        let mut unit = vec![0i64; p];
        for t in 0..p {
            unit[t] = 1;
            cols.push(layout.coboundary_raw(&unit));
            unit[t] = 0;
        }
        let theta = if p == 0 {
            if rhs.iter().any(|x| *x != BigInt::from(0)) {
                None
            } else {
                Some(Vec::new())
            }
        } else {
            let m = IntMatrix::from_columns_i64(zv.len(), &cols);
            solve_mod(&m, &rhs, &vec![BigInt::from(ne); zv.len()])?
        };
        let Some(theta) = theta else {
            return Err(SchurError::NoSolution(format!("no coboundary adjustment for a class of order {n}")));
        };
        let theta: Vec<i64> =
            theta.iter().map(|t| t.mod_floor(&BigInt::from(ne)).to_i64().expect("reduced theta")).collect();
        let dt = layout.coboundary_raw(&theta);
        let mut reduced_v = Vec::with_capacity(zv.len());
        for (&x, &d) in zv.iter().zip(&dt) {
            let w = x as i128 * scale + d as i128;
            if w.rem_euclid(ne as i128) != 0 {
                return Err(SchurError::NoSolution("adjusted cocycle is not divisible".into()));
            }
            reduced_v.push((w / ne as i128).rem_euclid(n as i128) as i64);
        }
        let layout_n = RrbLayout::new(&self.base, &module_n);
        if let Some(site) = first_violation(&layout_n, &reduced_v) {
            return Err(SchurError::NoSolution(format!("reduced representative fails {site:?}")));
        }
        let reduced = layout_n.unflatten(&reduced_v);
        let embedded = scale_values(&reduced, (self.n / n) as i64);
        if &self.class_of(&embedded)? != class {
            return Err(SchurError::NoSolution("reduced representative lies in another class".into()));
        }
        Ok(Minimized { order: n, reduced, embedded })
    }
}

pub fn schur_multiplier(base: &RrbGroup, max_vars: usize) -> Result<SchurMultiplier, SchurError> {
    SchurMultiplier::compute(base, max_vars)
}

/// Multipliers of independent bases, computed in parallel; results keep the input order.
pub fn schur_multipliers(bases: &[RrbGroup], max_vars: usize) -> Vec<Result<SchurMultiplier, SchurError>> {
    bases.par_iter().map(|b| SchurMultiplier::compute(b, max_vars)).collect()
}

/// Schur multiplier of a group, as the first table of `(G, 1, trivial, trivial)`
/// would see it: the image of `H2(G, Z/N) -> H2(G, Z/N^2)` with `N = |G|`.
pub fn group_multiplier(g: &FiniteGroup, max_vars: usize) -> Result<FinAbPresentation, SchurError> {
    use crate::cohomology::{h2_group, CyclicProduct};
    let n = g.order() as u64;
    let small = h2_group(g, &CyclicProduct::new(vec![n]), max_vars)?;
    let big = h2_group(g, &CyclicProduct::new(vec![n * n]), max_vars)?;
    let mut images = Vec::new();
    for b in small.basis() {
        let scaled =
            crate::cohomology::GroupCocycle::from_table(b.order(), 1, b.table().iter().map(|x| x * n as i64).collect())?;
        images.push(big.coordinates(&scaled)?);
    }
    let mut generated = BTreeSet::new();
    generated.insert(big.structure().zero());
    let mut frontier = vec![big.structure().zero()];
    while let Some(x) = frontier.pop() {
        for im in &images {
            let y = big.structure().add(&x, im);
            if generated.insert(y.clone()) {
                frontier.push(y);
            }
        }
    }
    let elems: Vec<AbElement> = generated.into_iter().collect();
    let orders: Vec<u64> = elems.iter().map(|e| big.structure().element_order(e)).collect();
    Ok(presentation_from_orders(&orders))
}

/// The abelian group with the given multiset of element orders.
fn presentation_from_orders(orders: &[u64]) -> FinAbPresentation {
    // for each prime p, the number of elements of order dividing p^k determines the p-part
    let total = orders.len() as u64;
    let mut factors = Vec::new();
    let mut m = total;
    let mut p = 2;
    while m > 1 {
        if m % p == 0 {
            let mut pk = 1u64;
            let mut counts = vec![1u64];
            while m % p == 0 {
                m /= p;
            }
            loop {
                pk *= p;
                let c = orders.iter().filter(|&&o| pk % o == 0 && (o == 1 || o % p == 0 && is_power_of(o, p))).count() as u64;
                counts.push(c);
                if c == *counts.iter().rev().nth(1).unwrap() {
                    break;
                }
            }
            // counts[k] = prod_i p^{min(k, e_i)}; number of exponents >= k is log_p(counts[k] / counts[k-1])
            let mut ge = Vec::new();
            for k in 1..counts.len() {
                let mut r = counts[k] / counts[k - 1];
                let mut c = 0;
                while r > 1 {
                    r /= p;
                    c += 1;
                }
                ge.push(c);
            }
            for k in 0..ge.len() {
                let exact = ge[k] - ge.get(k + 1).copied().unwrap_or(0);
                for _ in 0..exact {
                    factors.push(p.pow(k as u32 + 1));
                }
            }
        }
        p += 1;
    }
    FinAbPresentation::new(crate::linalg::invariant_factors(&factors))
}

fn is_power_of(mut x: u64, p: u64) -> bool {
    while x % p == 0 {
        x /= p;
    }
    x == 1
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverChecks {
    /// `i1(K)` lies in `Z^phi_R(H)` and `i2(L)` in `Z(G) cap ker phi`
    pub central: bool,
    /// `i1(K)` lies in the H-part of the commutator
    pub in_commutator: bool,
    pub tra_isomorphism: bool,
    /// for bijective bases the two criteria must agree; `None` otherwise
    pub criteria_agree: Option<bool>,
}

impl CoverChecks {
    pub fn all_true(&self) -> bool {
        self.central && self.in_commutator && self.tra_isomorphism && self.criteria_agree != Some(false)
    }
}

#[derive(Clone, Debug)]
pub struct CoverResult {
    pub ext: ExtensionData,
    pub cocycle: Cocycle4,
    pub generators: Vec<AbElement>,
    pub checks: CoverChecks,
}

/// Checks that `gens[i]` has order `d_i` and that they form a basis.
fn validate_generators(m: &SchurMultiplier, gens: &[AbElement]) -> Result<(), SchurError> {
    let pres = m.structure();
    let d = pres.factors();
    if gens.len() != d.len() {
        return Err(SchurError::InvalidGenerators(format!("{} generators for {} factors", gens.len(), d.len())));
    }
    for (i, (g, &di)) in gens.iter().zip(d).enumerate() {
        if pres.element_order(g) != di {
            return Err(SchurError::InvalidGenerators(format!("generator {i} has order {}, expected {di}", pres.element_order(g))));
        }
    }
    let mut seen = BTreeSet::new();
    for coeffs in FinAbPresentation::new(d.to_vec()).elements() {
        let mut acc = pres.zero();
        for (g, &c) in gens.iter().zip(&coeffs.0) {
            acc = pres.add(&acc, &pres.scale(c as i64, g));
        }
        seen.insert(acc);
    }
    if seen.len() as u64 != m.order() {
        return Err(SchurError::InvalidGenerators("generators are not independent".into()));
    }
    Ok(())
}

/// A central extension whose transgression is an isomorphism, built from the
/// standard generators of the multiplier.
pub fn build_schur_cover(base: &RrbGroup, max_vars: usize) -> Result<CoverResult, SchurError> {
    let m = SchurMultiplier::compute(base, max_vars)?;
    let gens: Vec<AbElement> = (0..m.structure().rank()).map(|i| m.structure().unit(i)).collect();
    build_schur_cover_with(&m, &gens)
}

/// As [`build_schur_cover`] with an explicit basis of the multiplier,
/// `gens[i]` of order equal to the `i`-th invariant factor.
pub fn build_schur_cover_with(m: &SchurMultiplier, gens: &[AbElement]) -> Result<CoverResult, SchurError> {
    validate_generators(m, gens)?;
    let base = m.base();
    let d = m.structure().factors().to_vec();
    let module = TrivialModule::diagonal(&d);
    let cocycle = if d.is_empty() {
        Cocycle4::zero_for(base, &module)
    } else {
        let mut parts = Vec::new();
        for g in gens {
            parts.push(m.minimize_representative(g)?.reduced);
        }
        assemble(&parts)
    };
    let ext = extension_from_cocycle(base, &module, &cocycle)?;
    let checks = is_schur_cover(&ext, m)?;
    Ok(CoverResult { ext, cocycle, generators: gens.to_vec(), checks })
}

/// Verdicts for an extension of the multiplier's base by a module isomorphic
/// to the multiplier.
pub fn is_schur_cover(ext: &ExtensionData, m: &SchurMultiplier) -> Result<CoverChecks, SchurError> {
    let kpres = FinAbPresentation::new(crate::linalg::invariant_factors(ext.module.k().moduli()));
    if !kpres.is_isomorphic(m.structure()) || ext.module.k() != ext.module.l() {
        return Err(SchurError::ModuleMismatch(format!(
            "module factors {:?}, multiplier {:?}",
            ext.module.k().moduli(),
            m.structure().factors()
        )));
    }
    let total = &ext.total;
    let centre = total.center();
    let gz = total.g().center();
    let central = ext.inj.psi.images.iter().all(|&x| centre.k.contains(x))
        && ext.inj.eta.images.iter().all(|&y| centre.l.contains(y) && gz.contains(y));
    let comm = total.commutator();
    let in_commutator = ext.inj.psi.images.iter().all(|&x| comm.k.contains(x));

    let c = cocycle_from_extension(ext, &ext.canonical_section)?;
    let cn = m.coefficient_module();
    let homs = module_homs(&ext.module.as_rrb(), &cn, DEFAULT_HOM_DOMAIN_BOUND)?;
    let mut images = BTreeSet::new();
    for g in &homs {
        images.insert(m.class_of(&push_forward(&ext.module, &cn, g, &c))?);
    }
    let tra_isomorphism = homs.len() as u64 == m.order() && images.len() as u64 == m.order();
    let criteria_agree = ext.base.is_bijective().then_some(in_commutator == tra_isomorphism);
    Ok(CoverChecks { central, in_commutator, tra_isomorphism, criteria_agree })
}

#[derive(Clone, Debug)]
pub struct RestrictionVerdict {
    /// every homomorphism to the truncated coefficients vanishes on the subgroup
    pub trivial: bool,
    pub in_commutator: bool,
    /// for bijective bases with the subgroup outside the commutator: a
    /// homomorphism not vanishing on it
    pub witness: Option<RrbHom>,
}

pub fn restricts_trivially(base: &RrbGroup, sub: &RrbSubgroup) -> Result<RestrictionVerdict, SchurError> {
    let image: BTreeSet<usize> = sub.k.elements().iter().map(|&x| base.r(x)).collect();
    if image.iter().copied().collect::<Vec<_>>() != sub.l.elements() {
        return Err(SchurError::HypothesisFails("the operator does not map K onto L".into()));
    }
    let q = num_integer::lcm(base.h().exponent(), base.g().exponent()) as u64;
    let cq = TrivialModule::cyclic(q);
    let homs = module_homs(base, &cq, DEFAULT_HOM_DOMAIN_BOUND)?;
    let trivial = homs
        .iter()
        .all(|f| sub.k.elements().iter().all(|&x| f.psi.apply(x) == 0) && sub.l.elements().iter().all(|&y| f.eta.apply(y) == 0));
    let comm = base.commutator();
    let in_commutator = sub.k.is_subset_of(&comm.k);
    let mut witness = None;
    if base.is_bijective() && !in_commutator {
        let a = *sub.k.elements().iter().find(|&&x| !comm.k.contains(x)).expect("K is not inside the commutator");
        let quo = base.h().quotient(&comm.k)?;
        let abar = quo.projection.apply(a);
        let target = FiniteGroup::cyclic(q as usize);
        for chi in quo.group.homs_to_bounded(&target, DEFAULT_HOM_DOMAIN_BOUND)? {
            if chi.apply(abar) == 0 {
                continue;
            }
            let psi = GroupHom { images: (0..base.h().order()).map(|x| chi.apply(quo.projection.apply(x))).collect() };
            let mut eta = vec![0; base.g().order()];
            for x in 0..base.h().order() {
                eta[base.r(x)] = psi.apply(x);
            }
            let hom = RrbHom { psi, eta: GroupHom { images: eta } };
            verify_rrb_hom(base, &cq.as_rrb(), &hom)?;
            witness = Some(hom);
            break;
        }
        if witness.is_none() {
            return Err(SchurError::HypothesisFails("no character separates the subgroup from the commutator".into()));
        }
    }
    if base.is_bijective() && trivial != in_commutator {
        return Err(SchurError::Cohomology(CohomologyError::Violation(format!(
            "restriction is {}trivial but the subgroup is {}in the commutator",
            if trivial { "" } else { "not " },
            if in_commutator { "" } else { "not " }
        ))));
    }
    Ok(RestrictionVerdict { trivial, in_commutator, witness })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cohomology::DEFAULT_VARIABLE_BOUND;

    #[test]
    fn klein_four_group_multiplier() {
        let m = group_multiplier(&FiniteGroup::klein_four(), DEFAULT_VARIABLE_BOUND).unwrap();
        assert_eq!(m.factors(), &[2]);
        let m = group_multiplier(&FiniteGroup::cyclic(4), DEFAULT_VARIABLE_BOUND).unwrap();
        assert_eq!(m.order(), Some(1));
        let m = group_multiplier(&FiniteGroup::quaternion(), DEFAULT_VARIABLE_BOUND).unwrap();
        assert_eq!(m.order(), Some(1));
        let m = group_multiplier(&FiniteGroup::dihedral(4), DEFAULT_VARIABLE_BOUND).unwrap();
        assert_eq!(m.factors(), &[2]);
    }

    #[test]
    fn profile_inversion() {
        for f in [vec![2u64, 4], vec![3, 6], vec![2, 2, 2], vec![4], vec![]] {
            let p = FinAbPresentation::new(f.clone());
            let orders: Vec<u64> = p.elements().iter().map(|e| p.element_order(e)).collect();
            assert_eq!(presentation_from_orders(&orders), p);
        }
    }

    #[test]
    fn cover_of_bijective_z2() {
        let base = RrbGroup::identity_on(FiniteGroup::cyclic(2));
        let m = SchurMultiplier::compute(&base, DEFAULT_VARIABLE_BOUND).unwrap();
        assert!(m.stabilization_holds(DEFAULT_VARIABLE_BOUND).unwrap());
        for e in m.structure().elements() {
            let r = m.minimize_representative(&e).unwrap();
            assert!(r.embedded.all_values_divisible_by((m.moduli().0 / r.order) as i64));
        }
        let cover = build_schur_cover(&base, DEFAULT_VARIABLE_BOUND).unwrap();
        assert!(cover.checks.all_true(), "{:?}", cover.checks);
        assert_eq!(cover.ext.total.h().order() as u64, 2 * m.order());
    }

    #[test]
    fn trivial_base() {
        let base = RrbGroup::identity_on(FiniteGroup::trivial());
        let m = SchurMultiplier::compute(&base, DEFAULT_VARIABLE_BOUND).unwrap();
        assert_eq!(m.order(), 1);
        let cover = build_schur_cover(&base, DEFAULT_VARIABLE_BOUND).unwrap();
        assert!(cover.checks.all_true());
    }
}
