use num_bigint::BigInt;

use crate::brace::SkewBrace;
use crate::linalg::{solve_mod, AbElement, IntMatrix};
use crate::rrb::RrbGroup;

use super::cocycle::{h2_rrb, Cocycle4, RrbH2};
use super::gcoh::{h2_group, h2_slb, GroupCocycle, GroupLayout, SlbCocycle, SlbLayout};
use super::h2::H2Classes;
use super::{CohomologyError, TrivialModule};

/// Images of one class under the four comparison maps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PiImages {
    /// in brace cohomology of the induced brace
    pub pi1: AbElement,
    /// first group table
    pub pi2: AbElement,
    /// second group table
    pub pi3: AbElement,
    pub pi4: (AbElement, AbElement),
}

/// RRB cohomology together with the brace and group cohomologies it maps to.
pub struct PiMaps {
    base: RrbGroup,
    pub rrb: RrbH2,
    pub slb: H2Classes<SlbLayout>,
    pub gp_a: H2Classes<GroupLayout>,
    pub gp_b: H2Classes<GroupLayout>,
}

fn not_in_z2(e: CohomologyError) -> CohomologyError {
    match e {
        CohomologyError::NotACocycle(site) => CohomologyError::NotInZ2(format!("{site:?} fails")),
        e => e,
    }
}

impl PiMaps {
    pub fn new(base: &RrbGroup, module: &TrivialModule, max_vars: usize) -> Result<Self, CohomologyError> {
        let brace = SkewBrace::from_rrb(base);
        Ok(PiMaps {
            base: base.clone(),
            rrb: h2_rrb(base, module, max_vars)?,
            slb: h2_slb(&brace, module.k(), max_vars)?,
            gp_a: h2_group(base.h(), module.k(), max_vars)?,
            gp_b: h2_group(base.g(), module.l(), max_vars)?,
        })
    }

    pub fn tau1_table(&self, c: &Cocycle4) -> GroupCocycle {
        let (na, _, rk, _) = c.dims();
        let mut t = GroupCocycle::zero(na, rk);
        for x in 0..na {
            for y in 0..na {
                t.get_mut(x, y).copy_from_slice(c.tau1(x, y));
            }
        }
        t
    }

    pub fn tau2_table(&self, c: &Cocycle4) -> GroupCocycle {
        let (_, nb, _, rl) = c.dims();
        let mut t = GroupCocycle::zero(nb, rl);
        for x in 0..nb {
            for y in 0..nb {
                t.get_mut(x, y).copy_from_slice(c.tau2(x, y));
            }
        }
        t
    }

    /// `(tau1, tau1(a1, beta_{T a1}(a2)) + rho(a2, T a1))`.
    pub fn slb_pair(&self, c: &Cocycle4) -> SlbCocycle {
        let (na, _, rk, _) = c.dims();
        let mut tilde = GroupCocycle::zero(na, rk);
        for a1 in 0..na {
            let t = self.base.r(a1);
            for a2 in 0..na {
                let v: Vec<i64> = c.tau1(a1, self.base.phi(t, a2)).iter().zip(c.rho(a2, t)).map(|(x, y)| x + y).collect();
                tilde.get_mut(a1, a2).copy_from_slice(&v);
            }
        }
        SlbCocycle { tau: self.tau1_table(c), tau_tilde: tilde }
    }

    pub fn images(&self, c: &Cocycle4) -> Result<PiImages, CohomologyError> {
        self.rrb.coordinates(c).map_err(not_in_z2)?;
        let pi2 = self.gp_a.coordinates(&self.tau1_table(c))?;
        let pi3 = self.gp_b.coordinates(&self.tau2_table(c))?;
        Ok(PiImages { pi1: self.slb.coordinates(&self.slb_pair(c))?, pi4: (pi2.clone(), pi3.clone()), pi2, pi3 })
    }

    pub fn images_of_class(&self, e: &AbElement) -> Result<PiImages, CohomologyError> {
        self.images(&self.rrb.lift(e))
    }

    /// Decides whether some `theta: A -> K` satisfies
    /// `tau1 = d(theta)` and `rho(a2, T a1) = theta(a2) - theta(beta_{T a1}(a2))`.
    pub fn kernel_description_holds(&self, c: &Cocycle4) -> Result<bool, CohomologyError> {
        let a = self.base.h();
        let na = a.order();
        let moduli = self.gp_a.layout().module().moduli().to_vec();
        let rk = moduli.len();
        let var = |x: usize, k: usize| (x - 1) * rk + k;
        let nvars = (na - 1) * rk;
        let mut rows: Vec<Vec<i64>> = Vec::new();
        let mut rhs = Vec::new();
        let mut row_moduli = Vec::new();
        let mut push = |terms: &[(usize, usize, i64)], k: usize, value: i64| {
            let mut row = vec![0i64; nvars];
            for &(x, kk, s) in terms {
                if x != 0 {
                    row[var(x, kk)] += s;
                }
            }
            rows.push(row);
            rhs.push(BigInt::from(value));
            row_moduli.push(BigInt::from(moduli[k]));
        };
        for a1 in 0..na {
            let t = self.base.r(a1);
            for a2 in 0..na {
                for k in 0..rk {
                    push(&[(a2, k, 1), (a.mul(a1, a2), k, -1), (a1, k, 1)], k, c.tau1(a1, a2)[k]);
                    push(&[(a2, k, 1), (self.base.phi(t, a2), k, -1)], k, c.rho(a2, t)[k]);
                }
            }
        }
        if nvars == 0 {
            return Ok(rhs.iter().zip(&row_moduli).all(|(b, m)| (b % m) == BigInt::from(0)));
        }
        Ok(solve_mod(&IntMatrix::from_rows_i64(&rows), &rhs, &row_moduli)?.is_some())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cohomology::{rrb_coboundary, DEFAULT_VARIABLE_BOUND};
    use crate::group::FiniteGroup;
    use crate::linalg::FinAbPresentation;

    #[test]
    fn zero_and_coboundaries_map_to_zero() {
        let base = RrbGroup::identity_on(FiniteGroup::cyclic(4));
        let m = TrivialModule::cyclic(2);
        let pi = PiMaps::new(&base, &m, DEFAULT_VARIABLE_BOUND).unwrap();
        let z = pi.images(&Cocycle4::zero_for(&base, &m)).unwrap();
        assert!(FinAbPresentation::is_zero(&z.pi1) && FinAbPresentation::is_zero(&z.pi2) && FinAbPresentation::is_zero(&z.pi3));
        let th1: Vec<Vec<i64>> = (0..4).map(|a| vec![(a == 1) as i64]).collect();
        let th2: Vec<Vec<i64>> = (0..4).map(|b| vec![(b == 2) as i64]).collect();
        let b = rrb_coboundary(&base, &m, &th1, &th2).unwrap();
        let im = pi.images(&b).unwrap();
        assert!(FinAbPresentation::is_zero(&im.pi1) && FinAbPresentation::is_zero(&im.pi4.0));
        // the kernel description agrees with pi1 on every class
        for e in pi.rrb.elements() {
            let c = pi.rrb.lift(&e);
            let im = pi.images(&c).unwrap();
            assert_eq!(FinAbPresentation::is_zero(&im.pi1), pi.kernel_description_holds(&c).unwrap());
        }
    }
}
