use std::fmt::Debug;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use crate::linalg::{kernel_generators, subquotient_structure, AbElement, FinAbPresentation, IntMatrix, ModConstraint, SubquotientSolver};

use super::CohomologyError;

/// Default ceiling on the number of cochain variables.
pub const DEFAULT_VARIABLE_BOUND: usize = 10_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Condition {
    /// group cocycle identity for the first table
    Tau1Cocycle,
    /// group cocycle identity for the second table
    Tau2Cocycle,
    Rrbc1,
    Rrbc2,
    Rrbc3,
    /// compatibility of the two tables of a brace cocycle
    Compatibility,
}

/// Where a linear condition is evaluated: its arguments and the coordinate of
/// the coefficient group.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Site {
    pub condition: Condition,
    pub args: [usize; 3],
    pub coord: usize,
}

#[derive(Clone, Copy, Debug)]
pub struct Residual {
    pub value: i64,
    pub modulus: u64,
    pub site: Site,
}

/// A space of normalized 2-cochains, flattened to integer vectors.
///
/// `residuals` and `coboundary_raw` must be linear in their input and must not
/// reduce modulo anything: the constraint and coboundary matrices are read off
/// from their values on unit vectors.
pub trait CochainLayout: Clone {
    type Cocycle: Clone + Debug + PartialEq;

    fn var_moduli(&self) -> Vec<u64>;
    fn theta_len(&self) -> usize;
    fn flatten(&self, c: &Self::Cocycle) -> Result<Vec<i64>, CohomologyError>;
    fn unflatten(&self, v: &[i64]) -> Self::Cocycle;
    fn residuals(&self, v: &[i64], out: &mut Vec<Residual>);
    fn coboundary_raw(&self, theta: &[i64]) -> Vec<i64>;
}

pub fn first_violation<L: CochainLayout>(layout: &L, v: &[i64]) -> Option<Site> {
    let mut out = Vec::new();
    layout.residuals(v, &mut out);
    out.into_iter().find(|r| r.value.rem_euclid(r.modulus as i64) != 0).map(|r| r.site)
}

/// Coboundary of `theta`, reduced into the cochain moduli.
pub fn coboundary<L: CochainLayout>(layout: &L, theta: &[i64]) -> L::Cocycle {
    let mut v = layout.coboundary_raw(theta);
    for (x, m) in v.iter_mut().zip(layout.var_moduli()) {
        *x = x.rem_euclid(m as i64);
    }
    layout.unflatten(&v)
}

/// Second cohomology of a cochain layout, with coordinates and lifts.
#[derive(Clone, Debug)]
pub struct H2Classes<L: CochainLayout> {
    layout: L,
    var_moduli: Vec<u64>,
    solver: SubquotientSolver,
    basis: Vec<L::Cocycle>,
}

impl<L: CochainLayout> H2Classes<L> {
    pub fn compute(layout: L, max_vars: usize) -> Result<Self, CohomologyError> {
        let var_moduli = layout.var_moduli();
        let n = var_moduli.len();
        if n > max_vars {
            return Err(CohomologyError::SearchBoundExceeded { what: "cochain variables", size: n, bound: max_vars });
        }
        let mut rows: Vec<Vec<(usize, i64)>> = Vec::new();
        let mut row_moduli: Vec<u64> = Vec::new();
        let mut unit = vec![0i64; n];
        let mut res = Vec::new();
        for j in 0..n {
            unit[j] = 1;
            res.clear();
            layout.residuals(&unit, &mut res);
            if rows.is_empty() {
                rows = vec![Vec::new(); res.len()];
                row_moduli = res.iter().map(|r| r.modulus).collect();
            }
            for (i, r) in res.iter().enumerate() {
                if r.value != 0 {
                    rows[i].push((j, r.value));
                }
            }
            unit[j] = 0;
        }
        let constraints: Vec<ModConstraint> = rows
            .into_iter()
            .zip(row_moduli)
            .map(|(t, m)| ModConstraint::normalized(t, m))
            .filter(|c| !c.terms.is_empty())
            .collect();
        let z_cols = kernel_generators(&var_moduli, &constraints);
        let p = layout.theta_len();
        let mut theta = vec![0i64; p];
        let mut b_cols = Vec::with_capacity(p);
        for t in 0..p {
            theta[t] = 1;
            b_cols.push(layout.coboundary_raw(&theta));
            theta[t] = 0;
        }
        let moduli: Vec<BigInt> = var_moduli.iter().map(|&m| BigInt::from(m)).collect();
        let (_, solver) = subquotient_structure(
            &IntMatrix::from_columns_i64(n, &z_cols),
            &IntMatrix::from_columns_i64(n, &b_cols),
            &moduli,
        )?;
        let mut me = H2Classes { layout, var_moduli, solver, basis: Vec::new() };
        let pres = me.solver.presentation().clone();
        me.basis = (0..pres.rank()).map(|i| me.lift(&pres.unit(i))).collect();
        Ok(me)
    }

    pub fn layout(&self) -> &L {
        &self.layout
    }

    pub fn structure(&self) -> &FinAbPresentation {
        self.solver.presentation()
    }

    pub fn order(&self) -> u64 {
        self.structure().order().expect("second cohomology of a finite group is finite")
    }

    /// Representative cocycles of the cyclic generators.
    pub fn basis(&self) -> &[L::Cocycle] {
        &self.basis
    }

    pub fn violation(&self, c: &L::Cocycle) -> Result<Option<Site>, CohomologyError> {
        let v = self.layout.flatten(c)?;
        Ok(first_violation(&self.layout, &v))
    }

    pub fn coordinates(&self, c: &L::Cocycle) -> Result<AbElement, CohomologyError> {
        let v = self.layout.flatten(c)?;
        if let Some(site) = first_violation(&self.layout, &v) {
            return Err(CohomologyError::NotACocycle(site));
        }
        Ok(self.solver.coordinates_i64(&v)?)
    }

    pub fn is_coboundary(&self, c: &L::Cocycle) -> Result<bool, CohomologyError> {
        Ok(FinAbPresentation::is_zero(&self.coordinates(c)?))
    }

    pub fn lift(&self, e: &AbElement) -> L::Cocycle {
        let x = self.solver.lift(e);
        let v: Vec<i64> = x
            .iter()
            .zip(&self.var_moduli)
            .map(|(a, &m)| a.mod_floor(&BigInt::from(m)).to_i64().expect("reduced value fits"))
            .collect();
        debug_assert!(first_violation(&self.layout, &v).is_none());
        self.layout.unflatten(&v)
    }

    /// Every class, in lexicographic order of coordinates.
    pub fn elements(&self) -> Vec<AbElement> {
        self.structure().elements()
    }
}
