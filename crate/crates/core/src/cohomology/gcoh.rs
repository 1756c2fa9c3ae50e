use crate::brace::SkewBrace;
use crate::group::FiniteGroup;

use super::h2::{CochainLayout, Condition, H2Classes, Residual, Site};
use super::{CohomologyError, CyclicProduct};

/// A full table `tau[x][y]` of coordinate vectors.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupCocycle {
    n: usize,
    rank: usize,
    table: Vec<i64>,
}

impl GroupCocycle {
    pub fn zero(n: usize, rank: usize) -> Self {
        GroupCocycle { n, rank, table: vec![0; n * n * rank] }
    }

    pub fn from_table(n: usize, rank: usize, table: Vec<i64>) -> Result<Self, CohomologyError> {
        if table.len() != n * n * rank {
            return Err(CohomologyError::Shape(format!("table has {} entries, expected {}", table.len(), n * n * rank)));
        }
        Ok(GroupCocycle { n, rank, table })
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn table(&self) -> &[i64] {
        &self.table
    }

    pub fn get(&self, x: usize, y: usize) -> &[i64] {
        let i = (x * self.n + y) * self.rank;
        &self.table[i..i + self.rank]
    }

    pub fn get_mut(&mut self, x: usize, y: usize) -> &mut [i64] {
        let i = (x * self.n + y) * self.rank;
        &mut self.table[i..i + self.rank]
    }
}

fn flatten_table(t: &GroupCocycle, n: usize, module: &CyclicProduct, out: &mut Vec<i64>) -> Result<(), CohomologyError> {
    if t.n != n || t.rank != module.rank() {
        return Err(CohomologyError::Shape(format!(
            "cocycle on {} elements with rank {}, expected {n} and {}",
            t.n,
            t.rank,
            module.rank()
        )));
    }
    for x in 0..n {
        if t.get(0, x).iter().chain(t.get(x, 0)).any(|&v| v != 0) {
            return Err(CohomologyError::NotNormalized(format!("nonzero value at an identity argument ({x})")));
        }
    }
    for x in 1..n {
        for y in 1..n {
            for (c, &m) in module.moduli().iter().enumerate() {
                out.push(t.get(x, y)[c].rem_euclid(m as i64));
            }
        }
    }
    Ok(())
}

fn unflatten_table(v: &[i64], n: usize, rank: usize) -> GroupCocycle {
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

/// Offset of `tau(x, y)[c]` in a flattened table, zero-argument entries absent.
fn idx(n: usize, rank: usize, x: usize, y: usize, c: usize) -> Option<usize> {
    (x != 0 && y != 0).then(|| ((x - 1) * (n - 1) + y - 1) * rank + c)
}

fn at(v: &[i64], off: usize, i: Option<usize>) -> i64 {
    i.map_or(0, |i| v[off + i])
}

fn group_residuals(g: &FiniteGroup, module: &CyclicProduct, v: &[i64], off: usize, cond: Condition, out: &mut Vec<Residual>) {
    let (n, rk) = (g.order(), module.rank());
    for x in 1..n {
        for y in 1..n {
            let xy = g.mul(x, y);
            for z in 1..n {
                let yz = g.mul(y, z);
                for (c, &m) in module.moduli().iter().enumerate() {
                    let val = at(v, off, idx(n, rk, y, z, c)) - at(v, off, idx(n, rk, xy, z, c)) + at(v, off, idx(n, rk, x, yz, c))
                        - at(v, off, idx(n, rk, x, y, c));
                    out.push(Residual { value: val, modulus: m, site: Site { condition: cond, args: [x, y, z], coord: c } });
                }
            }
        }
    }
}

fn group_coboundary(g: &FiniteGroup, rk: usize, theta: &[i64], out: &mut Vec<i64>) {
    let n = g.order();
    let th = |x: usize, c: usize| if x == 0 { 0 } else { theta[(x - 1) * rk + c] };
    for x in 1..n {
        for y in 1..n {
            let xy = g.mul(x, y);
            for c in 0..rk {
                out.push(th(y, c) - th(xy, c) + th(x, c));
            }
        }
    }
}

/// Normalized group 2-cochains with values in a trivial module.
#[derive(Clone, Debug)]
pub struct GroupLayout {
    group: FiniteGroup,
    module: CyclicProduct,
}

impl GroupLayout {
    pub fn new(group: &FiniteGroup, module: &CyclicProduct) -> Self {
        GroupLayout { group: group.clone(), module: module.clone() }
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn module(&self) -> &CyclicProduct {
        &self.module
    }
}

impl CochainLayout for GroupLayout {
    type Cocycle = GroupCocycle;

    fn var_moduli(&self) -> Vec<u64> {
        let n = self.group.order();
        (0..(n - 1) * (n - 1)).flat_map(|_| self.module.moduli().iter().copied()).collect()
    }

    fn theta_len(&self) -> usize {
        (self.group.order() - 1) * self.module.rank()
    }

    fn flatten(&self, c: &GroupCocycle) -> Result<Vec<i64>, CohomologyError> {
        let mut v = Vec::new();
        flatten_table(c, self.group.order(), &self.module, &mut v)?;
        Ok(v)
    }

    fn unflatten(&self, v: &[i64]) -> GroupCocycle {
        unflatten_table(v, self.group.order(), self.module.rank())
    }

    fn residuals(&self, v: &[i64], out: &mut Vec<Residual>) {
        group_residuals(&self.group, &self.module, v, 0, Condition::Tau1Cocycle, out);
    }

    fn coboundary_raw(&self, theta: &[i64]) -> Vec<i64> {
        let mut out = Vec::new();
        group_coboundary(&self.group, self.module.rank(), theta, &mut out);
        out
    }
}

pub fn h2_group(group: &FiniteGroup, module: &CyclicProduct, max_vars: usize) -> Result<H2Classes<GroupLayout>, CohomologyError> {
    H2Classes::compute(GroupLayout::new(group, module), max_vars)
}

/// A pair of tables for the additive and multiplicative groups of a brace.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SlbCocycle {
    pub tau: GroupCocycle,
    pub tau_tilde: GroupCocycle,
}

/// Normalized brace 2-cochains `(tau, tau~)`.
#[derive(Clone, Debug)]
pub struct SlbLayout {
    brace: SkewBrace,
    module: CyclicProduct,
}

impl SlbLayout {
    pub fn new(brace: &SkewBrace, module: &CyclicProduct) -> Self {
        SlbLayout { brace: brace.clone(), module: module.clone() }
    }

    pub fn brace(&self) -> &SkewBrace {
        &self.brace
    }

    pub fn module(&self) -> &CyclicProduct {
        &self.module
    }

    fn half(&self) -> usize {
        let n = self.brace.order();
        (n - 1) * (n - 1) * self.module.rank()
    }
}

impl CochainLayout for SlbLayout {
    type Cocycle = SlbCocycle;

    fn var_moduli(&self) -> Vec<u64> {
        let n = self.brace.order();
        (0..2 * (n - 1) * (n - 1)).flat_map(|_| self.module.moduli().iter().copied()).collect()
    }

    fn theta_len(&self) -> usize {
        (self.brace.order() - 1) * self.module.rank()
    }

    fn flatten(&self, c: &SlbCocycle) -> Result<Vec<i64>, CohomologyError> {
        let mut v = Vec::new();
        flatten_table(&c.tau, self.brace.order(), &self.module, &mut v)?;
        flatten_table(&c.tau_tilde, self.brace.order(), &self.module, &mut v)?;
        Ok(v)
    }

    fn unflatten(&self, v: &[i64]) -> SlbCocycle {
        let (n, rk, h) = (self.brace.order(), self.module.rank(), self.half());
        SlbCocycle { tau: unflatten_table(&v[..h], n, rk), tau_tilde: unflatten_table(&v[h..], n, rk) }
    }

    fn residuals(&self, v: &[i64], out: &mut Vec<Residual>) {
        let (dot, circ) = (self.brace.dot(), self.brace.circle());
        let (n, rk, h) = (self.brace.order(), self.module.rank(), self.half());
        group_residuals(dot, &self.module, v, 0, Condition::Tau1Cocycle, out);
        group_residuals(circ, &self.module, v, h, Condition::Tau2Cocycle, out);
        let t = |x: usize, y: usize, c: usize| at(v, 0, idx(n, rk, x, y, c));
        let tt = |x: usize, y: usize, c: usize| at(v, h, idx(n, rk, x, y, c));
        for m1 in 1..n {
            let inv1 = dot.inv(m1);
            for m2 in 1..n {
                let m12 = circ.mul(m1, m2);
                let q = dot.mul(m12, inv1);
                for m3 in 1..n {
                    let m13 = circ.mul(m1, m3);
                    for (c, &md) in self.module.moduli().iter().enumerate() {
                        let val = t(m2, m3, c) + tt(m1, dot.mul(m2, m3), c) + t(inv1, m1, c)
                            - tt(m1, m3, c)
                            - t(m12, inv1, c)
                            - t(q, m13, c)
                            - tt(m1, m2, c);
                        out.push(Residual {
                            value: val,
                            modulus: md,
                            site: Site { condition: Condition::Compatibility, args: [m1, m2, m3], coord: c },
                        });
                    }
                }
            }
        }
    }

    fn coboundary_raw(&self, theta: &[i64]) -> Vec<i64> {
        let mut out = Vec::new();
        group_coboundary(self.brace.dot(), self.module.rank(), theta, &mut out);
        group_coboundary(self.brace.circle(), self.module.rank(), theta, &mut out);
        out
    }
}

pub fn h2_slb(brace: &SkewBrace, module: &CyclicProduct, max_vars: usize) -> Result<H2Classes<SlbLayout>, CohomologyError> {
    H2Classes::compute(SlbLayout::new(brace, module), max_vars)
}

/// Whether the pair defines a brace structure on `M x I`; the independent
/// check for the compatibility condition.
pub fn slb_extension_oracle(brace: &SkewBrace, module: &CyclicProduct, c: &SlbCocycle) -> bool {
    let (n, ni) = (brace.order(), module.order());
    let build = |g: &FiniteGroup, t: &GroupCocycle| {
        FiniteGroup::from_fn(n * ni, "ext", |x, y| {
            let (m1, i1, m2, i2) = (x / ni, x % ni, y / ni, y % ni);
            let s: Vec<i64> =
                module.coords(i1).iter().zip(module.coords(i2)).zip(t.get(m1, m2)).map(|((a, b), c)| a + b + c).collect();
            g.mul(m1, m2) * ni + module.index(&s)
        })
    };
    match (build(brace.dot(), &c.tau), build(brace.circle(), &c.tau_tilde)) {
        (Ok(d), Ok(o)) => SkewBrace::new(d, o).is_ok(),
        _ => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cohomology::DEFAULT_VARIABLE_BOUND;

    #[test]
    fn small_group_cohomology() {
        let z2 = CyclicProduct::new(vec![2]);
        let h = h2_group(&FiniteGroup::cyclic(2), &z2, DEFAULT_VARIABLE_BOUND).unwrap();
        assert_eq!(h.structure().factors(), &[2]);
        let h = h2_group(&FiniteGroup::cyclic(3), &z2, DEFAULT_VARIABLE_BOUND).unwrap();
        assert_eq!(h.order(), 1);
        // H^2(Z2 x Z2, Z2) has order 8
        let h = h2_group(&FiniteGroup::klein_four(), &z2, DEFAULT_VARIABLE_BOUND).unwrap();
        assert_eq!(h.order(), 8);
        // H^2(Z4, Z4) = Z4
        let h = h2_group(&FiniteGroup::cyclic(4), &CyclicProduct::new(vec![4]), DEFAULT_VARIABLE_BOUND).unwrap();
        assert_eq!(h.structure().factors(), &[4]);
    }

    #[test]
    fn slb_compatibility_matches_brace_construction() {
        let br = SkewBrace::trivial(FiniteGroup::cyclic(2));
        let z2 = CyclicProduct::new(vec![2]);
        let layout = SlbLayout::new(&br, &z2);
        // all 4 normalized pairs over Z2 with one free entry each
        for bits in 0..4i64 {
            let mut c = SlbCocycle { tau: GroupCocycle::zero(2, 1), tau_tilde: GroupCocycle::zero(2, 1) };
            c.tau.get_mut(1, 1)[0] = bits & 1;
            c.tau_tilde.get_mut(1, 1)[0] = bits >> 1;
            let v = layout.flatten(&c).unwrap();
            let linear = super::super::first_violation(&layout, &v).is_none();
            assert_eq!(linear, slb_extension_oracle(&br, &z2, &c), "bits {bits}");
        }
    }
}
