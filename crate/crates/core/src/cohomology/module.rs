use crate::group::FiniteGroup;
use crate::rrb::RrbGroup;

use super::CohomologyError;

/// `Z/m_1 x ... x Z/m_k`, elements as coordinate vectors or as mixed-radix
/// indices (first coordinate least significant, matching
/// [`FiniteGroup::cyclic_product`]).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CyclicProduct {
    moduli: Vec<u64>,
}

impl CyclicProduct {
    pub fn new(moduli: Vec<u64>) -> Self {
        assert!(moduli.iter().all(|&m| m >= 1), "moduli must be positive");
        CyclicProduct { moduli }
    }

    pub fn moduli(&self) -> &[u64] {
        &self.moduli
    }

    pub fn rank(&self) -> usize {
        self.moduli.len()
    }

    pub fn order(&self) -> usize {
        self.moduli.iter().product::<u64>() as usize
    }

    pub fn exponent(&self) -> u64 {
        self.moduli.iter().fold(1, |a, &b| num_integer::lcm(a, b))
    }

    pub fn reduce(&self, v: &mut [i64]) {
        for (x, &m) in v.iter_mut().zip(&self.moduli) {
            *x = x.rem_euclid(m as i64);
        }
    }

    pub fn index(&self, v: &[i64]) -> usize {
        let mut idx = 0usize;
        let mut stride = 1usize;
        for (&x, &m) in v.iter().zip(&self.moduli) {
            idx += x.rem_euclid(m as i64) as usize * stride;
            stride *= m as usize;
        }
        idx
    }

    pub fn coords(&self, mut idx: usize) -> Vec<i64> {
        self.moduli
            .iter()
            .map(|&m| {
                let x = idx % m as usize;
                idx /= m as usize;
                x as i64
            })
            .collect()
    }

    pub fn group(&self) -> FiniteGroup {
        let m: Vec<usize> = self.moduli.iter().map(|&x| x as usize).collect();
        FiniteGroup::cyclic_product(&m)
    }
}

/// A trivial RRB module `(K, L, trivial action, S)` with `K`, `L` products of
/// cyclic groups and `S` given by an integer matrix acting on coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TrivialModule {
    k: CyclicProduct,
    l: CyclicProduct,
    s: Vec<Vec<i64>>,
}

impl TrivialModule {
    /// `s` has one row per factor of `L` and one column per factor of `K`.
    pub fn new(k: Vec<u64>, l: Vec<u64>, s: Vec<Vec<i64>>) -> Result<Self, CohomologyError> {
        if k.iter().chain(&l).any(|&m| m == 0) {
            return Err(CohomologyError::InvalidModule("moduli must be positive".into()));
        }
        if s.len() != l.len() || s.iter().any(|row| row.len() != k.len()) {
            return Err(CohomologyError::InvalidModule(format!(
                "S must be {}x{}, got {} rows",
                l.len(),
                k.len(),
                s.len()
            )));
        }
        for (i, row) in s.iter().enumerate() {
            for (j, &x) in row.iter().enumerate() {
                if (k[j] as i128 * x as i128).rem_euclid(l[i] as i128) != 0 {
                    return Err(CohomologyError::InvalidModule(format!(
                        "S is not a homomorphism: factor {j} of K has order {} but maps to {x} mod {}",
                        k[j], l[i]
                    )));
                }
            }
        }
        let s = s
            .into_iter()
            .enumerate()
            .map(|(i, row)| row.into_iter().map(|x| x.rem_euclid(l[i] as i64)).collect())
            .collect();
        Ok(TrivialModule { k: CyclicProduct::new(k), l: CyclicProduct::new(l), s })
    }

    /// `(Z/n, Z/n, trivial, id)`.
    pub fn cyclic(n: u64) -> Self {
        Self::new(vec![n], vec![n], vec![vec![1]]).unwrap()
    }

    /// `(Z/2, Z/2, trivial, S)` with `S` the identity or zero.
    pub fn z2_pair(identity: bool) -> Self {
        Self::new(vec![2], vec![2], vec![vec![identity as i64]]).unwrap()
    }

    /// `(Z/d_1 x ... , Z/d_1 x ..., trivial, id)`.
    pub fn diagonal(orders: &[u64]) -> Self {
        let r = orders.len();
        let s = (0..r).map(|i| (0..r).map(|j| (i == j) as i64).collect()).collect();
        Self::new(orders.to_vec(), orders.to_vec(), s).unwrap()
    }

    /// Componentwise product of modules.
    pub fn product(parts: &[TrivialModule]) -> Self {
        let k: Vec<u64> = parts.iter().flat_map(|m| m.k.moduli.iter().copied()).collect();
        let l: Vec<u64> = parts.iter().flat_map(|m| m.l.moduli.iter().copied()).collect();
        let mut s = vec![vec![0i64; k.len()]; l.len()];
        let (mut ro, mut co) = (0, 0);
        for m in parts {
            for (i, row) in m.s.iter().enumerate() {
                for (j, &x) in row.iter().enumerate() {
                    s[ro + i][co + j] = x;
                }
            }
            ro += m.l.rank();
            co += m.k.rank();
        }
        Self::new(k, l, s).expect("product of modules is a module")
    }

    pub fn k(&self) -> &CyclicProduct {
        &self.k
    }

    pub fn l(&self) -> &CyclicProduct {
        &self.l
    }

    pub fn s_matrix(&self) -> &[Vec<i64>] {
        &self.s
    }

    pub fn apply_s(&self, kv: &[i64]) -> Vec<i64> {
        let mut out: Vec<i64> = self.s.iter().map(|row| row.iter().zip(kv).map(|(a, b)| a * b).sum()).collect();
        self.l.reduce(&mut out);
        out
    }

    /// The module as an RRB group, with `S` as the operator.
    pub fn as_rrb(&self) -> RrbGroup {
        let (kg, lg) = (self.k.group(), self.l.group());
        let r = (0..self.k.order()).map(|i| self.l.index(&self.apply_s(&self.k.coords(i)))).collect();
        RrbGroup::trivial_action(kg, lg, r).expect("a homomorphism is an operator for the trivial action")
    }

    pub fn exponent(&self) -> u64 {
        num_integer::lcm(self.k.exponent(), self.l.exponent())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn index_round_trip() {
        let c = CyclicProduct::new(vec![2, 3, 4]);
        for i in 0..c.order() {
            assert_eq!(c.index(&c.coords(i)), i);
        }
        let g = c.group();
        for a in 0..g.order() {
            for b in 0..g.order() {
                let s: Vec<i64> = c.coords(a).iter().zip(c.coords(b)).map(|(x, y)| x + y).collect();
                assert_eq!(c.index(&s), g.mul(a, b));
            }
        }
    }

    #[test]
    fn module_validation() {
        assert!(TrivialModule::new(vec![2], vec![4], vec![vec![1]]).is_err());
        assert!(TrivialModule::new(vec![2], vec![4], vec![vec![2]]).is_ok());
        let p = TrivialModule::product(&[TrivialModule::z2_pair(true), TrivialModule::cyclic(3)]);
        assert_eq!(p.k().moduli(), &[2, 3]);
        assert_eq!(p.apply_s(&[1, 2]), vec![1, 2]);
        assert_eq!(p.as_rrb().h().order(), 6);
    }
}
