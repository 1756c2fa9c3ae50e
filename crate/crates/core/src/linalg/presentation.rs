use std::collections::BTreeMap;
use std::fmt;

/// A finitely generated abelian group `Z/d_1 + ... + Z/d_k`.
///
/// Factors equal to 1 are never stored; a factor 0 stands for a free summand.
/// Factors produced by Smith normal form satisfy `d_i | d_{i+1}`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct FinAbPresentation {
    factors: Vec<u64>,
}

/// Coordinates with respect to a [`FinAbPresentation`], each reduced modulo its factor.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AbElement(pub Vec<u64>);

impl fmt::Debug for FinAbPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for FinAbPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> =
            self.factors.iter().map(|&d| if d == 0 { "Z".to_string() } else { format!("Z/{d}") }).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl FinAbPresentation {
    pub fn new(factors: Vec<u64>) -> Self {
        FinAbPresentation { factors: factors.into_iter().filter(|&d| d != 1).collect() }
    }

    pub fn trivial() -> Self {
        Self::default()
    }

    pub fn factors(&self) -> &[u64] {
        &self.factors
    }

    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    pub fn is_finite(&self) -> bool {
        self.factors.iter().all(|&d| d != 0)
    }

    pub fn order(&self) -> Option<u64> {
        if self.is_finite() {
            Some(self.factors.iter().product())
        } else {
            None
        }
    }

    pub fn exponent(&self) -> Option<u64> {
        if self.is_finite() {
            Some(self.factors.iter().fold(1, |a, &b| num_integer::lcm(a, b)))
        } else {
            None
        }
    }

    /// Canonical invariant factors, so that isomorphic groups compare equal.
    pub fn canonical(&self) -> FinAbPresentation {
        FinAbPresentation { factors: invariant_factors(&self.factors) }
    }

    pub fn is_isomorphic(&self, other: &FinAbPresentation) -> bool {
        self.canonical() == other.canonical()
    }

    pub fn direct_sum(&self, other: &FinAbPresentation) -> FinAbPresentation {
        let mut f = self.factors.clone();
        f.extend_from_slice(&other.factors);
        FinAbPresentation { factors: f }
    }

    pub fn zero(&self) -> AbElement {
        AbElement(vec![0; self.factors.len()])
    }

    pub fn unit(&self, i: usize) -> AbElement {
        let mut e = self.zero();
        e.0[i] = 1;
        e
    }

    pub fn reduce_i128(&self, coords: &[i128]) -> AbElement {
        AbElement(
            coords
                .iter()
                .zip(&self.factors)
                .map(|(&c, &d)| if d == 0 { c as u64 } else { c.rem_euclid(d as i128) as u64 })
                .collect(),
        )
    }

    pub fn add(&self, a: &AbElement, b: &AbElement) -> AbElement {
        let v: Vec<i128> = a.0.iter().zip(&b.0).map(|(&x, &y)| x as i128 + y as i128).collect();
        self.reduce_i128(&v)
    }

    pub fn neg(&self, a: &AbElement) -> AbElement {
        let v: Vec<i128> = a.0.iter().map(|&x| -(x as i128)).collect();
        self.reduce_i128(&v)
    }

    pub fn scale(&self, k: i64, a: &AbElement) -> AbElement {
        let v: Vec<i128> = a.0.iter().map(|&x| k as i128 * x as i128).collect();
        self.reduce_i128(&v)
    }

    pub fn is_zero(a: &AbElement) -> bool {
        a.0.iter().all(|&x| x == 0)
    }

    /// Order of an element of a finite presentation.
    pub fn element_order(&self, a: &AbElement) -> u64 {
        a.0.iter()
            .zip(&self.factors)
            .map(|(&x, &d)| if x == 0 { 1 } else { d / num_integer::gcd(x, d) })
            .fold(1, num_integer::lcm)
    }

    /// All elements of a finite presentation in lexicographic order.
    pub fn elements(&self) -> Vec<AbElement> {
        assert!(self.is_finite(), "cannot list an infinite group");
        let mut out = vec![self.zero()];
        for (i, &d) in self.factors.iter().enumerate() {
            let mut next = Vec::with_capacity(out.len() * d as usize);
            for e in &out {
                for x in 0..d {
                    let mut f = e.clone();
                    f.0[i] = x;
                    next.push(f);
                }
            }
            out = next;
        }
        out.sort();
        out
    }

    /// Number of elements of each order.
    pub fn order_profile(&self) -> BTreeMap<u64, u64> {
        let mut m = BTreeMap::new();
        for e in self.elements() {
            *m.entry(self.element_order(&e)).or_insert(0) += 1;
        }
        m
    }
}

fn prime_powers(mut n: u64) -> Vec<(u64, u64)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            let mut q = 1;
            while n % p == 0 {
                n /= p;
                q *= p;
            }
            out.push((p, q));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, n));
    }
    out
}

/// Invariant factors `d_1 | d_2 | ...` (ones dropped, free summands last) of
/// the direct sum of cyclic groups of the given orders.
pub fn invariant_factors(orders: &[u64]) -> Vec<u64> {
    let free = orders.iter().filter(|&&d| d == 0).count();
    let mut by_prime: BTreeMap<u64, Vec<u64>> = BTreeMap::new();
    for &d in orders.iter().filter(|&&d| d > 1) {
        for (p, q) in prime_powers(d) {
            by_prime.entry(p).or_default().push(q);
        }
    }
    let len = by_prime.values().map(|v| v.len()).max().unwrap_or(0);
    let mut out = vec![1u64; len];
    for powers in by_prime.values_mut() {
        powers.sort_unstable_by(|a, b| b.cmp(a));
        for (i, &q) in powers.iter().enumerate() {
            out[len - 1 - i] *= q;
        }
    }
    out.extend(std::iter::repeat(0).take(free));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_forms() {
        assert_eq!(invariant_factors(&[2, 3]), vec![6]);
        assert_eq!(invariant_factors(&[4, 2, 1]), vec![2, 4]);
        assert_eq!(invariant_factors(&[6, 4]), vec![2, 12]);
        let a = FinAbPresentation::new(vec![2, 3]);
        assert!(a.is_isomorphic(&FinAbPresentation::new(vec![6])));
        assert!(!FinAbPresentation::new(vec![2, 2]).is_isomorphic(&FinAbPresentation::new(vec![4])));
    }

    #[test]
    fn element_arithmetic() {
        let p = FinAbPresentation::new(vec![2, 4]);
        assert_eq!(p.elements().len(), 8);
        let x = AbElement(vec![1, 3]);
        assert_eq!(p.element_order(&x), 4);
        assert_eq!(p.add(&x, &x), AbElement(vec![0, 2]));
        assert!(FinAbPresentation::is_zero(&p.add(&x, &p.neg(&x))));
        assert_eq!(p.order_profile()[&2], 3);
    }
}
