/// One linear congruence `sum coeff * x[var] == 0 (mod modulus)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModConstraint {
    pub terms: Vec<(usize, i64)>,
    pub modulus: u64,
}

impl ModConstraint {
    /// Merges repeated variables and drops zero coefficients.
    pub fn normalized(mut terms: Vec<(usize, i64)>, modulus: u64) -> Self {
        terms.sort_unstable_by_key(|t| t.0);
        let mut out: Vec<(usize, i64)> = Vec::with_capacity(terms.len());
        for (v, c) in terms {
            match out.last_mut() {
                Some(last) if last.0 == v => last.1 += c,
                _ => out.push((v, c)),
            }
        }
        let m = modulus as i64;
        out.retain(|&(_, c)| m != 0 && c.rem_euclid(m) != 0);
        ModConstraint { terms: out, modulus }
    }

    pub fn holds(&self, x: &[i64]) -> bool {
        let s: i128 = self.terms.iter().map(|&(v, c)| c as i128 * x[v] as i128).sum();
        s.rem_euclid(self.modulus as i128) == 0
    }
}

fn xgcd(a: i128, b: i128) -> (i128, i128, i128) {
    let (mut r0, mut r1) = (a, b);
    let (mut s0, mut s1) = (1i128, 0i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0.div_euclid(r1);
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 < 0 {
        (-r0, -s0, -t0)
    } else {
        (r0, s0, t0)
    }
}

/// Generators of the lattice `{x in Z^n : every constraint holds}`.
///
/// The lattice always contains `M Z^n`, where `M` is the lcm of the variable
/// and constraint moduli, provided each variable modulus annihilates the
/// constraints (which holds for homomorphisms between cyclic products). The
/// returned `n` columns generate the lattice together with `M Z^n`, and their
/// entries lie in `[0, M)`.
pub fn kernel_generators(var_moduli: &[u64], constraints: &[ModConstraint]) -> Vec<Vec<i64>> {
    let n = var_moduli.len();
    let big_m = var_moduli
        .iter()
        .chain(constraints.iter().map(|c| &c.modulus))
        .fold(1u64, |a, &b| num_integer::lcm(a, b.max(1))) as i128;
    assert!(big_m < (1i128 << 40), "modulus lcm too large for the lattice kernel");
    let mut cols: Vec<Vec<i128>> = (0..n)
        .map(|j| {
            let mut c = vec![0i128; n];
            c[j] = 1 % big_m;
            c
        })
        .collect();
    let mut vals = vec![0i128; n];
    for con in constraints {
        let w = con.modulus as i128;
        if w <= 1 || con.terms.is_empty() {
            continue;
        }
        for (j, col) in cols.iter().enumerate() {
            let s: i128 = con.terms.iter().map(|&(v, c)| c as i128 * col[v]).sum();
            vals[j] = s.rem_euclid(w);
        }
        let Some(p) = vals.iter().position(|&x| x != 0) else { continue };
        for j in p + 1..n {
            if vals[j] == 0 {
                continue;
            }
            let (g, s, t) = xgcd(vals[p], vals[j]);
            let (a, b) = (vals[p] / g, vals[j] / g);
            let (lo, hi) = cols.split_at_mut(j);
            let (cp, cj) = (&mut lo[p], &mut hi[0]);
            for i in 0..n {
                let (x, y) = (cp[i], cj[i]);
                cp[i] = (s * x + t * y).rem_euclid(big_m);
                cj[i] = (a * y - b * x).rem_euclid(big_m);
            }
            vals[p] = g;
            vals[j] = 0;
        }
        let factor = w / num_integer::gcd(vals[p], w);
        for x in cols[p].iter_mut() {
            *x = (*x * factor).rem_euclid(big_m);
        }
    }
    cols.into_iter().map(|c| c.into_iter().map(|x| x as i64).collect()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_congruence() {
        // 2x == 0 mod 4 over Z/4: x in {0, 2}
        let cols = kernel_generators(&[4], &[ModConstraint::normalized(vec![(0, 2)], 4)]);
        assert_eq!(cols, vec![vec![2]]);
    }

    #[test]
    fn generators_satisfy_constraints() {
        let cons = vec![
            ModConstraint::normalized(vec![(0, 1), (1, 1), (2, 3)], 6),
            ModConstraint::normalized(vec![(1, 2), (2, 4)], 6),
        ];
        let cols = kernel_generators(&[6, 6, 6], &cons);
        for c in &cols {
            assert!(cons.iter().all(|k| k.holds(c)));
        }
        // brute force count of solutions mod 6
        let mut count = 0;
        for x in 0..6 {
            for y in 0..6 {
                for z in 0..6 {
                    if cons.iter().all(|k| k.holds(&[x, y, z])) {
                        count += 1;
                    }
                }
            }
        }
        // the generated subgroup of (Z/6)^3 has the same size
        let mut seen = std::collections::HashSet::new();
        seen.insert(vec![0i64; 3]);
        let mut frontier = vec![vec![0i64; 3]];
        while let Some(v) = frontier.pop() {
            for c in &cols {
                let w: Vec<i64> = v.iter().zip(c).map(|(a, b)| (a + b).rem_euclid(6)).collect();
                if seen.insert(w.clone()) {
                    frontier.push(w);
                }
            }
        }
        assert_eq!(seen.len(), count);
    }
}
