use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::snf::smith_normal_form_left;
use super::{smith_normal_form, to_u64, AbElement, FinAbPresentation, IntMatrix, LinalgError};

/// Converts between vectors of a lattice `Z` and coordinates of `Z / B`.
///
/// `Z = U1^-1 diag(d1) Z^r`, and the relations expressed in that basis have
/// Smith form `U2 Q V2 = diag(d2)`.
#[derive(Clone, Debug)]
pub struct SubquotientSolver {
    n: usize,
    u1: IntMatrix,
    u1_inv: IntMatrix,
    d1: Vec<BigInt>,
    u2: IntMatrix,
    u2_inv: IntMatrix,
    d2: Vec<BigInt>,
    keep: Vec<usize>,
    presentation: FinAbPresentation,
}

impl SubquotientSolver {
    pub fn presentation(&self) -> &FinAbPresentation {
        &self.presentation
    }

    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    fn lattice_coords(&self, x: &[BigInt]) -> Result<Vec<BigInt>, LinalgError> {
        if x.len() != self.n {
            return Err(LinalgError::DimensionMismatch(format!("vector of length {} for ambient {}", x.len(), self.n)));
        }
        let w = self.u1.mul_vec(x);
        let r = self.d1.len();
        let mut y = Vec::with_capacity(r);
        for (i, wi) in w.iter().enumerate() {
            if i < r {
                let (q, rem) = wi.div_rem(&self.d1[i]);
                if !rem.is_zero() {
                    return Err(LinalgError::NotInSubgroup);
                }
                y.push(q);
            } else if !wi.is_zero() {
                return Err(LinalgError::NotInSubgroup);
            }
        }
        Ok(y)
    }

    /// Class of `x` in `Z / B`; fails with `NotInSubgroup` when `x` is not in `Z`.
    pub fn coordinates(&self, x: &[BigInt]) -> Result<AbElement, LinalgError> {
        let y = self.lattice_coords(x)?;
        let c = self.u2.mul_vec(&y);
        let mut out = Vec::with_capacity(self.keep.len());
        for &i in &self.keep {
            let d = &self.d2[i];
            let v = if d.is_zero() { c[i].clone() } else { c[i].mod_floor(d) };
            // free summands wrap in two's complement
            out.push(match v.to_u64() {
                Some(u) => u,
                None => v.to_i64().ok_or(LinalgError::Overflow)? as u64,
            });
        }
        Ok(AbElement(out))
    }

    pub fn coordinates_i64(&self, x: &[i64]) -> Result<AbElement, LinalgError> {
        let v: Vec<BigInt> = x.iter().map(|&a| BigInt::from(a)).collect();
        self.coordinates(&v)
    }

    /// A vector of `Z` representing the given class.
    pub fn lift(&self, e: &AbElement) -> Vec<BigInt> {
        assert_eq!(e.0.len(), self.keep.len(), "element has wrong rank");
        let r = self.d1.len();
        let mut full = vec![BigInt::zero(); r];
        for (k, &i) in self.keep.iter().enumerate() {
            full[i] = BigInt::from(e.0[k]);
        }
        let y = self.u2_inv.mul_vec(&full);
        let mut scaled = vec![BigInt::zero(); self.n];
        for i in 0..r {
            scaled[i] = &y[i] * &self.d1[i];
        }
        self.u1_inv.mul_vec(&scaled)
    }
}

fn with_moduli(m: &IntMatrix, moduli: &[BigInt]) -> IntMatrix {
    let extra: Vec<usize> = (0..moduli.len()).filter(|&i| !moduli[i].is_zero()).collect();
    let mut d = IntMatrix::zeros(m.rows(), extra.len());
    for (j, &i) in extra.iter().enumerate() {
        d.set(i, j, moduli[i].abs());
    }
    m.hstack(&d)
}

/// Structure of `(Z + D) / (B + D)` where `Z`, `B` are spanned by the columns
/// of `z_gens`, `b_gens` and `D` is spanned by `moduli[i] e_i` (0 = no modulus).
/// Requires `B` to lie in `Z + D`.
pub fn subquotient_structure(
    z_gens: &IntMatrix,
    b_gens: &IntMatrix,
    moduli: &[BigInt],
) -> Result<(FinAbPresentation, SubquotientSolver), LinalgError> {
    let n = z_gens.rows();
    if b_gens.rows() != n || (!moduli.is_empty() && moduli.len() != n) {
        return Err(LinalgError::DimensionMismatch(format!(
            "Z has {} rows, B has {}, {} moduli",
            n,
            b_gens.rows(),
            moduli.len()
        )));
    }
    let zfull = with_moduli(z_gens, moduli);
    let s1 = smith_normal_form_left(&zfull);
    let r = s1.rank;
    let d1: Vec<BigInt> = s1.diagonal().into_iter().take(r).collect();
    let bfull = with_moduli(b_gens, moduli);
    let mut q = IntMatrix::zeros(r, bfull.cols());
    let proto = SubquotientSolver {
        n,
        u1: s1.u,
        u1_inv: s1.u_inv,
        d1,
        u2: IntMatrix::identity(r),
        u2_inv: IntMatrix::identity(r),
        d2: Vec::new(),
        keep: Vec::new(),
        presentation: FinAbPresentation::trivial(),
    };
    for j in 0..bfull.cols() {
        let col = bfull.column(j);
        if col.iter().all(|x| x.is_zero()) {
            continue;
        }
        let y = proto.lattice_coords(&col)?;
        for (i, v) in y.into_iter().enumerate() {
            q.set(i, j, v);
        }
    }
    let s2 = smith_normal_form_left(&q);
    let mut d2 = s2.diagonal();
    d2.resize(r, BigInt::zero());
    let keep: Vec<usize> = (0..r).filter(|&i| !d2[i].is_one()).collect();
    let factors = keep.iter().map(|&i| to_u64(&d2[i])).collect::<Result<Vec<_>, _>>()?;
    let presentation = FinAbPresentation::new(factors);
    debug_assert_eq!(presentation.rank(), keep.len());
    let solver = SubquotientSolver { u2: s2.u, u2_inv: s2.u_inv, d2, keep, presentation: presentation.clone(), ..proto };
    Ok((presentation, solver))
}

/// Solves `M x == b` with row `i` taken modulo `moduli[i]` (0 = exact).
/// Returns `Ok(None)` when there is no solution.
pub fn solve_mod(m: &IntMatrix, b: &[BigInt], moduli: &[BigInt]) -> Result<Option<Vec<BigInt>>, LinalgError> {
    if b.len() != m.rows() || moduli.len() != m.rows() {
        return Err(LinalgError::DimensionMismatch(format!(
            "{} rows, rhs of length {}, {} moduli",
            m.rows(),
            b.len(),
            moduli.len()
        )));
    }
    let a = with_moduli(m, moduli);
    let s = smith_normal_form(&a);
    let c = s.u.mul_vec(b);
    let diag = s.diagonal();
    let mut y = vec![BigInt::zero(); a.cols()];
    for (i, ci) in c.iter().enumerate() {
        if i < s.rank {
            let (qt, rem) = ci.div_rem(&diag[i]);
            if !rem.is_zero() {
                return Ok(None);
            }
            y[i] = qt;
        } else if !ci.is_zero() {
            return Ok(None);
        }
    }
    let z = s.v.mul_vec(&y);
    let x: Vec<BigInt> = z[..m.cols()].to_vec();
    let check = m.mul_vec(&x);
    for i in 0..m.rows() {
        let diff = &check[i] - &b[i];
        let ok = if moduli[i].is_zero() { diff.is_zero() } else { diff.is_multiple_of(&moduli[i]) };
        assert!(ok, "solve_mod produced a non-solution");
    }
    Ok(Some(x))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bi(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn subquotient_examples() {
        // Z = (Z/2)^2, B = 0
        let (p, _) =
            subquotient_structure(&IntMatrix::identity(2), &IntMatrix::zeros(2, 0), &bi(&[2, 2])).unwrap();
        assert_eq!(p.factors(), &[2, 2]);
        // Z = Z^2, B = image of diag(2,2), no moduli
        let (p, _) = subquotient_structure(
            &IntMatrix::identity(2),
            &IntMatrix::from_rows_i64(&[vec![2, 0], vec![0, 2]]),
            &[],
        )
        .unwrap();
        assert_eq!(p.factors(), &[2, 2]);
        // Z = B
        let z = IntMatrix::from_rows_i64(&[vec![3, 1], vec![0, 2]]);
        let (p, _) = subquotient_structure(&z, &z, &[]).unwrap();
        assert_eq!(p.order(), Some(1));
    }

    #[test]
    fn round_trip_and_membership() {
        let z = IntMatrix::from_rows_i64(&[vec![2, 0, 1], vec![0, 3, 1], vec![0, 0, 0]]);
        let b = IntMatrix::from_rows_i64(&[vec![4], vec![0], vec![0]]);
        let (p, s) = subquotient_structure(&z, &b, &bi(&[12, 12, 5])).unwrap();
        for e in p.elements() {
            let x = s.lift(&e);
            assert_eq!(s.coordinates(&x).unwrap(), e);
        }
        assert_eq!(s.coordinates(&bi(&[0, 0, 1])), Err(LinalgError::NotInSubgroup));
    }

    #[test]
    fn solve_mod_examples() {
        let m = IntMatrix::from_rows_i64(&[vec![2]]);
        assert_eq!(solve_mod(&m, &bi(&[1]), &bi(&[4])).unwrap(), None);
        let x = solve_mod(&m, &bi(&[2]), &bi(&[4])).unwrap().unwrap();
        let r = x[0].mod_floor(&BigInt::from(4));
        assert!(r == BigInt::from(1) || r == BigInt::from(3));
        assert!(matches!(solve_mod(&m, &bi(&[1, 2]), &bi(&[4])), Err(LinalgError::DimensionMismatch(_))));
    }
}
