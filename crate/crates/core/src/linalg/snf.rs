use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::IntMatrix;

/// Smith normal form `U * M * V = D` with `U`, `V` unimodular.
#[derive(Clone, Debug)]
pub struct Snf {
    pub u: IntMatrix,
    pub u_inv: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
    pub rank: usize,
}

impl Snf {
    /// Diagonal entries `d_0 | d_1 | ...`, length `min(rows, cols)`.
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.d.rows().min(self.d.cols())).map(|i| self.d.get(i, i).clone()).collect()
    }
}

struct Work {
    a: Vec<Vec<BigInt>>,
    u: Vec<Vec<BigInt>>,
    u_inv: Vec<Vec<BigInt>>,
    v: Vec<Vec<BigInt>>,
    track_v: bool,
}

fn axpy(rows: &mut [Vec<BigInt>], dst: usize, src: usize, q: &BigInt) {
    // rows[dst] += q * rows[src]
    let (d, s) = if dst < src {
        let (lo, hi) = rows.split_at_mut(src);
        (&mut lo[dst], &hi[0])
    } else {
        let (lo, hi) = rows.split_at_mut(dst);
        (&mut hi[0], &lo[src])
    };
    for (x, y) in d.iter_mut().zip(s.iter()) {
        if !y.is_zero() {
            *x += q * y;
        }
    }
}

fn col_axpy(rows: &mut [Vec<BigInt>], dst: usize, src: usize, q: &BigInt) {
    for r in rows.iter_mut() {
        if !r[src].is_zero() {
            let t = q * &r[src];
            r[dst] += t;
        }
    }
}

fn col_swap(rows: &mut [Vec<BigInt>], i: usize, j: usize) {
    for r in rows.iter_mut() {
        r.swap(i, j);
    }
}

impl Work {
    // row_i += q row_j
    fn row_add(&mut self, i: usize, j: usize, q: &BigInt) {
        axpy(&mut self.a, i, j, q);
        axpy(&mut self.u, i, j, q);
        let mq = -q;
        col_axpy(&mut self.u_inv, j, i, &mq);
    }

    fn row_swap(&mut self, i: usize, j: usize) {
        self.a.swap(i, j);
        self.u.swap(i, j);
        col_swap(&mut self.u_inv, i, j);
    }

    fn row_neg(&mut self, i: usize) {
        for x in self.a[i].iter_mut() {
            *x = -&*x;
        }
        for x in self.u[i].iter_mut() {
            *x = -&*x;
        }
        for r in self.u_inv.iter_mut() {
            r[i] = -&r[i];
        }
    }

    // col_i += q col_j
    fn col_add(&mut self, i: usize, j: usize, q: &BigInt) {
        col_axpy(&mut self.a, i, j, q);
        if self.track_v {
            col_axpy(&mut self.v, i, j, q);
        }
    }

    fn col_swap(&mut self, i: usize, j: usize) {
        col_swap(&mut self.a, i, j);
        if self.track_v {
            col_swap(&mut self.v, i, j);
        }
    }
}

fn to_rows(m: &IntMatrix) -> Vec<Vec<BigInt>> {
    (0..m.rows()).map(|r| m.row(r).to_vec()).collect()
}

fn from_rows(rows: Vec<Vec<BigInt>>, cols: usize) -> IntMatrix {
    let mut m = IntMatrix::zeros(rows.len(), cols);
    for (i, r) in rows.into_iter().enumerate() {
        for (j, x) in r.into_iter().enumerate() {
            m.set(i, j, x);
        }
    }
    m
}

fn identity_rows(n: usize) -> Vec<Vec<BigInt>> {
    to_rows(&IntMatrix::identity(n))
}

pub fn smith_normal_form(m: &IntMatrix) -> Snf {
    snf_impl(m, true)
}

/// Same as [`smith_normal_form`] but leaves `v` as the identity.
pub(crate) fn smith_normal_form_left(m: &IntMatrix) -> Snf {
    snf_impl(m, false)
}

fn snf_impl(m: &IntMatrix, track_v: bool) -> Snf {
    let (nr, nc) = (m.rows(), m.cols());
    let mut w = Work {
        a: to_rows(m),
        u: identity_rows(nr),
        u_inv: identity_rows(nr),
        v: if track_v { identity_rows(nc) } else { Vec::new() },
        track_v,
    };
    let mut rank = 0;
    for t in 0..nr.min(nc) {
        // Pick the smallest nonzero entry in the trailing block.
        let mut found = false;
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..nr {
                for j in t..nc {
                    let x = &w.a[i][j];
                    if x.is_zero() {
                        continue;
                    }
                    match best {
                        Some((bi, bj)) if w.a[bi][bj].abs() <= x.abs() => {}
                        _ => best = Some((i, j)),
                    }
                }
                if let Some((bi, bj)) = best {
                    if w.a[bi][bj].abs() == BigInt::from(1) {
                        break;
                    }
                }
            }
            let Some((pi, pj)) = best else { break };
            found = true;
            if pi != t {
                w.row_swap(pi, t);
            }
            if pj != t {
                w.col_swap(pj, t);
            }
            let mut clean = true;
            for i in t + 1..nr {
                if w.a[i][t].is_zero() {
                    continue;
                }
                let q = -(w.a[i][t].div_floor(&w.a[t][t]));
                w.row_add(i, t, &q);
                if !w.a[i][t].is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..nc {
                if w.a[t][j].is_zero() {
                    continue;
                }
                let q = -(w.a[t][j].div_floor(&w.a[t][t]));
                w.col_add(j, t, &q);
                if !w.a[t][j].is_zero() {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            let p = w.a[t][t].clone();
            let bad = (t + 1..nr).find(|&i| (t + 1..nc).any(|j| !w.a[i][j].is_multiple_of(&p)));
            match bad {
                Some(i) => {
                    let one = BigInt::from(1);
                    w.row_add(t, i, &one);
                }
                None => break,
            }
        }
        if !found {
            break;
        }
        if w.a[t][t].is_negative() {
            w.row_neg(t);
        }
        rank = t + 1;
    }
    let v = if track_v { from_rows(w.v, nc) } else { IntMatrix::identity(nc) };
    Snf { u: from_rows(w.u, nr), u_inv: from_rows(w.u_inv, nr), d: from_rows(w.a, nc), v, rank }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(m: &IntMatrix) -> Snf {
        let s = smith_normal_form(m);
        assert_eq!(s.u.mul(m).unwrap().mul(&s.v).unwrap(), s.d);
        assert_eq!(s.u.mul(&s.u_inv).unwrap(), IntMatrix::identity(m.rows()));
        assert!(s.d.is_diagonal());
        let diag = s.diagonal();
        for i in 0..diag.len() {
            assert!(!diag[i].is_negative());
            if i + 1 < diag.len() && !diag[i].is_zero() {
                assert!(diag[i + 1].is_multiple_of(&diag[i]));
            }
        }
        s
    }

    #[test]
    fn diag_2_3() {
        let s = check(&IntMatrix::from_rows_i64(&[vec![2, 0], vec![0, 3]]));
        assert_eq!(s.diagonal(), vec![BigInt::from(1), BigInt::from(6)]);
    }

    #[test]
    fn rectangular_and_rank_deficient() {
        let s = check(&IntMatrix::from_rows_i64(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]));
        assert_eq!(s.diagonal(), vec![BigInt::from(2), BigInt::from(6), BigInt::from(12)]);
        let s = check(&IntMatrix::from_rows_i64(&[vec![1, 2], vec![2, 4], vec![3, 6]]));
        assert_eq!(s.rank, 1);
        check(&IntMatrix::zeros(2, 3));
    }
}
