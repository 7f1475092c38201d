//! Fraction-free determinants and exact rational linear algebra.

use super::scalar::{Domain, Rat};
use num_traits::Zero;

/// Determinant by Bareiss elimination. Stays inside the domain: every
/// division is exact. `mat` must be square.
pub fn det_bareiss<D: Domain>(mat: &[Vec<D>]) -> D {
    let n = mat.len();
    if n == 0 {
        return D::one();
    }
    debug_assert!(mat.iter().all(|r| r.len() == n));
    let mut m: Vec<Vec<D>> = mat.to_vec();
    let mut sign_neg = false;
    let mut prev = D::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(r) = (k + 1..n).find(|&r| !m[r][k].is_zero()) else {
                return D::zero();
            };
            m.swap(k, r);
            sign_neg = !sign_neg;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = m[k][k].clone() * m[i][j].clone() - m[i][k].clone() * m[k][j].clone();
                m[i][j] = t.exact_div(&prev);
            }
            m[i][k] = D::zero();
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if sign_neg {
        -det
    } else {
        det
    }
}

/// Solve `a * x = b` for square `a` over `Q`. Returns `None` when `a` is
/// singular.
pub fn solve_linear(a: &[Vec<Rat>], b: &[Rat]) -> Option<Vec<Rat>> {
    let n = a.len();
    debug_assert_eq!(b.len(), n);
    let mut m: Vec<Vec<Rat>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    for k in 0..n {
        let r = (k..n).find(|&r| !m[r][k].is_zero())?;
        m.swap(k, r);
        let piv = m[k][k].clone();
        for j in k..=n {
            m[k][j] = &m[k][j] / &piv;
        }
        for i in 0..n {
            if i != k && !m[i][k].is_zero() {
                let f = m[i][k].clone();
                for j in k..=n {
                    let t = &m[i][j] - &f * &m[k][j];
                    m[i][j] = t;
                }
            }
        }
    }
    Some(m.into_iter().map(|row| row[n].clone()).collect())
}

/// Incremental row space over `Q` with expression tracking: every echelon row
/// remembers its combination in terms of the originally inserted vectors.
#[derive(Debug, Clone)]
pub struct RowSpace {
    dim: usize,
    rows: Vec<Vec<Rat>>,
    pivots: Vec<usize>,
    combos: Vec<Vec<Rat>>,
    n_inserted: usize,
}

impl RowSpace {
    pub fn new(dim: usize) -> Self {
        RowSpace { dim, rows: Vec::new(), pivots: Vec::new(), combos: Vec::new(), n_inserted: 0 }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduce `v` against the stored rows. Returns the residual and the
    /// coefficients of inserted vectors with `v = combo . inserted + residual`.
    fn reduce(&self, v: &[Rat]) -> (Vec<Rat>, Vec<Rat>) {
        debug_assert_eq!(v.len(), self.dim);
        let mut res = v.to_vec();
        let mut combo = vec![Rat::zero(); self.n_inserted];
        for (row, (piv, rcombo)) in self.rows.iter().zip(self.pivots.iter().zip(&self.combos)) {
            let f = res[*piv].clone();
            if f.is_zero() {
                continue;
            }
            for j in 0..self.dim {
                let t = &res[j] - &f * &row[j];
                res[j] = t;
            }
            for (c, rc) in combo.iter_mut().zip(rcombo) {
                let t = &*c + &f * rc;
                *c = t;
            }
        }
        (res, combo)
    }

    /// Insert a vector; returns true when it enlarged the span.
    pub fn insert(&mut self, v: &[Rat]) -> bool {
        let (res, combo) = self.reduce(v);
        self.n_inserted += 1;
        for c in self.combos.iter_mut() {
            c.push(Rat::zero());
        }
        let Some(piv) = res.iter().position(|c| !c.is_zero()) else {
            return false;
        };
        let p = res[piv].clone();
        let row: Vec<Rat> = res.iter().map(|c| c / &p).collect();
        // res = v - combo . inserted, so row = (v - combo . inserted) / p.
        let mut rcombo = vec![Rat::zero(); self.n_inserted];
        for (rc, c) in rcombo.iter_mut().zip(&combo) {
            *rc = -(c / &p);
        }
        rcombo[self.n_inserted - 1] = p.recip();
        let at = self.pivots.iter().position(|&q| q > piv).unwrap_or(self.rows.len());
        self.rows.insert(at, row);
        self.pivots.insert(at, piv);
        self.combos.insert(at, rcombo);
        true
    }

    /// Coefficients of `v` over the inserted vectors, if `v` is in the span.
    pub fn express(&self, v: &[Rat]) -> Option<Vec<Rat>> {
        let (res, combo) = self.reduce(v);
        if res.iter().all(|c| c.is_zero()) {
            Some(combo)
        } else {
            None
        }
    }

    pub fn contains(&self, v: &[Rat]) -> bool {
        self.reduce(v).0.iter().all(|c| c.is_zero())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::scalar::rat_int;
    use num_bigint::BigInt;

    fn imat(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
    }

    #[test]
    fn bareiss_matches_cofactor_on_small_integer_matrices() {
        fn det_cofactor(m: &[Vec<BigInt>]) -> BigInt {
            let n = m.len();
            if n == 0 {
                return BigInt::from(1);
            }
            if n == 1 {
                return m[0][0].clone();
            }
            let mut acc = BigInt::from(0);
            for (j, c) in m[0].iter().enumerate() {
                let minor: Vec<Vec<BigInt>> = m[1..]
                    .iter()
                    .map(|row| {
                        row.iter().enumerate().filter(|(k, _)| *k != j).map(|(_, v)| v.clone()).collect()
                    })
                    .collect();
                let term = c * det_cofactor(&minor);
                if j % 2 == 0 {
                    acc += term;
                } else {
                    acc -= term;
                }
            }
            acc
        }

        let cases = [
            imat(&[&[2]]),
            imat(&[&[1, 2], &[3, 4]]),
            imat(&[&[0, 1, 2], &[3, 0, 4], &[5, 6, 0]]),
            imat(&[&[2, -1, 0, 0], &[-1, 2, -1, 0], &[0, -1, 2, -1], &[0, 0, -1, 2]]),
            imat(&[&[0, 0, 1], &[0, 1, 0], &[1, 0, 0]]),
            imat(&[&[1, 1, 1], &[2, 2, 2], &[3, 3, 3]]),
        ];
        for m in &cases {
            assert_eq!(det_bareiss(m), det_cofactor(m));
        }
    }

    #[test]
    fn solve_linear_recovers_known_solution() {
        let a: Vec<Vec<Rat>> = vec![
            vec![rat_int(2), rat_int(1)],
            vec![rat_int(1), rat_int(3)],
        ];
        let x = vec![rat_int(4), rat_int(-1)];
        let b: Vec<Rat> = vec![
            &a[0][0] * &x[0] + &a[0][1] * &x[1],
            &a[1][0] * &x[0] + &a[1][1] * &x[1],
        ];
        assert_eq!(solve_linear(&a, &b), Some(x));

        let sing: Vec<Vec<Rat>> = vec![
            vec![rat_int(1), rat_int(2)],
            vec![rat_int(2), rat_int(4)],
        ];
        assert_eq!(solve_linear(&sing, &[rat_int(1), rat_int(1)]), None);
    }

    #[test]
    fn rowspace_tracks_expressions() {
        let mut rs = RowSpace::new(3);
        let v1 = vec![rat_int(1), rat_int(2), rat_int(0)];
        let v2 = vec![rat_int(0), rat_int(1), rat_int(1)];
        assert!(rs.insert(&v1));
        assert!(rs.insert(&v2));
        // 2*v1 - 3*v2
        let w = vec![rat_int(2), rat_int(1), rat_int(-3)];
        let c = rs.express(&w).unwrap();
        assert_eq!(c, vec![rat_int(2), rat_int(-3)]);
        assert!(!rs.insert(&w));
        assert_eq!(rs.rank(), 2);
        assert!(!rs.contains(&[rat_int(0), rat_int(0), rat_int(1)]));
    }
}
