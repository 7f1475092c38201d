//! Dense univariate polynomials over a coefficient field.

use super::scalar::{Domain, Field};
use num_traits::{One, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Coefficients ascending by exponent, no trailing zeros.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct UniPoly<K> {
    coeffs: Vec<K>,
}

impl<K: Field> UniPoly<K> {
    pub fn new(mut coeffs: Vec<K>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn constant(c: K) -> Self {
        Self::new(vec![c])
    }

    pub fn monomial(c: K, e: usize) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![K::zero(); e + 1];
        coeffs[e] = c;
        UniPoly { coeffs }
    }

    /// `t` itself.
    pub fn var() -> Self {
        Self::monomial(K::one(), 1)
    }

    pub fn coeffs(&self) -> &[K] {
        &self.coeffs
    }

    /// Degree; `None` for the zero polynomial.
    pub fn deg(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn coeff(&self, i: usize) -> K {
        self.coeffs.get(i).cloned().unwrap_or_else(K::zero)
    }

    pub fn lc(&self) -> &K {
        self.coeffs.last().expect("leading coefficient of zero polynomial")
    }

    pub fn eval(&self, x: &K) -> K {
        let mut acc = K::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x.clone() + c.clone();
        }
        acc
    }

    /// Substitute another polynomial for the variable.
    pub fn compose(&self, other: &Self) -> Self {
        let mut acc = Self::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * other.clone() + Self::constant(c.clone());
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return Self::zero();
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| {
                let mut acc = K::zero();
                for _ in 0..i {
                    acc = acc + c.clone();
                }
                acc
            })
            .collect();
        Self::new(coeffs)
    }

    pub fn mul_scalar(&self, s: &K) -> Self {
        Self::new(self.coeffs.iter().map(|c| c.clone() * s.clone()).collect())
    }

    pub fn monic(&self) -> Self {
        assert!(!self.is_zero(), "monic of zero polynomial");
        let inv = self.lc().inv().expect("leading coefficient not invertible");
        self.mul_scalar(&inv)
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn divrem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let dd = d.deg().unwrap();
        let dlc_inv = d.lc().inv().expect("divisor leading coefficient not invertible");
        let mut rem = self.coeffs.clone();
        if rem.len() < dd + 1 {
            return (Self::zero(), self.clone());
        }
        let mut quot = vec![K::zero(); rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            if rem[i].is_zero() {
                continue;
            }
            let q = rem[i].clone() * dlc_inv.clone();
            quot[i - dd] = q.clone();
            for (j, dc) in d.coeffs.iter().enumerate() {
                let t = rem[i - dd + j].clone() - q.clone() * dc.clone();
                rem[i - dd + j] = t;
            }
        }
        (Self::new(quot), Self::new(rem))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.divrem(d).1
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        if a.is_zero() {
            a
        } else {
            a.monic()
        }
    }

    /// Resultant via the Euclidean polynomial remainder sequence.
    pub fn resultant(&self, other: &Self) -> K {
        assert!(!self.is_zero() && !other.is_zero(), "resultant with zero polynomial");
        let da = self.deg().unwrap();
        let db = other.deg().unwrap();
        if da == 0 {
            return pow_k(self.lc(), db);
        }
        if db == 0 {
            return pow_k(other.lc(), da);
        }
        let r = self.rem(other);
        if r.is_zero() {
            return K::zero();
        }
        let dr = r.deg().unwrap();
        let mut res = pow_k(other.lc(), da - dr) * other.resultant(&r);
        if da * db % 2 == 1 {
            res = -res;
        }
        res
    }

    pub fn pow(&self, mut e: usize) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base.clone();
            }
            e >>= 1;
            if e > 0 {
                base = base.clone() * base;
            }
        }
        acc
    }

    /// Squarefree decomposition by Yun's algorithm (characteristic zero).
    /// Returns the leading coefficient and monic pairwise coprime squarefree
    /// factors with multiplicities, sorted by multiplicity.
    pub fn squarefree_decomposition(&self) -> (K, Vec<(Self, usize)>) {
        assert!(!self.is_zero(), "squarefree decomposition of zero");
        let lc = self.lc().clone();
        let f = self.monic();
        if f.deg() == Some(0) {
            return (lc, Vec::new());
        }
        let fp = f.derivative();
        let d = f.gcd(&fp);
        let mut b = f.divrem(&d).0;
        let mut c = fp.divrem(&d).0;
        let mut out = Vec::new();
        let mut i = 1usize;
        loop {
            let db = c.clone() - b.derivative();
            if b.deg() == Some(0) {
                break;
            }
            let a = b.gcd(&db);
            if a.deg().unwrap_or(0) > 0 {
                out.push((a.clone(), i));
            }
            b = b.divrem(&a).0;
            c = db.divrem(&a).0;
            i += 1;
        }
        (lc, out)
    }

    /// Product of the distinct irreducible factors, monic.
    pub fn squarefree_part(&self) -> Self {
        let (_, parts) = self.squarefree_decomposition();
        let mut acc = Self::one();
        for (p, _) in parts {
            acc = acc * p;
        }
        acc
    }

    /// Map coefficients into another field.
    pub fn map_coeffs<L: Field>(&self, f: impl Fn(&K) -> L) -> UniPoly<L> {
        UniPoly::new(self.coeffs.iter().map(f).collect())
    }

    pub fn display_with(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let cs = c.to_string();
            let (neg, mag) = match cs.strip_prefix('-') {
                Some(rest) => (true, rest.to_string()),
                None => (false, cs),
            };
            if s.is_empty() {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let need_coeff = i == 0 || mag != "1";
            let mag = if mag.contains(['+', '-', ' ']) { format!("({mag})") } else { mag };
            if need_coeff {
                s.push_str(&mag);
            }
            if i > 0 {
                if need_coeff {
                    s.push('*');
                }
                s.push_str(var);
                if i > 1 {
                    s.push_str(&format!("^{i}"));
                }
            }
        }
        s
    }
}

fn pow_k<K: Field>(base: &K, mut e: usize) -> K {
    let mut b = base.clone();
    let mut acc = K::one();
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b.clone();
        }
        e >>= 1;
        if e > 0 {
            b = b.clone() * b;
        }
    }
    acc
}

impl<K: Field> Zero for UniPoly<K> {
    fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl<K: Field> One for UniPoly<K> {
    fn one() -> Self {
        UniPoly { coeffs: vec![K::one()] }
    }
}

impl<K: Field> Add for UniPoly<K> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for i in 0..n {
            let a = self.coeffs.get(i).cloned().unwrap_or_else(K::zero);
            let b = rhs.coeffs.get(i).cloned().unwrap_or_else(K::zero);
            coeffs.push(a + b);
        }
        Self::new(coeffs)
    }
}

impl<K: Field> Sub for UniPoly<K> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl<K: Field> Neg for UniPoly<K> {
    type Output = Self;
    fn neg(self) -> Self {
        UniPoly { coeffs: self.coeffs.into_iter().map(|c| -c).collect() }
    }
}

impl<K: Field> Mul for UniPoly<K> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![K::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                let t = coeffs[i + j].clone() + a.clone() * b.clone();
                coeffs[i + j] = t;
            }
        }
        Self::new(coeffs)
    }
}

impl<K: Field> Domain for UniPoly<K> {
    fn exact_div(&self, d: &Self) -> Self {
        let (q, r) = self.divrem(d);
        assert!(r.is_zero(), "inexact polynomial division");
        q
    }
}

impl<K: Field> fmt::Display for UniPoly<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with("t"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::matrix::det_bareiss;
    use crate::exactmath::scalar::{rat_int, Rat};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn qp(coeffs: &[i64]) -> UniPoly<Rat> {
        UniPoly::new(coeffs.iter().map(|&c| rat_int(c)).collect())
    }

    fn random_poly(rng: &mut ChaCha8Rng, max_deg: usize) -> UniPoly<Rat> {
        let d = rng.gen_range(0..=max_deg);
        let coeffs: Vec<Rat> = (0..=d).map(|_| rat_int(rng.gen_range(-6..=6))).collect();
        UniPoly::new(coeffs)
    }

    /// Resultant as the determinant of the Sylvester matrix, used as an
    /// independent oracle for the remainder sequence formula.
    fn resultant_sylvester(a: &UniPoly<Rat>, b: &UniPoly<Rat>) -> Rat {
        let m = a.deg().unwrap();
        let n = b.deg().unwrap();
        if m + n == 0 {
            return rat_int(1);
        }
        let size = m + n;
        let mut mat = vec![vec![Rat::zero(); size]; size];
        for row in 0..n {
            for (k, c) in a.coeffs().iter().enumerate() {
                mat[row][row + (m - k)] = c.clone();
            }
        }
        for row in 0..m {
            for (k, c) in b.coeffs().iter().enumerate() {
                mat[n + row][row + (n - k)] = c.clone();
            }
        }
        det_bareiss(&mat)
    }

    #[test]
    fn divrem_roundtrip() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..200 {
            let a = random_poly(&mut rng, 6);
            let mut b = random_poly(&mut rng, 4);
            if b.is_zero() {
                b = UniPoly::one();
            }
            let (q, r) = a.divrem(&b);
            assert_eq!(q * b.clone() + r.clone(), a);
            if !r.is_zero() {
                assert!(r.deg().unwrap() < b.deg().unwrap());
            }
        }
    }

    #[test]
    fn gcd_divides_both_and_is_monic() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..100 {
            let c = random_poly(&mut rng, 3);
            let a = random_poly(&mut rng, 3) * c.clone();
            let b = random_poly(&mut rng, 3) * c.clone();
            if a.is_zero() || b.is_zero() {
                continue;
            }
            let g = a.gcd(&b);
            assert!(a.rem(&g).is_zero());
            assert!(b.rem(&g).is_zero());
            assert!(g.lc() == &rat_int(1));
            if !c.is_zero() {
                // the common factor divides the gcd
                assert!(g.rem(&c.monic()).is_zero() || g.deg() >= c.deg());
            }
        }
    }

    #[test]
    fn resultant_matches_sylvester_determinant() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let mut checked = 0;
        while checked < 120 {
            let a = random_poly(&mut rng, 5);
            let b = random_poly(&mut rng, 5);
            if a.is_zero() || b.is_zero() {
                continue;
            }
            assert_eq!(a.resultant(&b), resultant_sylvester(&a, &b));
            checked += 1;
        }
    }

    #[test]
    fn resultant_of_linear_factors() {
        // res(x - a, x - b) = a - b
        let p = qp(&[-3, 1]);
        let q = qp(&[-7, 1]);
        assert_eq!(p.resultant(&q), rat_int(-4));
    }

    #[test]
    fn resultant_vanishes_iff_common_root() {
        let p = qp(&[-1, 0, 1]); // (t-1)(t+1)
        let q = qp(&[-1, 1]); // t-1
        assert!(p.resultant(&q).is_zero());
        let r = qp(&[-2, 1]);
        assert!(!p.resultant(&r).is_zero());
    }

    #[test]
    fn yun_on_known_powers() {
        // f = (t+1)^2 (t^2+2)^3 t
        let f = qp(&[1, 1]).pow(2) * qp(&[2, 0, 1]).pow(3) * qp(&[0, 1]);
        let (lc, parts) = f.squarefree_decomposition();
        assert_eq!(lc, rat_int(1));
        let mut reassembled = UniPoly::constant(lc);
        for (p, m) in &parts {
            assert!(p.gcd(&p.derivative()).deg() == Some(0), "factor not squarefree");
            reassembled = reassembled * p.pow(*m);
        }
        assert_eq!(reassembled, f);
        let mults: Vec<usize> = parts.iter().map(|(_, m)| *m).collect();
        assert_eq!(mults, vec![1, 2, 3]);
        assert_eq!(parts[0].0, qp(&[0, 1]));
        assert_eq!(parts[1].0, qp(&[1, 1]));
        assert_eq!(parts[2].0, qp(&[2, 0, 1]));
    }

    #[test]
    fn yun_reassembles_random_products() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..60 {
            let mut f = UniPoly::constant(rat_int(rng.gen_range(1..=4)));
            for _ in 0..rng.gen_range(1..=3) {
                let mut p = random_poly(&mut rng, 2);
                if p.is_zero() || p.deg() == Some(0) {
                    p = qp(&[rng.gen_range(-4..=4), 1]);
                }
                f = f * p.pow(rng.gen_range(1..=3));
            }
            let (lc, parts) = f.squarefree_decomposition();
            let mut reassembled = UniPoly::constant(lc);
            for (p, m) in &parts {
                reassembled = reassembled * p.pow(*m);
            }
            assert_eq!(reassembled, f);
            for (i, (p, _)) in parts.iter().enumerate() {
                for (q, _) in parts.iter().skip(i + 1) {
                    assert_eq!(p.gcd(q).deg(), Some(0), "factors not coprime");
                }
            }
        }
    }

    #[test]
    fn compose_and_eval_agree() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..50 {
            let f = random_poly(&mut rng, 4);
            let g = random_poly(&mut rng, 3);
            let x = rat_int(rng.gen_range(-5..=5));
            assert_eq!(f.compose(&g).eval(&x), f.eval(&g.eval(&x)));
        }
    }

    #[test]
    fn derivative_product_rule() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        for _ in 0..50 {
            let f = random_poly(&mut rng, 4);
            let g = random_poly(&mut rng, 4);
            let lhs = (f.clone() * g.clone()).derivative();
            let rhs = f.derivative() * g.clone() + f.clone() * g.derivative();
            assert_eq!(lhs, rhs);
        }
    }
}
