//! Sparse bivariate polynomials over a coefficient field.
//!
//! Terms are keyed by `(x_exp, y_exp)` in a `BTreeMap`, so iteration order and
//! printed form are deterministic.

use super::matrix::det_bareiss;
use super::scalar::{Domain, Field};
use super::unipoly::UniPoly;
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BiPoly<K> {
    terms: BTreeMap<(u32, u32), K>,
}

impl<K: Field> BiPoly<K> {
    pub fn zero() -> Self {
        BiPoly { terms: BTreeMap::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn constant(c: K) -> Self {
        let mut t = BTreeMap::new();
        if !c.is_zero() {
            t.insert((0, 0), c);
        }
        BiPoly { terms: t }
    }

    pub fn one() -> Self {
        Self::constant(K::one())
    }

    pub fn term(c: K, xe: u32, ye: u32) -> Self {
        let mut t = BTreeMap::new();
        if !c.is_zero() {
            t.insert((xe, ye), c);
        }
        BiPoly { terms: t }
    }

    pub fn x() -> Self {
        Self::term(K::one(), 1, 0)
    }

    pub fn y() -> Self {
        Self::term(K::one(), 0, 1)
    }

    pub fn from_terms(terms: impl IntoIterator<Item = ((u32, u32), K)>) -> Self {
        let mut out = BTreeMap::new();
        for ((xe, ye), c) in terms {
            if c.is_zero() {
                continue;
            }
            match out.entry((xe, ye)) {
                std::collections::btree_map::Entry::Vacant(e) => {
                    e.insert(c);
                }
                std::collections::btree_map::Entry::Occupied(mut e) => {
                    let s = e.get().clone() + c;
                    if s.is_zero() {
                        e.remove();
                    } else {
                        *e.get_mut() = s;
                    }
                }
            }
        }
        BiPoly { terms: out }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &K)> {
        self.terms.iter()
    }

    pub fn coeff(&self, xe: u32, ye: u32) -> K {
        self.terms.get(&(xe, ye)).cloned().unwrap_or_else(K::zero)
    }

    pub fn deg_x(&self) -> Option<u32> {
        self.terms.keys().map(|k| k.0).max()
    }

    pub fn deg_y(&self) -> Option<u32> {
        self.terms.keys().map(|k| k.1).max()
    }

    /// Least x-exponent over all terms (the power of `x` dividing the poly).
    pub fn min_x(&self) -> Option<u32> {
        self.terms.keys().map(|k| k.0).min()
    }

    pub fn min_y(&self) -> Option<u32> {
        self.terms.keys().map(|k| k.1).min()
    }

    /// Divide by `x^a y^b`; panics if not divisible.
    pub fn shift_down(&self, a: u32, b: u32) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(&(xe, ye), c)| {
                assert!(xe >= a && ye >= b, "monomial shift not divisible");
                ((xe - a, ye - b), c.clone())
            })
            .collect();
        BiPoly { terms }
    }

    pub fn map_coeffs<L: Field>(&self, f: impl Fn(&K) -> L) -> BiPoly<L> {
        BiPoly::from_terms(self.terms.iter().map(|(&k, c)| (k, f(c))))
    }

    /// Swap the variables.
    pub fn transpose(&self) -> Self {
        BiPoly {
            terms: self.terms.iter().map(|(&(xe, ye), c)| ((ye, xe), c.clone())).collect(),
        }
    }

    pub fn eval(&self, x: &K, y: &K) -> K {
        let mut acc = K::zero();
        for (&(xe, ye), c) in &self.terms {
            acc = acc + c.clone() * pow(x, xe) * pow(y, ye);
        }
        acc
    }

    pub fn derivative_y(&self) -> Self {
        BiPoly::from_terms(self.terms.iter().filter(|(&(_, ye), _)| ye > 0).map(
            |(&(xe, ye), c)| {
                let mut m = K::zero();
                for _ in 0..ye {
                    m = m + c.clone();
                }
                ((xe, ye - 1), m)
            },
        ))
    }

    pub fn derivative_x(&self) -> Self {
        self.transpose().derivative_y().transpose()
    }

    /// Dense coefficient list in `y`; entry `j` is the x-polynomial at `y^j`.
    pub fn as_y_coeffs(&self) -> Vec<UniPoly<K>> {
        let dy = match self.deg_y() {
            None => return Vec::new(),
            Some(d) => d as usize,
        };
        let mut cols: Vec<Vec<K>> = vec![Vec::new(); dy + 1];
        for (&(xe, ye), c) in &self.terms {
            let col = &mut cols[ye as usize];
            if col.len() <= xe as usize {
                col.resize(xe as usize + 1, K::zero());
            }
            col[xe as usize] = c.clone();
        }
        cols.into_iter().map(UniPoly::new).collect()
    }

    pub fn from_y_coeffs(coeffs: &[UniPoly<K>]) -> Self {
        let mut terms = Vec::new();
        for (j, p) in coeffs.iter().enumerate() {
            for (i, c) in p.coeffs().iter().enumerate() {
                terms.push(((i as u32, j as u32), c.clone()));
            }
        }
        Self::from_terms(terms)
    }

    /// Substitute `x -> poly` and `y -> poly`.
    pub fn substitute(&self, x: &Self, y: &Self) -> Self {
        let mut acc = Self::zero();
        for (&(xe, ye), c) in &self.terms {
            let mut term = Self::constant(c.clone());
            for _ in 0..xe {
                term = term * x.clone();
            }
            for _ in 0..ye {
                term = term * y.clone();
            }
            acc = acc + term;
        }
        acc
    }

    /// Total-degree-lowest homogeneous part.
    pub fn lowest_form(&self) -> Self {
        let Some(min_tot) = self.terms.keys().map(|&(a, b)| a + b).min() else {
            return Self::zero();
        };
        BiPoly {
            terms: self
                .terms
                .iter()
                .filter(|(&(a, b), _)| a + b == min_tot)
                .map(|(&k, c)| (k, c.clone()))
                .collect(),
        }
    }

    /// Resultant with respect to `y`, as the Sylvester matrix determinant over
    /// `K[x]` computed fraction-free.
    pub fn resultant_y(&self, other: &Self) -> UniPoly<K> {
        let a = self.as_y_coeffs();
        let b = other.as_y_coeffs();
        assert!(!a.is_empty() && !b.is_empty(), "resultant with zero polynomial");
        let m = a.len() - 1;
        let n = b.len() - 1;
        if m == 0 && n == 0 {
            return UniPoly::one();
        }
        if m == 0 {
            return a[0].pow(n);
        }
        if n == 0 {
            return b[0].pow(m);
        }
        let size = m + n;
        let mut mat = vec![vec![UniPoly::zero(); size]; size];
        for row in 0..n {
            for (k, c) in a.iter().enumerate() {
                mat[row][row + (m - k)] = c.clone();
            }
        }
        for row in 0..m {
            for (k, c) in b.iter().enumerate() {
                mat[n + row][row + (n - k)] = c.clone();
            }
        }
        det_bareiss(&mat)
    }

    /// Content with respect to `y`: monic gcd of the `y`-coefficients.
    pub fn content_y(&self) -> UniPoly<K> {
        let mut g = UniPoly::zero();
        for c in self.as_y_coeffs() {
            if !c.is_zero() {
                g = g.gcd(&c);
            }
        }
        g
    }

    /// Exact division; panics when the division is not exact.
    pub fn exact_div(&self, d: &Self) -> Self {
        assert!(!d.is_zero(), "division by zero");
        let a = self.as_y_coeffs();
        let b = d.as_y_coeffs();
        if a.is_empty() {
            return Self::zero();
        }
        assert!(a.len() >= b.len(), "inexact bivariate division");
        let mut rem = a;
        let mut quot: Vec<UniPoly<K>> = vec![UniPoly::zero(); rem.len() - b.len() + 1];
        let blc = b.last().unwrap();
        for i in (b.len() - 1..rem.len()).rev() {
            if rem[i].is_zero() {
                continue;
            }
            let q = rem[i].exact_div(blc);
            quot[i - (b.len() - 1)] = q.clone();
            for (j, bc) in b.iter().enumerate() {
                let t = rem[i - (b.len() - 1) + j].clone() - q.clone() * bc.clone();
                rem[i - (b.len() - 1) + j] = t;
            }
        }
        assert!(rem.iter().all(|r| r.is_zero()), "inexact bivariate division");
        Self::from_y_coeffs(&quot)
    }

    /// Pseudo-remainder of `self` by `d` in `y`:
    /// `lc_y(d)^(da-db+1) * self = q*d + r` with `deg_y r < deg_y d`.
    fn pseudo_rem_y(&self, d: &Self) -> Self {
        let da = self.deg_y().map(|v| v as i64).unwrap_or(-1);
        let db = d.deg_y().expect("pseudo-division by zero") as i64;
        if da < db {
            return self.clone();
        }
        let mut r = self.as_y_coeffs();
        let b = d.as_y_coeffs();
        let lb = b.last().unwrap().clone();
        for i in (db as usize..r.len()).rev() {
            // r = lb*r - r[i]*y^(i-db)*d, with r[i] taken before the scaling
            let ri = r[i].clone();
            for rc in r.iter_mut() {
                *rc = rc.clone() * lb.clone();
            }
            for (j, bc) in b.iter().enumerate() {
                let t = r[i - db as usize + j].clone() - ri.clone() * bc.clone();
                r[i - db as usize + j] = t;
            }
            r[i] = UniPoly::zero();
        }
        Self::from_y_coeffs(&r)
    }

    /// Primitive part and content with respect to `y`.
    pub fn primitive_y(&self) -> (UniPoly<K>, Self) {
        if self.is_zero() {
            return (UniPoly::zero(), Self::zero());
        }
        let c = self.content_y();
        let coeffs: Vec<UniPoly<K>> = self.as_y_coeffs().iter().map(|p| p.exact_div(&c)).collect();
        (c, Self::from_y_coeffs(&coeffs))
    }

    /// Monic-normalized gcd via a primitive polynomial remainder sequence.
    pub fn gcd_y(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.normalized();
        }
        if other.is_zero() {
            return self.normalized();
        }
        let (ca, mut a) = self.primitive_y();
        let (cb, mut b) = other.primitive_y();
        let cg = ca.gcd(&cb);
        if a.deg_y().unwrap() < b.deg_y().unwrap() {
            std::mem::swap(&mut a, &mut b);
        }
        loop {
            if b.deg_y() == Some(0) {
                // the PRS dropped to y-degree 0: the primitive parts are
                // coprime (a primitive poly has no non-unit divisor free
                // of y), leaving only the content gcd
                return BiPoly::from_y_coeffs(&[cg]).normalized();
            }
            let r = a.pseudo_rem_y(&b);
            if r.is_zero() {
                break;
            }
            let (_, rp) = r.primitive_y();
            a = b;
            b = rp;
        }
        // b (primitive) is the gcd of the primitive parts
        let g = BiPoly::from_y_coeffs(&[cg]) * b;
        g.normalized()
    }

    /// Scale so the coefficient of the leading `(y, x)`-lex term is 1.
    pub fn normalized(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let (&_, lead) = self
            .terms
            .iter()
            .max_by_key(|(&(xe, ye), _)| (ye, xe))
            .unwrap();
        let inv = lead.inv().expect("leading coefficient not invertible");
        self.map_coeffs(|c| c.clone() * inv.clone())
    }

    /// Squarefree decomposition: pairwise coprime squarefree factors with
    /// multiplicities, each normalized; the unit collects the rest.
    pub fn squarefree_decompose(&self) -> (K, Vec<(Self, usize)>) {
        assert!(!self.is_zero(), "squarefree decomposition of zero");
        let (content, prim) = self.primitive_y();
        let mut out: Vec<(Self, usize)> = Vec::new();
        // content is univariate in x
        let (clc, cparts) = content.squarefree_decomposition();
        for (p, m) in cparts {
            out.push((Self::from_y_coeffs(&[p]), m));
        }
        let mut unit = clc;
        if prim.deg_y() == Some(0) {
            let c0 = prim.coeff(0, 0);
            unit = unit * c0;
            out.sort_by_key(|(_, m)| *m);
            return (unit, out);
        }
        // Yun in y on the primitive part
        let f = prim;
        let fp = f.derivative_y();
        let u = f.gcd_y(&fp);
        let mut b = f.exact_div(&u);
        let mut c = fp.exact_div(&u);
        let mut i = 1usize;
        loop {
            let db = c.clone() - b.derivative_y();
            if b.deg_y() == Some(0) || b.deg_y().is_none() {
                break;
            }
            let a = b.gcd_y(&db);
            if a.deg_y().map(|d| d > 0).unwrap_or(false) || a.deg_x().map(|d| d > 0).unwrap_or(false)
            {
                out.push((a.clone(), i));
            }
            b = b.exact_div(&a);
            c = db.exact_div(&a);
            i += 1;
        }
        // normalize: account for scalar drift between f and the product of factors
        let mut prod = Self::one();
        for (p, m) in &out {
            for _ in 0..*m {
                prod = prod * p.clone();
            }
        }
        let scale = scalar_quotient(self, &prod);
        (scale, out_sorted(out))
    }
}

fn out_sorted<K: Field>(mut v: Vec<(BiPoly<K>, usize)>) -> Vec<(BiPoly<K>, usize)> {
    v.sort_by(|a, b| {
        a.1.cmp(&b.1).then_with(|| {
            let ka: Vec<_> = a.0.terms.keys().cloned().collect();
            let kb: Vec<_> = b.0.terms.keys().cloned().collect();
            ka.cmp(&kb)
        })
    });
    v
}

/// The constant `self / prod`, asserting the quotient is a scalar.
fn scalar_quotient<K: Field>(num: &BiPoly<K>, den: &BiPoly<K>) -> K {
    assert!(!den.is_zero(), "scalar quotient by zero");
    let (&key, dc) = den.terms.iter().next().unwrap();
    let nc = num.coeff(key.0, key.1);
    let s = nc * dc.inv().expect("non-invertible coefficient");
    debug_assert_eq!(&den.map_coeffs(|c| c.clone() * s.clone()), num, "quotient not scalar");
    s
}

fn pow<K: Field>(base: &K, e: u32) -> K {
    let mut acc = K::one();
    for _ in 0..e {
        acc = acc * base.clone();
    }
    acc
}

impl<K: Field> Add for BiPoly<K> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let mut terms = self.terms;
        for (k, c) in rhs.terms {
            match terms.entry(k) {
                std::collections::btree_map::Entry::Vacant(e) => {
                    e.insert(c);
                }
                std::collections::btree_map::Entry::Occupied(mut e) => {
                    let s = e.get().clone() + c;
                    if s.is_zero() {
                        e.remove();
                    } else {
                        *e.get_mut() = s;
                    }
                }
            }
        }
        BiPoly { terms }
    }
}

impl<K: Field> Sub for BiPoly<K> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl<K: Field> Neg for BiPoly<K> {
    type Output = Self;
    fn neg(self) -> Self {
        BiPoly { terms: self.terms.into_iter().map(|(k, c)| (k, -c)).collect() }
    }
}

impl<K: Field> Mul for BiPoly<K> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let mut out: BTreeMap<(u32, u32), K> = BTreeMap::new();
        for (&(ax, ay), ac) in &self.terms {
            for (&(bx, by), bc) in &rhs.terms {
                let k = (ax + bx, ay + by);
                let t = ac.clone() * bc.clone();
                match out.entry(k) {
                    std::collections::btree_map::Entry::Vacant(e) => {
                        if !t.is_zero() {
                            e.insert(t);
                        }
                    }
                    std::collections::btree_map::Entry::Occupied(mut e) => {
                        let s = e.get().clone() + t;
                        if s.is_zero() {
                            e.remove();
                        } else {
                            *e.get_mut() = s;
                        }
                    }
                }
            }
        }
        BiPoly { terms: out }
    }
}

impl<K: Field> fmt::Display for BiPoly<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut s = String::new();
        for (&(xe, ye), c) in self.terms.iter().rev() {
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
            let mut parts = Vec::new();
            if mag != "1" || (xe == 0 && ye == 0) {
                let mag =
                    if mag.contains(['+', '-', ' ']) { format!("({mag})") } else { mag };
                parts.push(mag);
            }
            if xe > 0 {
                parts.push(if xe == 1 { "x".into() } else { format!("x^{xe}") });
            }
            if ye > 0 {
                parts.push(if ye == 1 { "y".into() } else { format!("y^{ye}") });
            }
            s.push_str(&parts.join("*"));
        }
        f.write_str(&s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::scalar::{rat_int, Rat};

    fn b(terms: &[(i64, u32, u32)]) -> BiPoly<Rat> {
        BiPoly::from_terms(terms.iter().map(|&(c, xe, ye)| ((xe, ye), rat_int(c))))
    }

    /// x^2 + y^3
    fn cusp_a() -> BiPoly<Rat> {
        b(&[(1, 2, 0), (1, 0, 3)])
    }

    /// x^3 + y^2
    fn cusp_b() -> BiPoly<Rat> {
        b(&[(1, 3, 0), (1, 0, 2)])
    }

    #[test]
    fn arithmetic_and_display() {
        let p = cusp_a();
        let q = cusp_b();
        let s = p.clone() + q.clone();
        assert_eq!(s.coeff(2, 0), rat_int(1));
        assert_eq!(s.coeff(0, 3), rat_int(1));
        let prod = p.clone() * q.clone();
        assert_eq!(prod.coeff(5, 0), rat_int(1));
        assert_eq!(prod.coeff(0, 5), rat_int(1));
        assert_eq!(prod.coeff(2, 2), rat_int(1));
        assert_eq!(prod.coeff(3, 3), rat_int(1));
        assert_eq!(format!("{}", cusp_a()), "x^2 + y^3");
    }

    #[test]
    fn transpose_and_lowest_form() {
        let p = cusp_a();
        assert_eq!(p.transpose(), cusp_b());
        assert_eq!(p.lowest_form(), b(&[(1, 2, 0)]));
        let q = b(&[(1, 0, 1), (1, 2, 0)]); // y + x^2
        assert_eq!(q.lowest_form(), b(&[(1, 0, 1)]));
    }

    #[test]
    fn resultant_y_matches_univariate_resultant_after_eval() {
        let p = cusp_a();
        let q = cusp_b();
        let r = p.resultant_y(&q);
        // res_y(y^3 + x^2, y^2 + x^3) at x=c equals resultant of the
        // univariate specializations
        for c in [-2i64, -1, 1, 2, 3] {
            let x = rat_int(c);
            let pu = UniPoly::new(vec![x.clone() * x.clone(), Rat::zero(), Rat::zero(), rat_int(1)]);
            let qu = UniPoly::new(vec![x.clone() * x.clone() * x.clone(), Rat::zero(), rat_int(1)]);
            assert_eq!(r.eval(&x), pu.resultant(&qu));
        }
        // the valuation at x=0 is the intersection multiplicity 4
        assert!(r.coeff(0).is_zero());
        assert!(r.coeff(1).is_zero());
        assert!(r.coeff(2).is_zero());
        assert!(r.coeff(3).is_zero());
        assert!(!r.coeff(4).is_zero());
    }

    #[test]
    fn gcd_detects_common_factor() {
        let p = cusp_a();
        let q = cusp_b();
        let f = p.clone() * q.clone();
        let g = p.clone() * b(&[(1, 0, 1), (1, 1, 0)]); // (x^2+y^3)(y+x)
        let d = f.gcd_y(&g);
        assert_eq!(d, cusp_a());
        let coprime = p.gcd_y(&q);
        assert!(coprime.deg_y() == Some(0) && coprime.deg_x() == Some(0));
    }

    #[test]
    fn exact_div_roundtrip() {
        let p = cusp_a();
        let q = cusp_b();
        let f = p.clone() * q.clone();
        assert_eq!(f.exact_div(&p), q);
        assert_eq!(f.exact_div(&q), p);
    }

    #[test]
    fn squarefree_decompose_worked_example() {
        // (x^2+y^3)^2 (x^3+y^2)
        let f = cusp_a() * cusp_a() * cusp_b();
        let (unit, parts) = f.squarefree_decompose();
        assert_eq!(unit, rat_int(1));
        assert_eq!(parts.len(), 2);
        assert_eq!(parts[0], (cusp_b(), 1));
        assert_eq!(parts[1], (cusp_a(), 2));
    }

    #[test]
    fn squarefree_decompose_with_content_and_axes() {
        // x^2 y (y + x)^2
        let f = b(&[(1, 2, 0)]) * b(&[(1, 0, 1)]) * b(&[(1, 0, 1), (1, 1, 0)]).clone()
            * b(&[(1, 0, 1), (1, 1, 0)]);
        let (unit, parts) = f.squarefree_decompose();
        assert_eq!(unit, rat_int(1));
        let mut reassembled = BiPoly::constant(unit);
        for (p, m) in &parts {
            for _ in 0..*m {
                reassembled = reassembled * p.clone();
            }
        }
        assert_eq!(reassembled, f);
        assert!(parts.iter().any(|(p, m)| *m == 1 && p == &b(&[(1, 0, 1)])));
        assert!(parts.iter().any(|(p, m)| *m == 2));
    }

    #[test]
    fn substitute_expands() {
        let p = b(&[(1, 0, 1), (-1, 2, 0)]); // y - x^2
        let r = p.substitute(&BiPoly::x(), &(b(&[(1, 2, 0)]))); // y -> x^2
        assert!(r.is_zero());
    }
}
