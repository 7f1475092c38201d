//! Truncated power series in one variable with certified precision windows.
//!
//! A series is either exact (a polynomial; every omitted coefficient is zero)
//! or carries a window: exactly `coeffs.len()` certified coefficients, with
//! nothing known beyond. Arithmetic propagates the largest window that stays
//! sound. Orders are never guessed: when every certified coefficient of an
//! inexact series is zero its order is reported as unknown, and callers must
//! re-expand at higher precision.

use super::scalar::Field;
use std::fmt;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Series<K> {
    coeffs: Vec<K>,
    exact: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SeriesOrd {
    Finite(usize),
    /// Exactly zero.
    Infinite,
    /// All certified coefficients vanish but the tail is unknown.
    Unknown,
}

impl<K: Field> Series<K> {
    pub fn zero_exact() -> Self {
        Series { coeffs: Vec::new(), exact: true }
    }

    pub fn from_poly(mut coeffs: Vec<K>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Series { coeffs, exact: true }
    }

    pub fn constant(c: K) -> Self {
        Self::from_poly(vec![c])
    }

    pub fn monomial(c: K, e: usize) -> Self {
        if c.is_zero() {
            return Self::zero_exact();
        }
        let mut coeffs = vec![K::zero(); e + 1];
        coeffs[e] = c;
        Series { coeffs, exact: true }
    }

    pub fn with_window(coeffs: Vec<K>, window: usize) -> Self {
        let mut coeffs = coeffs;
        coeffs.truncate(window);
        assert_eq!(coeffs.len(), window, "window larger than supplied coefficients");
        Series { coeffs, exact: false }
    }

    pub fn is_exact(&self) -> bool {
        self.exact
    }

    /// Number of certified coefficients; `None` means all of them.
    pub fn window(&self) -> Option<usize> {
        if self.exact {
            None
        } else {
            Some(self.coeffs.len())
        }
    }

    /// Certified coefficient of `t^i`, `None` when uncertified.
    pub fn coeff(&self, i: usize) -> Option<K> {
        match self.coeffs.get(i) {
            Some(c) => Some(c.clone()),
            None if self.exact => Some(K::zero()),
            None => None,
        }
    }

    pub fn ord(&self) -> SeriesOrd {
        match self.coeffs.iter().position(|c| !c.is_zero()) {
            Some(i) => SeriesOrd::Finite(i),
            None if self.exact => SeriesOrd::Infinite,
            None => SeriesOrd::Unknown,
        }
    }

    /// Largest `n` with all coefficients below `n` certified zero.
    fn ord_lower_bound(&self) -> usize {
        self.coeffs.iter().position(|c| !c.is_zero()).unwrap_or(self.coeffs.len())
    }

    pub fn is_zero_exact(&self) -> bool {
        self.exact && self.coeffs.is_empty()
    }

    pub fn truncate_to(&self, n: usize) -> Self {
        if self.exact && self.coeffs.len() <= n {
            return self.clone();
        }
        let mut coeffs = self.coeffs.clone();
        coeffs.truncate(n);
        while coeffs.len() < n && self.exact {
            coeffs.push(K::zero());
        }
        Series { coeffs, exact: false }
    }

    pub fn map_coeffs<L: Field>(&self, f: impl Fn(&K) -> L) -> Series<L> {
        Series { coeffs: self.coeffs.iter().map(f).collect(), exact: self.exact }
    }

    pub fn scale(&self, s: &K) -> Self {
        if s.is_zero() {
            // scaling kills content but not certification
            if self.exact {
                return Self::zero_exact();
            }
            return Series { coeffs: vec![K::zero(); self.coeffs.len()], exact: false };
        }
        let mut out =
            Series { coeffs: self.coeffs.iter().map(|c| c.clone() * s.clone()).collect(), exact: self.exact };
        if out.exact {
            while out.coeffs.last().is_some_and(|c| c.is_zero()) {
                out.coeffs.pop();
            }
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        let window = match (self.window(), other.window()) {
            (None, None) => None,
            (Some(w), None) | (None, Some(w)) => Some(w),
            (Some(a), Some(b)) => Some(a.min(b)),
        };
        let n = match window {
            None => self.coeffs.len().max(other.coeffs.len()),
            Some(w) => w,
        };
        let mut coeffs = Vec::with_capacity(n);
        for i in 0..n {
            let a = self.coeffs.get(i).cloned().unwrap_or_else(K::zero);
            let b = other.coeffs.get(i).cloned().unwrap_or_else(K::zero);
            coeffs.push(a + b);
        }
        match window {
            None => Self::from_poly(coeffs),
            Some(w) => Series { coeffs, exact: false }.truncate_to(w),
        }
    }

    pub fn neg(&self) -> Self {
        Series { coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(), exact: self.exact }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero_exact() || other.is_zero_exact() {
            return Self::zero_exact();
        }
        let window = match (self.window(), other.window()) {
            (None, None) => None,
            _ => {
                let wa = self.window().map(|w| w + other.ord_lower_bound());
                let wb = other.window().map(|w| w + self.ord_lower_bound());
                Some(match (wa, wb) {
                    (Some(a), Some(b)) => a.min(b),
                    (Some(a), None) => a,
                    (None, Some(b)) => b,
                    (None, None) => unreachable!(),
                })
            }
        };
        let n = match window {
            None => self.coeffs.len() + other.coeffs.len() - 1,
            Some(w) => w,
        };
        let mut coeffs = vec![K::zero(); n];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() || i >= n {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if i + j >= n {
                    break;
                }
                let t = coeffs[i + j].clone() + a.clone() * b.clone();
                coeffs[i + j] = t;
            }
        }
        match window {
            None => Self::from_poly(coeffs),
            Some(w) => Series { coeffs, exact: false }.truncate_to(w),
        }
    }

    /// Multiply by `t^k`.
    pub fn shift_up(&self, k: usize) -> Self {
        if self.is_zero_exact() {
            return self.clone();
        }
        let mut coeffs = vec![K::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Series { coeffs, exact: self.exact }
    }

    /// Divide by `t^k`; the first `k` coefficients must be certified zero.
    pub fn shift_down(&self, k: usize) -> Self {
        if self.is_zero_exact() {
            return self.clone();
        }
        assert!(
            self.coeffs.len() >= k || self.exact,
            "shift_down past certified window"
        );
        for i in 0..k.min(self.coeffs.len()) {
            assert!(self.coeffs[i].is_zero(), "shift_down of nonzero coefficient");
        }
        let coeffs = self.coeffs.iter().skip(k).cloned().collect();
        Series { coeffs, exact: self.exact }
    }

    /// Inverse of a unit (nonzero constant term), to `want` coefficients
    /// (fewer when the input window is smaller).
    pub fn inv_unit(&self, want: usize) -> Self {
        let a0 = self.coeffs.first().expect("inverse of series with unknown constant term");
        let a0inv = a0.inv().expect("inverse of non-unit series");
        let n = match self.window() {
            None => want,
            Some(w) => want.min(w),
        };
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            if k == 0 {
                out.push(a0inv.clone());
                continue;
            }
            let mut acc = K::zero();
            for i in 1..=k {
                let ai = self.coeffs.get(i).cloned().unwrap_or_else(K::zero);
                if ai.is_zero() {
                    continue;
                }
                acc = acc + ai * out[k - i].clone();
            }
            out.push(-(acc * a0inv.clone()));
        }
        // exact only when the input is a constant
        if self.exact && self.coeffs.len() == 1 {
            Series::from_poly(out)
        } else {
            Series { coeffs: out, exact: false }
        }
    }

    /// Substitute `t -> beta * s^e`, `e >= 1`.
    pub fn subst_monomial(&self, beta: &K, e: usize) -> Self {
        assert!(e >= 1, "substituting a constant for the variable");
        if self.is_zero_exact() {
            return self.clone();
        }
        let n = self.coeffs.len();
        let out_len = if n == 0 { 0 } else { (n - 1) * e + 1 };
        let window_len = n * e; // coefficients certified strictly below n*e
        let mut coeffs = vec![K::zero(); if self.exact { out_len } else { window_len }];
        let mut bpow = K::one();
        for (k, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                coeffs[k * e] = c.clone() * bpow.clone();
            }
            bpow = bpow * beta.clone();
        }
        if self.exact {
            Series::from_poly(coeffs)
        } else {
            Series { coeffs, exact: false }
        }
    }
}

impl<K: Field> fmt::Display for Series<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let cs = c.to_string();
            let cs = if cs.contains(['+', '-', ' ']) && i > 0 { format!("({cs})") } else { cs };
            parts.push(match i {
                0 => cs,
                1 if cs == "1" => "t".to_string(),
                1 => format!("{cs}*t"),
                _ if cs == "1" => format!("t^{i}"),
                _ => format!("{cs}*t^{i}"),
            });
        }
        let body = if parts.is_empty() { "0".to_string() } else { parts.join(" + ") };
        if self.exact {
            f.write_str(&body)
        } else {
            write!(f, "{body} + O(t^{})", self.coeffs.len())
        }
    }
}
