//! Coefficient traits and the base rational scalar.

use num_rational::BigRational;
use num_traits::{One, Zero};
use std::fmt::{Debug, Display};
use std::ops::{Add, Mul, Neg, Sub};

/// Arbitrary precision rational, the base scalar of the crate.
pub type Rat = BigRational;

/// Commutative ring with exact division by divisors, enough for fraction-free
/// elimination.
pub trait Domain:
    Clone
    + PartialEq
    + Debug
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
{
    /// Quotient `self / d`. Panics if `d` is zero or does not divide exactly;
    /// callers only divide by known divisors.
    fn exact_div(&self, d: &Self) -> Self;
}

/// Field of characteristic zero with a canonical copy of `Q`.
pub trait Field: Domain + Display {
    /// Multiplicative inverse, `None` for zero.
    fn inv(&self) -> Option<Self>;

    /// Canonical image of a rational.
    fn from_rat(r: &Rat) -> Self;

    /// The rational this element embeds, if it lies in the image of `Q`.
    fn to_rat(&self) -> Option<Rat>;

    fn from_i64(n: i64) -> Self {
        Self::from_rat(&Rat::from_integer(n.into()))
    }
}

impl Domain for Rat {
    fn exact_div(&self, d: &Self) -> Self {
        assert!(!d.is_zero(), "division by zero");
        self / d
    }
}

impl Field for Rat {
    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.recip())
        }
    }

    fn from_rat(r: &Rat) -> Self {
        r.clone()
    }

    fn to_rat(&self) -> Option<Rat> {
        Some(self.clone())
    }
}

impl Domain for num_bigint::BigInt {
    fn exact_div(&self, d: &Self) -> Self {
        assert!(!d.is_zero(), "division by zero");
        let (q, r) = num_integer::Integer::div_rem(self, d);
        assert!(r.is_zero(), "inexact integer division");
        q
    }
}

/// Convenience constructor for small rationals.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(n.into(), d.into())
}

/// Convenience constructor for integer rationals.
pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(n.into())
}
