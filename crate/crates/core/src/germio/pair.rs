//! Validated input pairs of curve germs.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::QxyPoly;

use super::parse::parse_poly;

/// A pair of plane-curve germs `(f, g)` through the origin.
///
/// `g` may be the constant `1`, which selects the one-germ special case;
/// otherwise both germs vanish at the origin and share no component. The
/// invariants are established at construction and never rechecked.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GermPair {
    f: QxyPoly,
    g: QxyPoly,
}

impl GermPair {
    /// Validates and wraps a germ pair.
    ///
    /// Requires `f(0,0) = 0` with `f` nonzero, and either `g = 1` or
    /// `g(0,0) = 0` with `gcd(f, g)` constant.
    pub fn new(f: QxyPoly, g: QxyPoly) -> Result<Self> {
        if f.is_zero() {
            return Err(Error::GermPair("f is the zero polynomial".into()));
        }
        if !f.coeff(0, 0).is_zero() {
            return Err(Error::GermPair("f does not vanish at the origin".into()));
        }
        if g != QxyPoly::one() {
            if g.is_zero() {
                return Err(Error::GermPair("g is the zero polynomial".into()));
            }
            if !g.coeff(0, 0).is_zero() {
                return Err(Error::GermPair(
                    "g must be the constant 1 or vanish at the origin".into(),
                ));
            }
            let gcd = f.gcd_y(&g);
            if gcd.deg_x() != Some(0) || gcd.deg_y() != Some(0) {
                return Err(Error::GermPair(format!(
                    "f and g share a component: gcd = {gcd}"
                )));
            }
        }
        Ok(GermPair { f, g })
    }

    /// Parses both germs from polynomial text.
    pub fn parse(f_text: &str, g_text: &str) -> Result<Self> {
        Self::new(parse_poly(f_text)?, parse_poly(g_text)?)
    }

    pub fn f(&self) -> &QxyPoly {
        &self.f
    }

    pub fn g(&self) -> &QxyPoly {
        &self.g
    }

    /// True when `g = 1`, the one-germ special case.
    pub fn is_single(&self) -> bool {
        self.g == QxyPoly::one()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn accepts_the_cusp_pair() {
        let pair = GermPair::parse("x^2 + y^3", "x^3 + y^2").unwrap();
        assert!(!pair.is_single());
        assert_eq!(pair.f().coeff(2, 0), crate::exactmath::scalar::rat_int(1));
    }

    #[test]
    fn accepts_constant_one_g() {
        let pair = GermPair::parse("x^2 + y^3", "1").unwrap();
        assert!(pair.is_single());
    }

    #[test]
    fn rejects_units_zeros_and_shared_components() {
        assert!(GermPair::parse("x + 1", "y").is_err());
        assert!(GermPair::parse("0", "y").is_err());
        assert!(GermPair::parse("x", "2").is_err());
        assert!(GermPair::parse("x", "0").is_err());
        // (x+y)(x-y) and (x+y)*y share the component x+y
        assert!(GermPair::parse("(x+y)*(x-y)", "(x+y)*y").is_err());
        // same factors but coprime pairing is fine
        assert!(GermPair::parse("(x+y)*(x-y)", "y*x").is_ok());
    }

    #[test]
    fn shared_component_in_x_only_is_caught() {
        assert!(GermPair::parse("x*y", "x*(x+y)").is_err());
        assert!(GermPair::parse("x^2", "x^3 + y^2").is_ok());
    }
}
