//! Exact arithmetic: rationals, generic polynomials, integer polynomial
//! factorization, algebraic extension towers and truncated power series.

pub mod bipoly;
pub mod matrix;
pub mod scalar;
pub mod series;
pub mod tower;
pub mod unipoly;
pub mod zfactor;

pub use scalar::{Domain, Field, Rat};
pub use tower::{Tower, TowerElement};
