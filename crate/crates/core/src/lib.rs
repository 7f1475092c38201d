//! Exact resolution of pairs of plane curve germs by point blowups, with the
//! combinatorial invariants that follow: decorated dual graphs, fibration
//! criteria, fibre surface decompositions and monodromy zeta functions.
//!
//! All arithmetic is exact. Coefficients live in `Q` or in explicitly
//! constructed algebraic extension towers over `Q`; no floating point is used
//! anywhere. Polynomial containers are generic over the coefficient field via
//! [`exactmath::Field`], instantiated at [`Rat`] and at tower elements.

pub mod error;
pub mod exactmath;
pub mod germio;

#[cfg(test)]
pub(crate) mod testsupport;

pub use error::Error;
pub use exactmath::scalar::Rat;
pub use germio::{GermPair, GraphDocument, Side};

/// Dense univariate polynomial over `Q`.
pub type QPoly = exactmath::unipoly::UniPoly<Rat>;

/// Sparse bivariate polynomial over `Q` in the germ variables `x`, `y`.
pub type QxyPoly = exactmath::bipoly::BiPoly<Rat>;
