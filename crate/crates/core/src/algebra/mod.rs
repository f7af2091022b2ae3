//! Exact base arithmetic: scalars, sparse polynomials, truncated series and
//! exact matrices.

mod matrix;
mod poly;
mod scalar;
mod series;

pub use matrix::{ExactMatrix, Rref};
pub use poly::{Monomial, MonomialOrder, MultiPoly, PolyRing};
pub(crate) use poly::same_ring;
pub use scalar::{rational_from_i64, rational_from_str, FieldElement, Rational, RationalFunction};
pub use series::TruncSeries;
