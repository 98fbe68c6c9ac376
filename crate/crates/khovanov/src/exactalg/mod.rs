//! Exact scalar and polynomial arithmetic, and sparse rank computation.
//!
//! Everything here is exact: integer Laurent polynomials, rationals realized
//! through integer-preserving elimination, and residues mod a prime. No
//! floating point anywhere.

mod matrix;
mod poly;

pub use matrix::{Modulus, SparseMatrix};
pub use poly::{GradedDimension, LaurentPoly1, LaurentPoly2};
