//! Khovanov homology of links presented by planar-diagram (PD) codes.
//!
//! The pipeline: [`pdcode`] parses and validates diagrams, [`cube`] builds the
//! cube of complete smoothings with its merge/split edge maps, [`homology`]
//! assembles the graded chain complex and computes the invariant `Kh(L)` over
//! the rationals or a prime field, [`jones`] provides the Kauffman-bracket
//! state sum used as an independent cross-check, and [`reduced`] implements
//! the knight-move/thinness reductions (`s`, `Kh'`). [`linkdata`] bundles a
//! small regression corpus of diagrams with known invariant values.

pub mod cube;
pub mod exactalg;
pub mod homology;
pub mod jones;
pub mod linkdata;
pub mod pdcode;
pub mod reduced;

pub use exactalg::{GradedDimension, LaurentPoly1, LaurentPoly2, Modulus, SparseMatrix};
pub use homology::{GradedComplex, KhResult};
pub use linkdata::{LinkRecord, Provenance};
pub use pdcode::{Crossing, LinkDiagram, PdError};
