//! Equal-degree composition collisions of polynomials of degree `r^2` over
//! finite fields of characteristic `p`.
//!
//! The crate builds the three known collision families (Frobenius, the
//! subadditive family `S(u, s, eps, m)` and the multiply original family
//! `M(a, b, m)`), recognizes them again from raw coefficients, classifies
//! degree `p^2` polynomials by whether they have a 2-collision, and counts
//! decomposable polynomials both by closed forms and by brute-force census.

pub mod census;
pub mod constructions;
pub mod counting;
pub mod decomp;
pub mod error;
pub mod gf;
pub mod identify;
pub mod poly;

pub use error::{Error, Result};
pub use gf::{Field, FieldElem, FieldSpec};
pub use poly::Poly;
