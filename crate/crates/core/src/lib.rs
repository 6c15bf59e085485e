//! Exact computations behind splitting-field witnesses: rational arithmetic,
//! polynomials over Q, number fields, small Galois groups and certificates.

pub mod arith;
pub mod galois;
pub mod numfield;
pub mod polyq;
pub mod witness;

pub use arith::{Integer, Rational};
pub use polyq::{parse_poly, Poly, PolyError};
