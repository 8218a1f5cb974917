//! Exact arithmetic: finite fields, polynomials, Laurent polynomials,
//! matrices, subspaces and Frobenius-semilinear maps.

pub mod field;
pub mod laurent;
pub mod matrix;
pub mod poly;
pub mod semilinear;

pub use field::{is_prime, FieldSpec, Fq};
pub use laurent::LaurentPoly;
pub use matrix::{Matrix, Subspace};
pub use poly::Poly;
pub use semilinear::SemilinearMap;
