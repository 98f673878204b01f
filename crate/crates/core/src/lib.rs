//! Exact computations around bumpless pipe dreams, alternating sign matrix
//! ideals and Groebner degenerations of Schubert determinantal ideals.
//!
//! Polynomials and Groebner bases are generic over the coefficient type
//! ([`scalar::Ring`] / [`scalar::Field`]); the aliases below fix the
//! concrete types used throughout.

pub mod asm;
pub mod bpd;
pub mod error;
pub mod groebner;
pub mod gvd;
pub mod monomial;
pub mod perm;
pub mod poly;
pub mod scalar;

pub use error::{Error, Result};
pub use perm::{bigrassmannian, Cell, Diagram, Permutation};
pub use scalar::{Field, Integer, Rational, Ring};

/// Integer polynomials in `x`, `y`, `beta` or grading variables.
pub type IntPoly = poly::Poly<Integer>;
/// Rational polynomials in the entries `z[i,j]` of the generic matrix.
pub type QPoly = poly::Poly<Rational>;
/// Ideals of the rational polynomial ring in the `z[i,j]`.
pub type QIdeal = groebner::Ideal<Rational>;
