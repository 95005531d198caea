//! Exact computations with matrix factorizations: Gröbner-based homology,
//! differential forms and Chern characters, Grothendieck residues and
//! chain-level Hochschild machinery.

pub mod corpus;
pub mod error;
pub mod forms;
pub mod groebner;
pub mod hochschild;
pub mod homology;
mod linalg;
pub mod mf;
pub mod poly;
pub mod residue;
pub mod scalar;
pub mod selftest;

pub use error::{Error, Result};
pub use scalar::Field;

/// Exact rational numbers; the coefficient field used throughout.
pub type Rational = num_rational::BigRational;
pub type Poly = poly::Polynomial<Rational>;
pub type Matrix = poly::PolyMatrix<Rational>;
