//! Exact sparse multivariate polynomials and polynomial matrices.

mod matrix;
mod monomial;
mod parse;
mod polynomial;
mod ring;

pub use matrix::PolyMatrix;
pub use monomial::{Monomial, MonomialOrder};
pub use parse::parse_poly;
pub use polynomial::Polynomial;
pub(crate) use polynomial::{join_signed, render_monomial, render_scaled};
pub use ring::Ring;
