//! Hochschild chains of curved matrix categories: the bar differential,
//! products, duality maps and traces.

mod category;
mod chain;
mod differential;
mod duality;
mod products;
mod thm112;
mod trace;

pub use category::{Arrow, MatCategory, Object};
pub use chain::{check_word, word_parity, ElemKey, HochschildChain, Truncated, TruncationPolicy, Word};
pub use differential::{hochschild_b, hochschild_b0};
pub use duality::{dual_arrow, dual_category, graded_transpose, op_arrow, phi_op, psi_mf};
pub use products::{chain_parity, exp_class, kunneth_star, pushforward, shuffle_star, CdgFunctor};
pub use thm112::{thm112_verify, OneVarModel, Thm112Report, Thm112Row};
pub use trace::trace_hh0;
pub mod random;

#[cfg(test)]
mod tests;
