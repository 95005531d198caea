//! Differential forms, form-valued matrices, supertraces, Chern characters
//! and the chain-level HKR map.

mod diff_form;
mod form_matrix;
mod hkr;
mod milnor;

pub use diff_form::DiffForm;
pub use form_matrix::FormMatrix;
pub use hkr::{connection_derivative, delta_prime, hkr_epsilon, hkr_epsilon_with, hkr_word, hkr_word_with, FormProduct};
pub use milnor::{chern, chern_form, milnor_reduce, MilnorAlgebra, MilnorClass};
