//! Gröbner bases of submodules of free modules, normal forms, lifting,
//! syzygies and lengths of finite quotients.

mod basis;
mod mvec;
mod ops;

pub use basis::{buchberger, GroebnerBasis, VectorPoly};
pub use ops::{
    lift, power_membership, quotient_dimension, syzygies, Lifter, ModulePresentation,
    DEFAULT_POWER_CAP,
};
