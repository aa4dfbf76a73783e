//! Gröbner bases for ideals and submodules of free modules.

mod affine;
mod engine;
mod ideal;
mod vector;

pub use affine::AffineRing;
pub use engine::Budget;
pub use ideal::{buchberger, ideal_membership, normal_form, GroebnerBasis, Ideal};
pub use vector::ModVec;

pub(crate) use engine::{groebner as module_groebner, normal_form as module_normal_form};
