//! Finitely presented modules over affine coordinate rings: syzygies,
//! resolutions, local Betti numbers, Fitting ideals, duals, Ext and torsion.

mod fitting;
mod homological;
mod matrix;
mod module;
mod resolution;

pub use fitting::{fitting_ideal, generic_rank, minors_ideal};
pub use homological::{depth_at_origin, dual_module, ext_module, torsion_submodule, transpose_module};
pub use matrix::{determinant, subsets, Matrix};
pub use module::{image_module, kernel_module, module_contains, prune, subquotient, syzygy, PresentedModule};
pub use resolution::{betti_at_origin, default_cutoff, free_resolution, minimize_at_origin, BettiData, Pd, Resolution};
