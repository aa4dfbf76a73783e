//! Executable checks of the d.c.i., duality, height and purity statements.

mod checks;
mod report;
mod theorems;

pub use checks::{
    check_dci, defects, domain_hypothesis, is_generically_smooth, is_smooth, lci_hypothesis, max_generators,
    normal_hypothesis, serre_s2_sufficient, DciMode, DciResult, DefectData, Tri,
};
pub use report::{decide, Assertions, Clause, HypStatus, Hypothesis, Outcome, Quantity, Verdict, VerificationReport};
pub use theorems::{
    check_composition_dci, check_duality, check_gamma_zero, check_height_bounds, check_locfree_fitting,
    check_purity_branch, check_purity_critical, cutkosky_bound_report,
};
