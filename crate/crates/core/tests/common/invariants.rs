//! Invariant bodies shared by the property suite and the acceptance run.

use branchloc::cli::parse_scenario;
use branchloc::groebner::{buchberger, Budget, Ideal};
use branchloc::polyring::{parse_poly, Poly};
use branchloc::resolve::{betti_at_origin, fitting_ideal, Matrix, Pd, PresentedModule};
use proptest::prelude::*;
use proptest::test_runner::TestCaseError;

use super::*;

pub type LinearSpec = (usize, usize, Vec<(i64, i64)>);
pub type Terms = Vec<(u16, u16, i64)>;

/// `F_i(coker phi) = F_{m - n + i}(coker phi^T)` for `phi` with `n` rows and `m` columns.
pub fn dual_fitting(spec: &LinearSpec) -> Result<(), TestCaseError> {
    let base = plane();
    let b = Budget::default();
    let phi = build_linear(&base.ring, spec);
    let (n, m) = (phi.nrows() as i64, phi.ncols() as i64);
    let coker = PresentedModule::new(&base, phi.clone(), &b).unwrap();
    let dual = PresentedModule::new(&base, phi.transpose(), &b).unwrap();
    for i in 0..=n {
        let j = m - n + i;
        if j < 0 {
            continue;
        }
        let f = fitting_ideal(&coker, i as usize, &b).unwrap();
        let g = fitting_ideal(&dual, j as usize, &b).unwrap();
        prop_assert!(f.same_as(&g, &b).unwrap(), "phi = {phi}, i = {i}");
    }
    Ok(())
}

pub fn fitting_chain((entries, rows): &(Vec<Terms>, usize)) -> Result<(), TestCaseError> {
    let base = plane();
    let b = Budget::default();
    let rows = *rows;
    let cols = entries.len().div_ceil(rows);
    let mut polys: Vec<_> = entries.iter().map(|t| poly_from(&base.ring, t)).collect();
    polys.resize(rows * cols, Poly::zero(&base.ring));
    let phi = Matrix::from_rows(&base.ring, polys.chunks(cols).map(|r| r.to_vec()).collect());
    let m = PresentedModule::new(&base, phi, &b).unwrap();
    for i in 0..=rows {
        let (lo, hi) = (fitting_ideal(&m, i, &b).unwrap(), fitting_ideal(&m, i + 1, &b).unwrap());
        prop_assert!(hi.contains_ideal(&lo, &b).unwrap());
    }
    prop_assert!(fitting_ideal(&m, rows, &b).unwrap().is_unit(&b).unwrap());
    Ok(())
}

/// `pd + depth = 2` at the origin, with depth from an independent regular-sequence oracle.
pub fn auslander_buchsbaum(spec: &LinearSpec) -> Result<(), TestCaseError> {
    let base = plane();
    let b = Budget::default();
    let m = PresentedModule::new(&base, build_linear(&base.ring, spec), &b).unwrap();
    if m.is_zero(&b).unwrap() {
        return Ok(());
    }
    let betti = betti_at_origin(&m, &b).unwrap();
    let Pd::Exact(pd) = betti.pd else {
        return Err(TestCaseError::fail(format!("pd not determined: {betti:?}")));
    };
    prop_assert_eq!(pd + graded_depth(&m, &b), 2, "betti {:?}", betti.betti);
    Ok(())
}

/// `ht F_i <= (i + 1)(i + 1 + beta_1 - beta_0)` for proper nonzero Fitting ideals.
pub fn eagon_northcott(spec: &LinearSpec) -> Result<(), TestCaseError> {
    let base = plane();
    let b = Budget::default();
    let m = PresentedModule::new(&base, build_linear(&base.ring, spec), &b).unwrap();
    let betti = betti_at_origin(&m, &b).unwrap();
    let (b0, b1) = (betti.beta(0) as i64, betti.beta(1) as i64);
    for i in 0..b0 {
        let f = fitting_ideal(&m, i as usize, &b).unwrap();
        let Some(ht) = base.ideal.codim_in(&f, &b).unwrap() else { continue };
        if f.is_zero() || f.gb(&b).unwrap().is_zero_ideal() {
            continue;
        }
        prop_assert!(ht <= (i + 1) * (i + 1 + b1 - b0), "i = {i}, ht = {ht}, betti {:?}", betti.betti);
    }
    Ok(())
}

pub fn groebner_canonical(gens: &[Terms]) -> Result<(), TestCaseError> {
    let base = plane();
    let b = Budget::default();
    let polys: Vec<_> = gens.iter().map(|t| poly_from(&base.ring, t)).collect();
    let g = buchberger(&polys, &base.ring, &b).unwrap();
    let mut rev = polys.clone();
    rev.reverse();
    prop_assert_eq!(g.canonical_strings(), buchberger(&rev, &base.ring, &b).unwrap().canonical_strings());
    prop_assert_eq!(g.canonical_strings(), buchberger(g.elements(), &base.ring, &b).unwrap().canonical_strings());
    prop_assert_eq!(g.canonical_strings(), buchberger(&polys, &base.ring, &b).unwrap().canonical_strings());
    for p in &polys {
        prop_assert!(g.normal_form(p).is_zero());
    }
    let ideal = Ideal::new(&base.ring, polys);
    prop_assert!(ideal.same_as(&ideal.reduced(&b).unwrap(), &b).unwrap());
    Ok(())
}

pub fn poly_round_trip(terms: &Terms) -> Result<(), TestCaseError> {
    let base = plane();
    let p = poly_from(&base.ring, terms);
    prop_assert_eq!(parse_poly(&p.to_string(), &base.ring).unwrap(), p);
    Ok(())
}

pub fn scenario_round_trip((f, g, imax, lci): &(Terms, Terms, usize, bool)) -> Result<(), TestCaseError> {
    let base = plane();
    let (f, g) = (poly_from(&base.ring, f), poly_from(&base.ring, g));
    let not = if *lci { "" } else { "not " };
    let src = format!(
        "field Q\nring Y = [u, v]\nring X = [x, y] / () order lex\nmap m : Y -> X = {{ v = {g}; u = {f} }}\nassert m {not}lci\npoint X origin\nbudget degree 30\ntask branch(m, {imax})\ntask duality({imax})\ntask heights(omega(m))\ntask dci(X)\n"
    );
    let s = parse_scenario(&src).unwrap();
    let printed = s.to_string();
    let again = parse_scenario(&printed).unwrap();
    prop_assert_eq!(&again, &s);
    prop_assert_eq!(again.to_string(), printed);
    Ok(())
}

pub fn chain_input() -> impl Strategy<Value = (Vec<Terms>, usize)> {
    (prop::collection::vec(small_poly(), 1..=6), 1usize..=3)
}

pub fn gb_input() -> impl Strategy<Value = Vec<Terms>> {
    prop::collection::vec(small_poly(), 1..=3)
}

pub fn scenario_input() -> impl Strategy<Value = (Terms, Terms, usize, bool)> {
    (small_poly(), small_poly(), 0usize..3, any::<bool>())
}
