use std::collections::BTreeSet;

use super::matrix::{determinant, subsets, Matrix};
use super::module::PresentedModule;
use crate::error::Result;
use crate::groebner::{AffineRing, Budget, Ideal};
use crate::polyring::Poly;

fn minor(a: &Matrix, rows: &[usize], cols: &[usize]) -> Poly {
    let m: Vec<Vec<Poly>> = rows.iter().map(|&i| cols.iter().map(|&j| a.entry(i, j).clone()).collect()).collect();
    determinant(&m, a.ring())
}

/// Ideal of `R` generated by `I` and the `k`-minors of `a`, minors reduced modulo `I`.
pub fn minors_ideal(base: &AffineRing, a: &Matrix, k: usize, budget: &Budget) -> Result<Ideal> {
    let ring = &base.ring;
    if k == 0 {
        return Ok(Ideal::unit(ring));
    }
    if k > a.nrows() || k > a.ncols() {
        return Ok(base.ideal.clone());
    }
    let col_sets = subsets(a.ncols(), k);
    let mut seen = BTreeSet::new();
    let mut gens = Vec::new();
    for rows in subsets(a.nrows(), k) {
        for cols in &col_sets {
            let d = base.reduce(&minor(a, &rows, cols), budget)?;
            if d.is_zero() {
                continue;
            }
            if d.is_constant() {
                return Ok(Ideal::unit(ring));
            }
            let d = d.monic();
            if seen.insert(d.to_string()) {
                gens.push(d);
            }
        }
    }
    Ok(base.ideal_with(&gens))
}

/// `F_i(M) = I_{n-i}(A) + I`, with `F_i = (1)` for `i >= n`.
pub fn fitting_ideal(m: &PresentedModule, i: usize, budget: &Budget) -> Result<Ideal> {
    if i >= m.rank {
        return Ok(Ideal::unit(&m.base.ring));
    }
    minors_ideal(&m.base, &m.relations, m.rank - i, budget)
}

/// Whether some `k`-minor of `a` is nonzero in `B`.
fn has_nonzero_minor(base: &AffineRing, a: &Matrix, k: usize, budget: &Budget) -> Result<bool> {
    if k == 0 {
        return Ok(true);
    }
    if k > a.nrows() || k > a.ncols() {
        return Ok(false);
    }
    let col_sets = subsets(a.ncols(), k);
    for rows in subsets(a.nrows(), k) {
        for cols in &col_sets {
            if !base.is_zero(&minor(a, &rows, cols), budget)? {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

/// Generic rank `min { i : F_i(M) != 0 in B }`, valid when `B` is a domain.
pub fn generic_rank(m: &PresentedModule, budget: &Budget) -> Result<usize> {
    for i in 0..m.rank {
        if has_nonzero_minor(&m.base, &m.relations, m.rank - i, budget)? {
            return Ok(i);
        }
    }
    Ok(m.rank)
}
