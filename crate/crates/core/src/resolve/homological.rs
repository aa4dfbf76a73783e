use super::matrix::Matrix;
use super::module::{image_module, module_contains, prune, subquotient, syzygy, PresentedModule};
use super::resolution::{betti_at_origin, free_resolution, Pd};
use crate::error::{Error, Result};
use crate::groebner::Budget;
use crate::polyring::Poly;

/// `Hom_B(M, B) = ker(A^T)`, generators embedded in `B^n`.
pub fn dual_module(m: &PresentedModule, budget: &Budget) -> Result<PresentedModule> {
    let base = &m.base;
    let k = syzygy(base, &m.relations.transpose(), budget)?;
    let k = prune(base, &k, &Matrix::empty(&base.ring, m.rank), budget)?;
    image_module(base, &k, budget)
}

/// `D(M) = coker(A^T)`.
pub fn transpose_module(m: &PresentedModule, budget: &Budget) -> Result<PresentedModule> {
    PresentedModule::new(&m.base, m.relations.transpose(), budget)
}

/// `Ext^i_B(M, B)` as the homology of the dualized resolution at `F_i^*`.
pub fn ext_module(m: &PresentedModule, i: usize, budget: &Budget) -> Result<PresentedModule> {
    let base = &m.base;
    let res = free_resolution(m, i + 1, budget)?;
    if !res.terminated && res.len() < i + 1 {
        return Err(Error::Indeterminate(format!("resolution truncated before step {}", i + 1)));
    }
    let rank = res.rank(i);
    if rank == 0 {
        return Ok(PresentedModule::free(base, 0));
    }
    let cycles = match res.maps.get(i) {
        Some(d) => syzygy(base, &d.transpose(), budget)?,
        None => Matrix::identity(&base.ring, rank),
    };
    let boundaries = if i == 0 { Matrix::empty(&base.ring, rank) } else { res.maps[i - 1].transpose() };
    let cycles = prune(base, &cycles, &boundaries, budget)?;
    subquotient(base, &cycles, &boundaries, budget)
}

/// `{ m in M : f^N m = 0 }`, generators embedded in the ambient `B^n` of `M`.
pub fn torsion_submodule(m: &PresentedModule, f: &Poly, budget: &Budget) -> Result<PresentedModule> {
    assert!(!f.is_zero(), "torsion witness must be nonzero");
    let base = &m.base;
    let ring = &base.ring;
    let n = m.rank;
    let rel = &m.relations;
    let mut g = f.clone();
    let mut prev: Option<Matrix> = None;
    for _ in 0..8 {
        let s = syzygy(base, &Matrix::scalar(ring, n, &g).hcat(rel), budget)?;
        let t = prune(base, &s.top_rows(n), rel, budget)?;
        if let Some(p) = &prev {
            let span = p.hcat(rel);
            let mut stable = true;
            for c in t.cols() {
                if !module_contains(base, &span, c, budget)? {
                    stable = false;
                    break;
                }
            }
            if stable {
                return subquotient(base, p, rel, budget);
            }
        }
        prev = Some(t);
        g = g.mul(&g);
        if g.total_degree().unwrap_or(0) > budget.degree_cap {
            break;
        }
    }
    Err(Error::BudgetExceeded("torsion computation did not stabilize".into()))
}

/// `depth M = #vars - pd_R(M)` at the origin, by Auslander–Buchsbaum over the ambient polynomial ring.
pub fn depth_at_origin(m: &PresentedModule, budget: &Budget) -> Result<usize> {
    let amb = m.over_ambient();
    let betti = betti_at_origin(&amb, budget)?;
    if betti.betti.is_empty() {
        return Err(Error::Indeterminate("module vanishes at the origin".into()));
    }
    match betti.pd {
        Pd::Exact(p) => Ok(amb.base.nvars() - p),
        Pd::AtLeast(_) => Err(Error::Indeterminate("projective dimension not determined".into())),
    }
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::groebner::AffineRing;
    use crate::polyring::{parse_poly, Field, MonomialOrder, PolyRing};
    use crate::resolve::fitting_ideal;

    fn base(vars: &[&str], gens: &[&str]) -> Arc<AffineRing> {
        let r = PolyRing::new(vars.iter().map(|s| s.to_string()).collect(), Field::Rational, MonomialOrder::GrevLex)
            .unwrap();
        let g = gens.iter().map(|s| parse_poly(s, &r).unwrap()).collect();
        AffineRing::new("B", &r, g)
    }

    fn module(b: &Arc<AffineRing>, rows: &[&[&str]]) -> PresentedModule {
        let rows = rows.iter().map(|row| row.iter().map(|s| parse_poly(s, &b.ring).unwrap()).collect()).collect();
        PresentedModule::new(b, Matrix::from_rows(&b.ring, rows), &Budget::default()).unwrap()
    }

    fn gb(i: &crate::groebner::Ideal) -> Vec<String> {
        i.gb(&Budget::default()).unwrap().canonical_strings()
    }

    #[test]
    fn dual_of_free_and_affine_plane() {
        let bud = Budget::default();
        let b = base(&["x", "y"], &[]);
        let d = dual_module(&PresentedModule::free(&b, 2), &bud).unwrap();
        assert_eq!(d.rank, 2);
        assert_eq!(d.relations.ncols(), 0);
    }

    #[test]
    fn derivations_of_the_cusp() {
        let bud = Budget::default();
        let b = base(&["x", "y"], &["x^2 + y^3"]);
        let omega = module(&b, &[&["2*x"], &["3*y^2"]]);
        let t = dual_module(&omega, &bud).unwrap();
        let emb = t.embedding.clone().unwrap();
        assert_eq!(emb.ncols(), 2);
        // each generator annihilates the relation (2x, 3y^2) modulo the cusp
        for c in emb.cols() {
            let v =
                c[0].mul(&parse_poly("2*x", &b.ring).unwrap()).add(&c[1].mul(&parse_poly("3*y^2", &b.ring).unwrap()));
            assert!(b.is_zero(&v, &bud).unwrap());
        }
        // both expected derivations lie in the span
        for v in [["3*x", "2*y"], ["3*y^2", "-2*x"]] {
            let v: Vec<Poly> = v.iter().map(|s| parse_poly(s, &b.ring).unwrap()).collect();
            assert!(module_contains(&b, &emb, &v, &bud).unwrap());
        }
    }

    #[test]
    fn transpose_of_a_row() {
        let bud = Budget::default();
        let b = base(&["x", "y"], &[]);
        let m = module(&b, &[&["x", "y"]]);
        let d = transpose_module(&m, &bud).unwrap();
        assert_eq!(d.rank, 2);
        // coker of a 2x1 column: F_0 = (0), F_1 = (x, y)
        assert!(fitting_ideal(&d, 0, &bud).unwrap().is_zero());
        assert_eq!(gb(&fitting_ideal(&d, 1, &bud).unwrap()), ["x", "y"]);
    }

    #[test]
    fn ext_of_residue_field() {
        let bud = Budget::default();
        let b = base(&["x", "y"], &[]);
        let k = module(&b, &[&["x", "y"]]);
        assert!(ext_module(&k, 1, &bud).unwrap().is_zero(&bud).unwrap());
        let e2 = ext_module(&k, 2, &bud).unwrap();
        assert_eq!(gb(&fitting_ideal(&e2, 0, &bud).unwrap()), ["x", "y"]);
        assert!(ext_module(&k, 0, &bud).unwrap().is_zero(&bud).unwrap());
    }

    #[test]
    fn torsion_of_cusp_differentials() {
        let bud = Budget::default();
        let b = base(&["x", "y"], &["x^2 + y^3"]);
        let omega = module(&b, &[&["2*x"], &["3*y^2"]]);
        let x = parse_poly("x", &b.ring).unwrap();
        let t = torsion_submodule(&omega, &x, &bud).unwrap();
        let emb = t.embedding.clone().unwrap();
        assert_eq!(emb.ncols(), 1, "{emb}");
        let w: Vec<Poly> = ["2*y", "-3*x"].iter().map(|s| parse_poly(s, &b.ring).unwrap()).collect();
        assert!(module_contains(&b, &emb.hcat(&omega.relations), &w, &bud).unwrap());
        let gen = emb.col(0).to_vec();
        assert!(
            module_contains(&b, &Matrix::from_cols(&b.ring, 2, vec![w]).hcat(&omega.relations), &gen, &bud).unwrap()
        );
    }

    #[test]
    fn torsion_of_free_and_residue_field() {
        let bud = Budget::default();
        let b = base(&["x"], &[]);
        let x = parse_poly("x", &b.ring).unwrap();
        let t = torsion_submodule(&PresentedModule::free(&b, 2), &x, &bud).unwrap();
        assert_eq!(t.rank, 0);
        let k = module(&b, &[&["x"]]);
        let t = torsion_submodule(&k, &x, &bud).unwrap();
        assert_eq!(t.rank, 1);
        assert!(!t.is_zero(&bud).unwrap());
    }

    #[test]
    fn depths() {
        let bud = Budget::default();
        let b = base(&["x", "y"], &[]);
        assert_eq!(depth_at_origin(&PresentedModule::free(&b, 1), &bud).unwrap(), 2);
        assert_eq!(depth_at_origin(&module(&b, &[&["x", "y"]]), &bud).unwrap(), 0);
        let s = base(&["s", "t"], &[]);
        let w = module(&s, &[&["2*s", "t", "0"], &["0", "s", "2*t"]]);
        assert_eq!(depth_at_origin(&w, &bud).unwrap(), 0);
    }
}
