//! Differential modules of a morphism `X -> Y` of affine schemes over a field,
//! given by a ring map `k[y]/J -> k[x]/I`.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::groebner::{AffineRing, Budget};
use crate::polyring::Poly;
use crate::resolve::{
    dual_module, generic_rank, image_module, module_contains, prune, subquotient, syzygy, Matrix, PresentedModule,
};

/// Ring map `source = k[y]/J -> target = k[x]/I`, `y_j -> images[j]`.
#[derive(Clone, Debug)]
pub struct MorphismDecl {
    pub name: String,
    pub source: Arc<AffineRing>,
    pub target: Arc<AffineRing>,
    pub images: Vec<Poly>,
}

impl MorphismDecl {
    /// Checks that every generator of `J` maps into `I`.
    pub fn new(
        name: &str,
        source: &Arc<AffineRing>,
        target: &Arc<AffineRing>,
        images: Vec<Poly>,
        budget: &Budget,
    ) -> Result<Self> {
        if images.len() != source.nvars() {
            return Err(Error::LengthMismatch(source.nvars(), images.len()));
        }
        for g in source.ideal.gens() {
            let pulled = g.substitute(&images, &target.ring)?;
            if !target.is_zero(&pulled, budget)? {
                return Err(Error::IllDefinedMorphism { map: name.to_string(), generator: g.to_string() });
            }
        }
        Ok(MorphismDecl { name: name.to_string(), source: source.clone(), target: target.clone(), images })
    }

    /// `g(f_1, ..., f_m)` in the target ring.
    pub fn pull_back(&self, g: &Poly) -> Result<Poly> {
        g.substitute(&self.images, &self.target.ring)
    }

    /// `n_X x n_Y` matrix whose `j`-th column is the gradient of `f_j`.
    pub fn jacobian(&self) -> Matrix {
        let ring = &self.target.ring;
        let cols = self.images.iter().map(|f| f.gradient()).collect();
        Matrix::from_cols(ring, ring.nvars(), cols)
    }

    /// `n_Y x #gens(J)` matrix of gradients of the generators of `J`, evaluated at `f`.
    pub fn pulled_relations(&self) -> Result<Matrix> {
        let ring = &self.target.ring;
        let mut cols = Vec::new();
        for g in self.source.ideal.gens() {
            let col: Result<Vec<Poly>> = g.gradient().iter().map(|p| self.pull_back(p)).collect();
            cols.push(col?);
        }
        Ok(Matrix::from_cols(ring, self.source.nvars(), cols))
    }
}

fn gradient_matrix(base: &AffineRing) -> Matrix {
    let cols = base.ideal.gens().iter().map(|g| g.gradient()).collect();
    Matrix::from_cols(&base.ring, base.nvars(), cols)
}

/// `Omega_{X/k}`: generators `dx_i`, relations the gradients of the generators of `I`.
pub fn kaehler(base: &Arc<AffineRing>, budget: &Budget) -> Result<PresentedModule> {
    PresentedModule::new(base, gradient_matrix(base), budget)
}

/// `Omega_{X/Y}`: the relations of `Omega_X` together with the Jacobian columns.
pub fn relative_kaehler(m: &MorphismDecl, budget: &Budget) -> Result<PresentedModule> {
    PresentedModule::new(&m.target, gradient_matrix(&m.target).hcat(&m.jacobian()), budget)
}

/// `pi^* Omega_{Y/k}` over the target ring, generators `dy_j`.
pub fn pulled_cotangent(m: &MorphismDecl, budget: &Budget) -> Result<PresentedModule> {
    PresentedModule::new(&m.target, m.pulled_relations()?, budget)
}

/// `Gamma = ker(pi^* Omega_Y -> Omega_X)`, generators in `dy` coordinates.
pub fn imperfection(m: &MorphismDecl, budget: &Budget) -> Result<PresentedModule> {
    let base = &m.target;
    let k = gradient_matrix(base);
    let ny = m.source.nvars();
    let pre = syzygy(base, &m.jacobian().hcat(&k), budget)?.top_rows(ny);
    let p = m.pulled_relations()?;
    let g = prune(base, &pre, &p, budget)?;
    subquotient(base, &g, &p, budget)
}

/// `V = im(pi^* Omega_Y -> Omega_X)`, generators the `df_j` in `dx` coordinates.
pub fn image_cotangent(m: &MorphismDecl, budget: &Budget) -> Result<PresentedModule> {
    subquotient(&m.target, &m.jacobian(), &gradient_matrix(&m.target), budget)
}

/// `T_{X/k} = Hom(Omega_X, O_X)`, generators as derivation vectors.
pub fn tangent(base: &Arc<AffineRing>, budget: &Budget) -> Result<PresentedModule> {
    dual_module(&kaehler(base, budget)?, budget)
}

/// `T_{X -> Y} = Hom(pi^* Omega_Y, O_X)` together with the columns `dpi(D)` for
/// the generators `D` of `T_X`.
pub fn tangent_along(m: &MorphismDecl, budget: &Budget) -> Result<(PresentedModule, Matrix)> {
    let base = &m.target;
    let ny = m.source.nvars();
    let p = m.pulled_relations()?;
    let k = if p.ncols() == 0 {
        Matrix::identity(&base.ring, ny)
    } else {
        let k = syzygy(base, &p.transpose(), budget)?;
        prune(base, &k, &Matrix::empty(&base.ring, ny), budget)?
    };
    let tx = tangent(base, budget)?;
    let derivations = tx.embedding.clone().unwrap_or_else(|| Matrix::identity(&base.ring, base.nvars()));
    let dpi = m.jacobian().transpose().mul(&derivations);
    for col in dpi.cols() {
        if !module_contains(base, &k, col, budget)? {
            return Err(Error::Indeterminate(format!("tangent image of {} leaves T_(X->Y)", m.name)));
        }
    }
    let t = image_module(base, &k, budget)?;
    Ok((t, dpi))
}

/// `C_{X/Y} = coker(dpi: T_X -> T_{X->Y})`.
pub fn critical_module(m: &MorphismDecl, budget: &Budget) -> Result<PresentedModule> {
    let (t, dpi) = tangent_along(m, budget)?;
    let k = t.embedding.expect("tangent module carries its embedding");
    subquotient(&m.target, &k, &dpi, budget)
}

/// `T-bar = im(dpi)` inside `T_{X->Y}`.
pub fn image_tangent(m: &MorphismDecl, budget: &Budget) -> Result<PresentedModule> {
    let (_, dpi) = tangent_along(m, budget)?;
    let base = &m.target;
    let dpi = prune(base, &dpi, &Matrix::empty(&base.ring, dpi.nrows()), budget)?;
    image_module(base, &dpi, budget)
}

/// `d_{X/Y}`: generic rank of `Omega_{X/Y}`.
pub fn relative_dimension(m: &MorphismDecl, budget: &Budget) -> Result<usize> {
    generic_rank(&relative_kaehler(m, budget)?, budget)
}

/// All differential modules of a morphism.
#[derive(Clone, Debug)]
pub struct DiffPackage {
    pub omega_x: PresentedModule,
    pub omega_y_pulled: PresentedModule,
    pub omega_xy: PresentedModule,
    pub gamma: PresentedModule,
    pub v_image: PresentedModule,
    pub t_x: PresentedModule,
    pub t_x_to_y: PresentedModule,
    pub critical: PresentedModule,
    pub t_bar: PresentedModule,
    pub dpi: Matrix,
    pub d_xy: usize,
}

impl DiffPackage {
    pub fn compute(m: &MorphismDecl, budget: &Budget) -> Result<Self> {
        let omega_xy = relative_kaehler(m, budget)?;
        let d_xy = generic_rank(&omega_xy, budget)?;
        let (t_x_to_y, dpi) = tangent_along(m, budget)?;
        let k = t_x_to_y.embedding.clone().expect("embedded");
        let critical = subquotient(&m.target, &k, &dpi, budget)?;
        let pruned = prune(&m.target, &dpi, &Matrix::empty(&m.target.ring, dpi.nrows()), budget)?;
        Ok(DiffPackage {
            omega_x: kaehler(&m.target, budget)?,
            omega_y_pulled: pulled_cotangent(m, budget)?,
            omega_xy,
            gamma: imperfection(m, budget)?,
            v_image: image_cotangent(m, budget)?,
            t_x: tangent(&m.target, budget)?,
            t_x_to_y,
            critical,
            t_bar: image_module(&m.target, &pruned, budget)?,
            dpi,
            d_xy,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::{parse_poly, Field, MonomialOrder, PolyRing};
    use crate::resolve::fitting_ideal;

    fn ring(name: &str, vars: &[&str], gens: &[&str]) -> Arc<AffineRing> {
        let r = PolyRing::new(vars.iter().map(|s| s.to_string()).collect(), Field::Rational, MonomialOrder::GrevLex)
            .unwrap();
        let g = gens.iter().map(|s| parse_poly(s, &r).unwrap()).collect();
        AffineRing::new(name, &r, g)
    }

    fn map(src: &Arc<AffineRing>, tgt: &Arc<AffineRing>, images: &[&str]) -> Result<MorphismDecl> {
        let images = images.iter().map(|s| parse_poly(s, &tgt.ring).unwrap()).collect();
        MorphismDecl::new("pi", src, tgt, images, &Budget::default())
    }

    fn polys(b: &AffineRing, v: &[&str]) -> Vec<Poly> {
        v.iter().map(|s| parse_poly(s, &b.ring).unwrap()).collect()
    }

    fn gb(i: &crate::groebner::Ideal) -> Vec<String> {
        i.gb(&Budget::default()).unwrap().canonical_strings()
    }

    fn fold() -> MorphismDecl {
        let y = ring("Y", &["y1", "y2", "y3"], &[]);
        let x = ring("X", &["x1", "x2", "x3"], &[]);
        map(&y, &x, &["x2*x3 - x1", "x2", "x1*x3"]).unwrap()
    }

    fn whitney() -> MorphismDecl {
        let y = ring("Y", &["a", "b", "c"], &["a*c - b^2"]);
        let x = ring("X", &["s", "t"], &[]);
        map(&y, &x, &["s^2", "s*t", "t^2"]).unwrap()
    }

    fn cusp_chart() -> MorphismDecl {
        let a = ring("A", &["x", "y"], &["x^2 + y^3"]);
        let b = ring("B", &["xp", "yp"], &["xp^2 + yp"]);
        map(&a, &b, &["xp*yp", "yp"]).unwrap()
    }

    #[test]
    fn ill_defined_map_names_the_generator() {
        let y = ring("Y", &["a", "b", "c"], &["a*c - b^2"]);
        let x = ring("X", &["s", "t"], &[]);
        match map(&y, &x, &["s^2", "s*t", "t^3"]) {
            Err(Error::IllDefinedMorphism { generator, .. }) => assert_eq!(generator, "-b^2 + a*c"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn kaehler_presentations() {
        let bud = Budget::default();
        assert_eq!(kaehler(&ring("A3", &["x1", "x2", "x3"], &[]), &bud).unwrap().relations.ncols(), 0);
        let cone = ring("Y", &["a", "b", "c"], &["a*c - b^2"]);
        let om = kaehler(&cone, &bud).unwrap();
        let col: Vec<String> = om.relations.col(0).iter().map(|p| p.to_string()).collect();
        assert_eq!(col, ["c", "-2*b", "a"]);
        let cusp = ring("A", &["x", "y"], &["x^2 + y^3"]);
        let col: Vec<String> = kaehler(&cusp, &bud).unwrap().relations.col(0).iter().map(|p| p.to_string()).collect();
        assert_eq!(col, ["2*x", "3*y^2"]);
    }

    #[test]
    fn fold_differentials() {
        let bud = Budget::default();
        let m = fold();
        let om = relative_kaehler(&m, &bud).unwrap();
        assert_eq!(om.relations.ncols(), 3);
        assert_eq!(gb(&fitting_ideal(&om, 0, &bud).unwrap()), ["x2*x3 + x1"]);
        assert!(imperfection(&m, &bud).unwrap().is_zero(&bud).unwrap());
        let c = critical_module(&m, &bud).unwrap();
        assert_eq!(gb(&fitting_ideal(&c, 0, &bud).unwrap()), ["x2*x3 + x1"]);
        let (t, dpi) = tangent_along(&m, &bud).unwrap();
        assert_eq!((t.rank, t.relations.ncols()), (3, 0));
        assert_eq!(dpi, m.jacobian().transpose());
        assert_eq!(generic_rank(&image_tangent(&m, &bud).unwrap(), &bud).unwrap(), 3);
        assert_eq!(relative_dimension(&m, &bud).unwrap(), 0);
    }

    #[test]
    fn whitney_differentials() {
        let bud = Budget::default();
        let m = whitney();
        let om = relative_kaehler(&m, &bud).unwrap();
        assert_eq!(
            om.relations,
            Matrix::from_rows(
                &m.target.ring,
                vec![polys(&m.target, &["2*s", "t", "0"]), polys(&m.target, &["0", "s", "2*t"])]
            )
        );
        let (t, dpi) = tangent_along(&m, &bud).unwrap();
        let k = t.embedding.clone().unwrap();
        for v in [["2*s", "t", "0"], ["0", "s", "2*t"]] {
            assert!(module_contains(&m.target, &k, &polys(&m.target, &v), &bud).unwrap());
        }
        assert_eq!(dpi.ncols(), 2);
        let c = critical_module(&m, &bud).unwrap();
        assert!(c.is_zero(&bud).unwrap());
        assert_eq!(generic_rank(&image_tangent(&m, &bud).unwrap(), &bud).unwrap(), 2);
        assert_eq!(relative_dimension(&m, &bud).unwrap(), 0);
    }

    #[test]
    fn identity_and_projection() {
        let bud = Budget::default();
        let a1 = ring("A1", &["x"], &[]);
        let id = map(&a1, &a1, &["x"]).unwrap();
        assert!(relative_kaehler(&id, &bud).unwrap().is_zero(&bud).unwrap());
        assert!(imperfection(&id, &bud).unwrap().is_zero(&bud).unwrap());
        assert!(critical_module(&id, &bud).unwrap().is_zero(&bud).unwrap());
        assert_eq!(tangent_along(&id, &bud).unwrap().1.col(0)[0].to_string(), "1");
        assert_eq!(generic_rank(&image_tangent(&id, &bud).unwrap(), &bud).unwrap(), 1);
        let a2 = ring("A2", &["x", "y"], &[]);
        let proj = map(&a1, &a2, &["x"]).unwrap();
        assert_eq!(relative_dimension(&proj, &bud).unwrap(), 1);
        assert!(critical_module(&proj, &bud).unwrap().is_zero(&bud).unwrap());
    }

    #[test]
    fn cusp_chart_imperfection() {
        let bud = Budget::default();
        let m = cusp_chart();
        let gamma = imperfection(&m, &bud).unwrap();
        assert!(!gamma.is_zero(&bud).unwrap());
        let g = gamma.embedding.clone().unwrap();
        let p = m.pulled_relations().unwrap();
        // 2y dx - 3x dy pulled back lies in Gamma
        let tau = polys(&m.target, &["2*yp", "-3*xp*yp"]);
        assert!(module_contains(&m.target, &g.hcat(&p), &tau, &bud).unwrap());
        // and Gamma is generated by tau / yp
        let w = polys(&m.target, &["2", "-3*xp"]);
        let wm = Matrix::from_cols(&m.target.ring, 2, vec![w.clone()]);
        assert!(module_contains(&m.target, &g.hcat(&p), &w, &bud).unwrap());
        for c in g.cols() {
            assert!(module_contains(&m.target, &wm.hcat(&p), c, &bud).unwrap());
        }
    }
}
