use std::sync::Arc;

use super::matrix::Matrix;
use crate::error::Result;
use crate::groebner::{module_groebner, module_normal_form, AffineRing, Budget, ModVec};
use crate::polyring::Poly;

/// Finitely presented module `coker(B^m -> B^n)` over `B = R/I`.
///
/// `relations` has `rank` rows; the relations `I * e_i` are implicit.
/// `embedding`, when present, expresses each generator as a vector in some
/// ambient free module (for kernels, images and other submodules).
#[derive(Clone, Debug)]
pub struct PresentedModule {
    pub base: Arc<AffineRing>,
    pub rank: usize,
    pub relations: Matrix,
    pub embedding: Option<Matrix>,
}

impl PresentedModule {
    pub fn new(base: &Arc<AffineRing>, relations: Matrix, budget: &Budget) -> Result<Self> {
        let rank = relations.nrows();
        let relations = clean_columns(base, &relations, budget)?;
        Ok(PresentedModule { base: base.clone(), rank, relations, embedding: None })
    }

    pub fn free(base: &Arc<AffineRing>, rank: usize) -> Self {
        PresentedModule { base: base.clone(), rank, relations: Matrix::empty(&base.ring, rank), embedding: None }
    }

    pub fn with_embedding(mut self, embedding: Matrix) -> Self {
        assert_eq!(embedding.ncols(), self.rank);
        self.embedding = Some(embedding);
        self
    }

    /// Relations together with the columns `g * e_i` for `g` in the generators of `I`.
    pub fn full_relations(&self) -> Matrix {
        let mut m = self.relations.clone();
        for g in self.base.ideal.gens() {
            for i in 0..self.rank {
                let mut col = vec![Poly::zero(&self.base.ring); self.rank];
                col[i] = g.clone();
                m.push_col(col);
            }
        }
        m
    }

    /// The same module viewed over the ambient polynomial ring.
    pub fn over_ambient(&self) -> PresentedModule {
        let base = AffineRing::polynomial(&self.base.name, &self.base.ring);
        PresentedModule { base, rank: self.rank, relations: self.full_relations(), embedding: self.embedding.clone() }
    }

    pub fn is_zero(&self, budget: &Budget) -> Result<bool> {
        let gb = submodule_gb(&self.base, &self.relations, budget)?;
        let ring = &self.base.ring;
        for i in 0..self.rank {
            let mut e = vec![Poly::zero(ring); self.rank];
            e[i] = Poly::one(ring);
            if !module_normal_form(ring, &ModVec::from_column(&e, 0), &gb).is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Whether the generators reduce to zero modulo the relations.
    pub fn generators_vanish(&self, budget: &Budget) -> Result<bool> {
        self.is_zero(budget)
    }
}

/// Reduces entries modulo `I` and drops zero or repeated columns.
pub(crate) fn clean_columns(base: &AffineRing, a: &Matrix, budget: &Budget) -> Result<Matrix> {
    let mut out = Matrix::empty(&base.ring, a.nrows());
    for c in a.cols() {
        let mut col = Vec::with_capacity(c.len());
        for p in c {
            col.push(base.reduce(p, budget)?);
        }
        if col.iter().all(Poly::is_zero) || out.cols().contains(&col) {
            continue;
        }
        out.push_col(col);
    }
    Ok(out)
}

/// Gröbner basis of `im(a) + I * R^n` in `R^n`.
pub(crate) fn submodule_gb(base: &AffineRing, a: &Matrix, budget: &Budget) -> Result<Vec<ModVec>> {
    let n = a.nrows();
    let mut gens: Vec<ModVec> = a.cols().iter().map(|c| ModVec::from_column(c, 0)).collect();
    if !base.ideal.is_zero() {
        for g in base.ideal.gb(budget)?.elements() {
            for i in 0..n {
                gens.push(ModVec::from_poly_at(g, i));
            }
        }
    }
    module_groebner(&base.ring, &gens, budget, n <= 1)
}

/// Whether `v` lies in `im(a) + I * R^n`.
pub fn module_contains(base: &AffineRing, a: &Matrix, v: &[Poly], budget: &Budget) -> Result<bool> {
    let gb = submodule_gb(base, a, budget)?;
    Ok(module_normal_form(&base.ring, &ModVec::from_column(v, 0), &gb).is_zero())
}

/// Generators of `ker(B^m -> B^n, v -> a v)`.
pub fn syzygy(base: &AffineRing, a: &Matrix, budget: &Budget) -> Result<Matrix> {
    let ring = &base.ring;
    let (n, m) = (a.nrows(), a.ncols());
    if n == 0 {
        return Ok(Matrix::identity(ring, m));
    }
    let mut gens = Vec::with_capacity(m + n * base.ideal.gens().len());
    for (j, c) in a.cols().iter().enumerate() {
        let mut v = ModVec::from_column(c, 0);
        v = v.add(ring, &ModVec::from_poly_at(&Poly::one(ring), n + j));
        gens.push(v);
    }
    if !base.ideal.is_zero() {
        for g in base.ideal.gb(budget)?.elements() {
            for i in 0..n {
                gens.push(ModVec::from_poly_at(g, i));
            }
        }
    }
    let gb = module_groebner(ring, &gens, budget, false)?;
    let mut out = Matrix::empty(ring, m);
    for v in gb.iter().filter(|v| v.min_position().is_some_and(|p| p >= n)) {
        out.push_col(v.project_from(n).to_column(ring, m));
    }
    clean_columns(base, &out, budget)
}

/// Drops columns of `g` lying in the span of the remaining columns plus `im(rel) + I`.
pub fn prune(base: &AffineRing, g: &Matrix, rel: &Matrix, budget: &Budget) -> Result<Matrix> {
    let mut keep: Vec<usize> = (0..g.ncols()).collect();
    let mut k = keep.len();
    while k > 0 {
        k -= 1;
        let others: Vec<usize> = keep.iter().copied().filter(|&j| j != keep[k]).collect();
        let span = g.select_cols(&others).hcat(rel);
        if module_contains(base, &span, g.col(keep[k]), budget)? {
            keep.remove(k);
        }
    }
    Ok(g.select_cols(&keep))
}

/// Presentation of `(im g + im r) / im r`, with the columns of `g` as generators.
pub fn subquotient(base: &Arc<AffineRing>, g: &Matrix, r: &Matrix, budget: &Budget) -> Result<PresentedModule> {
    let s = syzygy(base, &g.hcat(r), budget)?;
    let rel = s.top_rows(g.ncols());
    Ok(PresentedModule::new(base, rel, budget)?.with_embedding(g.clone()))
}

/// The submodule generated by the columns of `g`, presented by its syzygies.
pub fn image_module(base: &Arc<AffineRing>, g: &Matrix, budget: &Budget) -> Result<PresentedModule> {
    subquotient(base, g, &Matrix::empty(&base.ring, g.nrows()), budget)
}

/// `ker(a)` as a module, embedded in `B^{ncols}`.
pub fn kernel_module(base: &Arc<AffineRing>, a: &Matrix, budget: &Budget) -> Result<PresentedModule> {
    let k = syzygy(base, a, budget)?;
    let k = prune(base, &k, &Matrix::empty(&base.ring, k.nrows()), budget)?;
    image_module(base, &k, budget)
}
