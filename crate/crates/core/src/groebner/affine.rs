use std::sync::Arc;

use super::engine::Budget;
use super::ideal::Ideal;
use crate::error::Result;
use crate::polyring::{Poly, PolyRing, RingDecl};

/// Coordinate ring `B = R/I` of an affine scheme.
#[derive(Clone, Debug)]
pub struct AffineRing {
    pub name: String,
    pub ring: Arc<PolyRing>,
    pub ideal: Ideal,
}

impl AffineRing {
    pub fn new(name: &str, ring: &Arc<PolyRing>, gens: Vec<Poly>) -> Arc<Self> {
        Arc::new(AffineRing { name: name.to_string(), ring: ring.clone(), ideal: Ideal::new(ring, gens) })
    }

    pub fn polynomial(name: &str, ring: &Arc<PolyRing>) -> Arc<Self> {
        Self::new(name, ring, Vec::new())
    }

    pub fn from_decl(decl: &RingDecl) -> Arc<Self> {
        Self::new(&decl.name, &decl.ring, decl.ideal_gens.clone())
    }

    pub fn nvars(&self) -> usize {
        self.ring.nvars()
    }

    pub fn is_polynomial(&self) -> bool {
        self.ideal.is_zero()
    }

    pub fn reduce(&self, p: &Poly, budget: &Budget) -> Result<Poly> {
        if self.ideal.is_zero() {
            return Ok(p.clone());
        }
        Ok(self.ideal.gb(budget)?.normal_form(p))
    }

    pub fn is_zero(&self, p: &Poly, budget: &Budget) -> Result<bool> {
        Ok(self.reduce(p, budget)?.is_zero())
    }

    pub fn dim(&self, budget: &Budget) -> Result<i64> {
        self.ideal.krull_dim(budget)
    }

    /// Whether every generator of `I` vanishes at the origin.
    pub fn contains_origin(&self) -> bool {
        self.ideal.gens().iter().all(|g| g.vanishes_at_origin())
    }

    /// The ideal `I + (extra)` of `R`.
    pub fn ideal_with(&self, extra: &[Poly]) -> Ideal {
        self.ideal.with_gens(extra)
    }

    /// Codimension in `Spec B` of the locus cut out by `locus` (an ideal of `R`); `None` when empty.
    pub fn codim(&self, locus: &Ideal, budget: &Budget) -> Result<Option<i64>> {
        self.ideal.codim_in(locus, budget)
    }
}
