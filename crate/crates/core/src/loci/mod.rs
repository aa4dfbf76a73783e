//! Branch and critical schemes, their codimensions and components.

mod factor;
mod split;

use std::sync::Arc;

use serde::Serialize;

pub use factor::{factor, gcd, Factorization};
pub use split::{decompose, Component, Decomposition};

use crate::differentials::{critical_module, relative_dimension, relative_kaehler, MorphismDecl};
use crate::error::Result;
use crate::groebner::{AffineRing, Budget, Ideal};
use crate::polyring::{Poly, PolyRing};
use crate::resolve::{fitting_ideal, minors_ideal, Matrix};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum LocusKind {
    Branch,
    Critical,
    Smoothness,
    Discriminant,
}

#[derive(Clone, Debug, Serialize)]
pub struct ComponentReport {
    pub ideal: Vec<String>,
    pub codim: i64,
    pub prime: bool,
}

/// Codimension data of a locus inside `Spec B`.
#[derive(Clone, Debug, Serialize)]
pub struct CodimReport {
    /// `dim B - dim B/locus`, always certified; `None` for the empty locus.
    pub codim_lower: Option<i64>,
    /// Largest component codimension when certified, else `dim B`.
    pub codim_upper: Option<i64>,
    pub certified: bool,
    pub components: Vec<ComponentReport>,
    /// Reduced basis of the radical, when certified.
    pub radical: Option<Vec<String>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct LocusReport {
    pub kind: LocusKind,
    pub index: usize,
    #[serde(skip)]
    pub ideal: Ideal,
    /// Reduced Gröbner basis of the scheme ideal, including the ideal of the ambient ring.
    pub generators: Vec<String>,
    pub empty: bool,
    #[serde(flatten)]
    pub codim: CodimReport,
}

impl LocusReport {
    pub fn new(kind: LocusKind, index: usize, base: &AffineRing, locus: &Ideal, budget: &Budget) -> Result<Self> {
        let ideal = base.ideal.sum(locus).reduced(budget)?;
        let generators = ideal.gb(budget)?.canonical_strings();
        let empty = ideal.gb(budget)?.is_unit();
        let codim = codim_report(base, &ideal, budget)?;
        Ok(LocusReport { kind, index, ideal, generators, empty, codim })
    }

    /// Certified `codim⁺`, `None` when uncertified or empty.
    pub fn codim_plus(&self) -> Option<i64> {
        if self.codim.certified {
            self.codim.codim_upper
        } else {
            None
        }
    }
}

fn strings(i: &Ideal, budget: &Budget) -> Result<Vec<String>> {
    Ok(i.gb(budget)?.canonical_strings())
}

/// Lower bound from dimensions and upper bound from component splitting.
/// Splitting failures (including budget exhaustion) leave the upper bound uncertified.
pub fn codim_report(base: &AffineRing, locus: &Ideal, budget: &Budget) -> Result<CodimReport> {
    let lower = base.codim(locus, budget)?;
    let Some(lower) = lower else {
        return Ok(CodimReport {
            codim_lower: None,
            codim_upper: None,
            certified: true,
            components: Vec::new(),
            radical: None,
        });
    };
    let dim = base.dim(budget)?;
    let uncertified = CodimReport {
        codim_lower: Some(lower),
        codim_upper: Some(dim),
        certified: false,
        components: Vec::new(),
        radical: None,
    };
    let dec = match decompose(&base.ideal, locus, budget) {
        Ok(d) => d,
        Err(e) if e.is_indeterminate() => return Ok(uncertified),
        Err(e) => return Err(e),
    };
    let mut components = Vec::new();
    for c in &dec.components {
        components.push(ComponentReport { ideal: strings(&c.ideal, budget)?, codim: c.codim, prime: c.prime });
    }
    let upper = dec.components.iter().map(|c| c.codim).max().unwrap_or(lower);
    let radical = match dec.radical(budget) {
        Ok(r) => r.map(|r| strings(&r, budget)).transpose()?,
        Err(e) if e.is_indeterminate() => None,
        Err(e) => return Err(e),
    };
    let certified = dec.certified && radical.is_some();
    Ok(CodimReport {
        codim_lower: Some(lower),
        codim_upper: Some(if certified { upper } else { dim }),
        certified,
        components,
        radical,
    })
}

/// `B^{(i)}` cut out by `F_{d+i}(Ω_{X/Y})`.
pub fn branch_scheme(m: &MorphismDecl, i: usize, budget: &Budget) -> Result<LocusReport> {
    let omega = relative_kaehler(m, budget)?;
    let d = relative_dimension(m, budget)?;
    let f = fitting_ideal(&omega, d + i, budget)?;
    LocusReport::new(LocusKind::Branch, i, &m.target, &f, budget)
}

/// `C^{(i)}` cut out by `F_i(C)`.
pub fn critical_scheme(m: &MorphismDecl, i: usize, budget: &Budget) -> Result<LocusReport> {
    let c = critical_module(m, budget)?;
    let f = fitting_ideal(&c, i, budget)?;
    LocusReport::new(LocusKind::Critical, i, &m.target, &f, budget)
}

/// Closure of the image of the branch locus: eliminate the target variables from
/// `I + F_d(Ω_{X/Y}) + (y_j - f_j) + J` in the joint ring.
pub fn discriminant(m: &MorphismDecl, budget: &Budget) -> Result<Ideal> {
    let branch = branch_scheme(m, 0, budget)?;
    image_closure(m, branch.ideal.gens(), budget)
}

/// Ideal in the source ring of the closure of the image of `V(I + extra)`.
pub fn image_closure(m: &MorphismDecl, extra: &[Poly], budget: &Budget) -> Result<Ideal> {
    let x = &m.target.ring;
    let y = &m.source.ring;
    let (nx, ny) = (x.nvars(), y.nvars());
    let mut names = x.vars.clone();
    for v in &y.vars {
        let mut name = v.clone();
        while names.contains(&name) {
            name.push('\'');
        }
        names.push(name);
    }
    let joint = PolyRing::new(names, x.field, x.order)?;
    let from_x: Vec<usize> = (0..nx).collect();
    let from_y: Vec<usize> = (nx..nx + ny).collect();
    let mut gens: Vec<Poly> = m.target.ideal.gens().iter().chain(extra).map(|g| g.map_vars(&joint, &from_x)).collect();
    for (j, f) in m.images.iter().enumerate() {
        gens.push(Poly::var(&joint, nx + j).sub(&f.map_vars(&joint, &from_x)));
    }
    gens.extend(m.source.ideal.gens().iter().map(|g| g.map_vars(&joint, &from_y)));
    let elim = Ideal::new(&joint, gens).eliminate(&from_x, budget)?;
    let back: Vec<usize> = (0..nx + ny).map(|k| k.saturating_sub(nx)).collect();
    let out = Ideal::new(y, elim.gens().iter().map(|g| g.map_vars(y, &back)).collect());
    out.reduced(budget)
}

/// Non-smooth locus `I + I_c(∂g/∂x)` with `c = #vars - expected_dim`.
pub fn smoothness_locus(base: &Arc<AffineRing>, expected_dim: usize, budget: &Budget) -> Result<LocusReport> {
    let ring = &base.ring;
    let c = base.nvars().saturating_sub(expected_dim);
    let cols: Vec<Vec<Poly>> = base.ideal.gens().iter().map(|g| g.gradient()).collect();
    let jac = Matrix::from_cols(ring, base.nvars(), cols);
    let locus = minors_ideal(base, &jac, c, budget)?;
    LocusReport::new(LocusKind::Smoothness, 0, base, &locus, budget)
}
