use std::sync::Arc;

use serde::Serialize;

use super::report::{Assertions, HypStatus, Hypothesis};
use crate::differentials::{kaehler, relative_dimension, tangent, MorphismDecl};
use crate::error::{Error, Result};
use crate::groebner::{AffineRing, Budget, Ideal};
use crate::loci::{decompose, image_closure, smoothness_locus};
use crate::resolve::{
    betti_at_origin, default_cutoff, ext_module, fitting_ideal, free_resolution, generic_rank, image_module, Pd,
    PresentedModule,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Tri {
    Yes,
    No,
    Indeterminate,
}

impl std::fmt::Display for Tri {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Tri::Yes => "yes",
            Tri::No => "no",
            Tri::Indeterminate => "indeterminate",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum DciMode {
    Global,
    AtOrigin,
}

#[derive(Clone, Debug, Serialize)]
pub struct DciResult {
    pub answer: Tri,
    pub mode: DciMode,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub betti: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pd: Option<Pd>,
    pub witness: String,
}

fn undecided(mode: DciMode, e: Error) -> Result<DciResult> {
    if e.is_indeterminate() {
        Ok(DciResult { answer: Tri::Indeterminate, mode, betti: None, pd: None, witness: e.to_string() })
    } else {
        Err(e)
    }
}

/// `pd M <= 1`, either at the origin or at every point (the latter assumes `B` is a domain).
pub fn check_dci(m: &PresentedModule, mode: DciMode, budget: &Budget) -> Result<DciResult> {
    let r = match mode {
        DciMode::AtOrigin => dci_at_origin(m, budget),
        DciMode::Global => dci_global(m, budget),
    };
    r.or_else(|e| undecided(mode, e))
}

fn dci_at_origin(m: &PresentedModule, budget: &Budget) -> Result<DciResult> {
    let b = betti_at_origin(m, budget)?;
    let answer = match b.pd {
        Pd::Exact(p) => {
            if p <= 1 {
                Tri::Yes
            } else {
                Tri::No
            }
        }
        Pd::AtLeast(p) if p >= 2 => Tri::No,
        Pd::AtLeast(_) => Tri::Indeterminate,
    };
    Ok(DciResult {
        answer,
        mode: DciMode::AtOrigin,
        witness: format!("betti {:?}, pd {}", b.betti, b.pd),
        betti: Some(b.betti),
        pd: Some(b.pd),
    })
}

/// `M = coker(A)` has `pd <= 1` everywhere iff `K = im(A)` is locally free of its generic rank `r`,
/// i.e. `F_r(K) = (1)` and `F_{r-1}(K) = 0`.
fn dci_global(m: &PresentedModule, budget: &Budget) -> Result<DciResult> {
    let global = |answer, witness: String| DciResult { answer, mode: DciMode::Global, betti: None, pd: None, witness };
    if m.relations.ncols() == 0 {
        return Ok(global(Tri::Yes, "free module".into()));
    }
    let k = image_module(&m.base, &m.relations, budget)?;
    let r = generic_rank(&k, budget)?;
    let fr = fitting_ideal(&k, r, budget)?;
    if !fr.is_unit(budget)? {
        let gens = fr.gb(budget)?.canonical_strings().join(", ");
        return Ok(global(Tri::No, format!("relation module of generic rank {r} has F_{r} = ({gens})")));
    }
    if r > 0 {
        let below = fitting_ideal(&k, r - 1, budget)?;
        if !m.base.ideal.contains_ideal(&below, budget)? {
            return Ok(global(Tri::No, format!("relation module has nonzero F_{}", r - 1)));
        }
    }
    Ok(global(Tri::Yes, format!("relation module locally free of rank {r}")))
}

/// Sufficient test for `(S_2)` over a polynomial ring: `codim Ext^i(M, R) >= i + 2` for `1 <= i <= pd M`.
/// Never answers `No`.
pub fn serre_s2_sufficient(m: &PresentedModule, budget: &Budget) -> Result<Tri> {
    match s2_inner(m, budget) {
        Ok(t) => Ok(t),
        Err(e) if e.is_indeterminate() => Ok(Tri::Indeterminate),
        Err(e) => Err(e),
    }
}

fn s2_inner(m: &PresentedModule, budget: &Budget) -> Result<Tri> {
    if !m.base.is_polynomial() {
        return Ok(Tri::Indeterminate);
    }
    let res = free_resolution(m, default_cutoff(&m.base, budget)?, budget)?;
    if !res.terminated {
        return Ok(Tri::Indeterminate);
    }
    for i in 1..=res.len() {
        let e = ext_module(m, i, budget)?;
        let f0 = fitting_ideal(&e, 0, budget)?;
        if let Some(c) = m.base.codim(&f0, budget)? {
            if c < i as i64 + 2 {
                return Ok(Tri::Indeterminate);
            }
        }
    }
    Ok(Tri::Yes)
}

/// `sup_x β_0(M_x) = min { i : F_i(M) = (1) }`.
pub fn max_generators(m: &PresentedModule, budget: &Budget) -> Result<usize> {
    for i in 0..m.rank {
        if fitting_ideal(m, i, budget)?.is_unit(budget)? {
            return Ok(i);
        }
    }
    Ok(m.rank)
}

/// Defect numbers of `X/k`, as suprema over all points.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DefectData {
    /// Embedding dimension `sup β_0(Ω)`.
    pub ed: usize,
    /// Generic rank of `Ω`.
    pub d: usize,
    /// Smoothness defect `ed - d`.
    pub delta: usize,
    /// Tangent defect `sup β_0(T) - d`.
    pub eta: i64,
}

pub fn defects(base: &Arc<AffineRing>, budget: &Budget) -> Result<DefectData> {
    let omega = kaehler(base, budget)?;
    let ed = max_generators(&omega, budget)?;
    let d = generic_rank(&omega, budget)?;
    let t = tangent(base, budget)?;
    let tg = max_generators(&t, budget)?;
    Ok(DefectData { ed, d, delta: ed - d, eta: tg as i64 - d as i64 })
}

/// `X/k` smooth: empty non-smooth locus at the dimension of `X`.
pub fn is_smooth(base: &Arc<AffineRing>, budget: &Budget) -> Result<bool> {
    if base.is_polynomial() {
        return Ok(true);
    }
    let dim = base.dim(budget)?;
    if dim < 0 {
        return Ok(true);
    }
    Ok(smoothness_locus(base, dim as usize, budget)?.empty)
}

/// `d_{X/Y}` equals the transcendence degree `dim X - dim(closure of the image)`.
pub fn is_generically_smooth(m: &MorphismDecl, budget: &Budget) -> Result<bool> {
    let image = image_closure(m, &[], budget)?;
    let trdeg = m.target.dim(budget)? - image.krull_dim(budget)?;
    Ok(relative_dimension(m, budget)? as i64 == trdeg)
}

/// Certified primality of the ideal of `base`.
fn certified_domain(base: &AffineRing, budget: &Budget) -> Result<Option<bool>> {
    if base.is_polynomial() {
        return Ok(Some(true));
    }
    let dec = decompose(&Ideal::zero(&base.ring), &base.ideal, budget)?;
    if !dec.certified {
        return Ok(None);
    }
    match dec.components.as_slice() {
        [c] => Ok(Some(c.ideal.same_as(&base.ideal, budget)?)),
        _ => Ok(Some(false)),
    }
}

pub fn domain_hypothesis(base: &AffineRing, asserted: &Assertions, budget: &Budget) -> Result<Hypothesis> {
    let name = format!("{} integral", base.name);
    let found = match certified_domain(base, budget) {
        Ok(v) => v,
        Err(e) if e.is_indeterminate() => None,
        Err(e) => return Err(e),
    };
    Ok(match found {
        Some(b) => Hypothesis::new(&name, HypStatus::checked(b)),
        None => Hypothesis::new(&name, asserted.status(&base.name, "domain", HypStatus::Indeterminate)),
    })
}

/// Local complete intersection: checked for polynomial rings and hypersurfaces, asserted otherwise.
pub fn lci_hypothesis(base: &AffineRing, asserted: &Assertions, budget: &Budget) -> Result<Hypothesis> {
    let name = format!("{} l.c.i.", base.name);
    let gens = base.ideal.gb(budget)?.elements().len();
    if base.is_polynomial() || gens == 1 {
        return Ok(Hypothesis::new(&name, HypStatus::CheckedTrue).with_detail("hypersurface"));
    }
    Ok(Hypothesis::new(&name, asserted.status(&base.name, "lci", HypStatus::Indeterminate)))
}

/// Normality: checked through smoothness, asserted otherwise.
pub fn normal_hypothesis(base: &Arc<AffineRing>, asserted: &Assertions, budget: &Budget) -> Result<Hypothesis> {
    let name = format!("{} normal", base.name);
    if is_smooth(base, budget)? {
        return Ok(Hypothesis::new(&name, HypStatus::CheckedTrue).with_detail("smooth"));
    }
    Ok(Hypothesis::new(&name, asserted.status(&base.name, "normal", HypStatus::Indeterminate)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::differentials::relative_kaehler;
    use crate::polyring::{parse_poly, Field, MonomialOrder, PolyRing};
    use crate::resolve::Matrix;

    fn affine(name: &str, vars: &[&str], gens: &[&str]) -> Arc<AffineRing> {
        let r = PolyRing::new(vars.iter().map(|s| s.to_string()).collect(), Field::Rational, MonomialOrder::GrevLex)
            .unwrap();
        let g = gens.iter().map(|s| parse_poly(s, &r).unwrap()).collect();
        AffineRing::new(name, &r, g)
    }

    fn morphism(source: &Arc<AffineRing>, target: &Arc<AffineRing>, images: &[&str]) -> MorphismDecl {
        let im = images.iter().map(|s| parse_poly(s, &target.ring).unwrap()).collect();
        MorphismDecl::new("pi", source, target, im, &Budget::default()).unwrap()
    }

    fn cone() -> Arc<AffineRing> {
        affine("Y", &["a", "b", "c"], &["a*c - b^2"])
    }

    #[test]
    fn dci_of_differentials() {
        let b = Budget::default();
        let a3 = affine("A", &["x1", "x2", "x3"], &[]);
        assert_eq!(check_dci(&kaehler(&a3, &b).unwrap(), DciMode::Global, &b).unwrap().answer, Tri::Yes);
        let om = kaehler(&cone(), &b).unwrap();
        assert_eq!(check_dci(&om, DciMode::Global, &b).unwrap().answer, Tri::Yes);
        let local = check_dci(&om, DciMode::AtOrigin, &b).unwrap();
        assert_eq!((local.answer, local.betti.clone()), (Tri::Yes, Some(vec![3, 1])));
        let w = morphism(&cone(), &affine("X", &["s", "t"], &[]), &["s^2", "s*t", "t^2"]);
        let oxy = relative_kaehler(&w, &b).unwrap();
        let local = check_dci(&oxy, DciMode::AtOrigin, &b).unwrap();
        assert_eq!((local.answer, local.betti), (Tri::No, Some(vec![2, 3, 1])));
        assert_eq!(check_dci(&oxy, DciMode::Global, &b).unwrap().answer, Tri::No);
    }

    #[test]
    fn s2_test() {
        let b = Budget::default();
        let r = affine("R", &["x", "y"], &[]);
        assert_eq!(serre_s2_sufficient(&PresentedModule::free(&r, 2), &b).unwrap(), Tri::Yes);
        let rows = vec![vec![parse_poly("x", &r.ring).unwrap(), parse_poly("y", &r.ring).unwrap()]];
        let k = PresentedModule::new(&r, Matrix::from_rows(&r.ring, rows), &b).unwrap();
        assert_eq!(serre_s2_sufficient(&k, &b).unwrap(), Tri::Indeterminate);
    }

    #[test]
    fn defect_numbers() {
        let b = Budget::default();
        // derivations of k[s^2, st, t^2] come from gl_2: four generators at the vertex
        assert_eq!(defects(&cone(), &b).unwrap(), DefectData { ed: 3, d: 2, delta: 1, eta: 2 });
        let q = affine("Q", &["x1", "x2", "x3", "x4"], &["x1*x2 - x3*x4"]);
        assert_eq!(defects(&q, &b).unwrap().delta, 1);
        let a2 = affine("A", &["s", "t"], &[]);
        assert_eq!(defects(&a2, &b).unwrap(), DefectData { ed: 2, d: 2, delta: 0, eta: 0 });
    }

    #[test]
    fn hypothesis_helpers() {
        let b = Budget::default();
        let none = Assertions::default();
        assert_eq!(domain_hypothesis(&cone(), &none, &b).unwrap().status, HypStatus::CheckedTrue);
        let two = affine("Z", &["x", "y"], &["x*y"]);
        assert_eq!(domain_hypothesis(&two, &none, &b).unwrap().status, HypStatus::CheckedFalse);
        assert_eq!(lci_hypothesis(&cone(), &none, &b).unwrap().status, HypStatus::CheckedTrue);
        assert!(!is_smooth(&cone(), &b).unwrap());
        assert_eq!(normal_hypothesis(&cone(), &none, &b).unwrap().status, HypStatus::Indeterminate);
        let w = morphism(&cone(), &affine("X", &["s", "t"], &[]), &["s^2", "s*t", "t^2"]);
        assert!(is_generically_smooth(&w, &b).unwrap());
    }
}
