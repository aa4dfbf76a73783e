//! Naive splitting of a locus into components by factoring Gröbner basis elements.

use super::factor::factor;
use crate::error::Result;
use crate::groebner::{Budget, GroebnerBasis, Ideal};

const MAX_SPLITS: usize = 64;

#[derive(Clone, Debug)]
pub struct Component {
    pub ideal: Ideal,
    /// Codimension in the ambient scheme.
    pub codim: i64,
    /// Whether the component ideal is certified prime.
    pub prime: bool,
}

#[derive(Clone, Debug)]
pub struct Decomposition {
    /// Components with no other component contained in them, by increasing codimension.
    pub components: Vec<Component>,
    /// Every component is certified prime.
    pub certified: bool,
}

impl Decomposition {
    /// `√(ambient + locus)` as the intersection of the components, when certified.
    pub fn radical(&self, budget: &Budget) -> Result<Option<Ideal>> {
        if !self.certified || self.components.is_empty() {
            return Ok(None);
        }
        let mut acc = self.components[0].ideal.clone();
        for c in &self.components[1..] {
            acc = acc.intersect(&c.ideal, budget)?;
        }
        Ok(Some(acc.reduced(budget)?))
    }
}

/// A reduced basis of linear forms plus at most one certified irreducible polynomial
/// in the remaining variables generates a prime ideal.
fn certified_prime(gb: &GroebnerBasis, budget: &Budget) -> Result<bool> {
    let nonlinear: Vec<_> = gb.elements().iter().filter(|g| g.total_degree() != Some(1)).collect();
    match nonlinear.as_slice() {
        [] => Ok(true),
        [f] => {
            let fac = factor(f, budget)?;
            Ok(fac.certified && fac.factors.len() == 1 && fac.factors[0].1 == 1)
        }
        _ => Ok(false),
    }
}

/// Splits `V(ambient + locus)` into components.
pub fn decompose(ambient: &Ideal, locus: &Ideal, budget: &Budget) -> Result<Decomposition> {
    let mut work = vec![ambient.sum(locus)];
    let mut found: Vec<(Ideal, bool)> = Vec::new();
    let mut certified = true;
    let mut splits = 0;
    while let Some(j) = work.pop() {
        let gb = j.gb(budget)?;
        if gb.is_unit() {
            continue;
        }
        if certified_prime(gb, budget)? {
            found.push((j.reduced(budget)?, true));
            continue;
        }
        let mut split = None;
        for g in gb.elements() {
            let fac = factor(g, budget)?;
            if fac.factors.len() > 1 || fac.factors.iter().any(|(_, e)| *e > 1) {
                split = Some(fac);
                break;
            }
        }
        match split {
            Some(fac) if splits < MAX_SPLITS => {
                splits += 1;
                for (p, _) in fac.factors {
                    work.push(j.with_gens(&[p]));
                }
            }
            _ => {
                certified = false;
                found.push((j.reduced(budget)?, false));
            }
        }
    }
    let mut comps = Vec::new();
    for (ideal, prime) in found {
        let codim = ambient.codim_in(&ideal, budget)?.expect("component is nonempty");
        comps.push(Component { ideal, codim, prime });
    }
    comps.sort_by(|a, b| a.codim.cmp(&b.codim).then_with(|| a.ideal.to_string().cmp(&b.ideal.to_string())));
    let mut minimal: Vec<Component> = Vec::new();
    for c in comps {
        let mut redundant = false;
        for m in &minimal {
            if c.ideal.contains_ideal(&m.ideal, budget)? {
                redundant = true;
                break;
            }
        }
        if !redundant {
            minimal.push(c);
        }
    }
    Ok(Decomposition { components: minimal, certified })
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::polyring::{parse_poly, Field, MonomialOrder, PolyRing};

    fn ring(vars: &[&str]) -> Arc<PolyRing> {
        PolyRing::new(vars.iter().map(|s| s.to_string()).collect(), Field::Rational, MonomialOrder::GrevLex).unwrap()
    }

    fn ideal(r: &Arc<PolyRing>, gens: &[&str]) -> Ideal {
        Ideal::new(r, gens.iter().map(|s| parse_poly(s, r).unwrap()).collect())
    }

    fn summary(d: &Decomposition) -> Vec<(Vec<String>, i64, bool)> {
        let b = Budget::default();
        d.components.iter().map(|c| (c.ideal.gb(&b).unwrap().canonical_strings(), c.codim, c.prime)).collect()
    }

    #[test]
    fn fat_point_is_the_origin() {
        let r = ring(&["s", "t"]);
        let b = Budget::default();
        let d = decompose(&Ideal::zero(&r), &ideal(&r, &["s^2", "s*t", "t^2"]), &b).unwrap();
        assert!(d.certified);
        assert_eq!(summary(&d), [(vec!["s".to_string(), "t".to_string()], 2, true)]);
        assert_eq!(d.radical(&b).unwrap().unwrap().gb(&b).unwrap().canonical_strings(), ["s", "t"]);
    }

    #[test]
    fn union_of_plane_and_line() {
        let r = ring(&["x", "y", "z"]);
        let b = Budget::default();
        let d = decompose(&Ideal::zero(&r), &ideal(&r, &["x*z", "y*z"]), &b).unwrap();
        assert!(d.certified);
        assert_eq!(summary(&d), [(vec!["z".to_string()], 1, true), (vec!["x".to_string(), "y".to_string()], 2, true)]);
        let rad = d.radical(&b).unwrap().unwrap();
        assert_eq!(rad.gb(&b).unwrap().canonical_strings(), ["x*z", "y*z"]);
    }

    #[test]
    fn embedded_points_are_dropped() {
        let r = ring(&["x", "y"]);
        let d = decompose(&Ideal::zero(&r), &ideal(&r, &["x^2", "x*y"]), &Budget::default()).unwrap();
        assert_eq!(summary(&d), [(vec!["x".to_string()], 1, true)]);
    }

    #[test]
    fn codimension_inside_a_hypersurface() {
        let r = ring(&["a", "b", "c"]);
        let cone = ideal(&r, &["a*c - b^2"]);
        let d = decompose(&cone, &ideal(&r, &["a", "b", "c"]), &Budget::default()).unwrap();
        assert_eq!(summary(&d), [(vec!["a".to_string(), "b".to_string(), "c".to_string()], 2, true)]);
        let d = decompose(&cone, &Ideal::zero(&r), &Budget::default()).unwrap();
        assert!(d.certified);
        assert_eq!(d.components[0].codim, 0);
    }

    #[test]
    fn unsplittable_locus_is_uncertified() {
        let r = ring(&["x", "y", "z"]);
        let d =
            decompose(&Ideal::zero(&r), &ideal(&r, &["x^2 + y^2 + z^2 - 1", "x*y - z^3"]), &Budget::default()).unwrap();
        assert!(!d.certified);
    }

    #[test]
    fn empty_locus() {
        let r = ring(&["x"]);
        let d = decompose(&Ideal::zero(&r), &ideal(&r, &["1"]), &Budget::default()).unwrap();
        assert!(d.components.is_empty());
        assert!(d.certified);
    }
}
