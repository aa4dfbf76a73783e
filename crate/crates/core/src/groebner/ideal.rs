use std::fmt;
use std::sync::{Arc, OnceLock};

use super::engine::{self, Budget};
use super::vector::ModVec;
use crate::error::Result;
use crate::polyring::{Mono, MonomialOrder, Poly, PolyRing};

/// Reduced Gröbner basis: monic, inter-reduced, sorted by increasing leading monomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroebnerBasis {
    ring: Arc<PolyRing>,
    elements: Vec<Poly>,
    raw: Vec<ModVec>,
}

impl GroebnerBasis {
    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn elements(&self) -> &[Poly] {
        &self.elements
    }

    pub fn is_unit(&self) -> bool {
        self.elements.len() == 1 && self.elements[0].is_unit()
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn leading_monomials(&self) -> Vec<&Mono> {
        self.elements.iter().map(|p| p.lm().unwrap()).collect()
    }

    pub fn normal_form(&self, p: &Poly) -> Poly {
        if self.elements.is_empty() {
            return p.clone();
        }
        let p = if Arc::ptr_eq(p.ring(), &self.ring) { p.clone() } else { p.reorder(&self.ring) };
        engine::normal_form(&self.ring, &ModVec::from_poly(&p), &self.raw).to_poly(&self.ring)
    }

    pub fn contains(&self, p: &Poly) -> bool {
        self.normal_form(p).is_zero()
    }

    /// Sorted canonical generator strings, for reports and diffing.
    pub fn canonical_strings(&self) -> Vec<String> {
        let mut v: Vec<String> = self.elements.iter().map(|p| p.to_string()).collect();
        v.sort();
        v
    }
}

pub fn buchberger(gens: &[Poly], ring: &Arc<PolyRing>, budget: &Budget) -> Result<GroebnerBasis> {
    let vecs: Vec<ModVec> = gens.iter().map(|g| ModVec::from_poly(&g.reorder(ring))).collect();
    let raw = engine::groebner(ring, &vecs, budget, true)?;
    let elements = raw.iter().map(|v| v.to_poly(ring)).collect();
    Ok(GroebnerBasis { ring: ring.clone(), elements, raw })
}

pub fn normal_form(p: &Poly, gb: &GroebnerBasis) -> Poly {
    gb.normal_form(p)
}

/// Finitely generated ideal with a compute-once Gröbner basis cache.
pub struct Ideal {
    ring: Arc<PolyRing>,
    gens: Vec<Poly>,
    gb: OnceLock<GroebnerBasis>,
}

impl Clone for Ideal {
    fn clone(&self) -> Self {
        let gb = OnceLock::new();
        if let Some(g) = self.gb.get() {
            let _ = gb.set(g.clone());
        }
        Ideal { ring: self.ring.clone(), gens: self.gens.clone(), gb }
    }
}

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ideal{self}")
    }
}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self.gens.iter().map(|g| g.to_string()).collect();
        write!(f, "({})", gens.join(", "))
    }
}

impl Ideal {
    pub fn new(ring: &Arc<PolyRing>, gens: Vec<Poly>) -> Self {
        let gens = gens.into_iter().filter(|g| !g.is_zero()).collect();
        Ideal { ring: ring.clone(), gens, gb: OnceLock::new() }
    }

    pub fn zero(ring: &Arc<PolyRing>) -> Self {
        Self::new(ring, Vec::new())
    }

    pub fn unit(ring: &Arc<PolyRing>) -> Self {
        Self::new(ring, vec![Poly::one(ring)])
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn gens(&self) -> &[Poly] {
        &self.gens
    }

    pub fn gb(&self, budget: &Budget) -> Result<&GroebnerBasis> {
        if let Some(g) = self.gb.get() {
            return Ok(g);
        }
        let g = buchberger(&self.gens, &self.ring, budget)?;
        Ok(self.gb.get_or_init(|| g))
    }

    pub fn cached_gb(&self) -> Option<&GroebnerBasis> {
        self.gb.get()
    }

    pub fn contains(&self, p: &Poly, budget: &Budget) -> Result<bool> {
        Ok(self.gb(budget)?.contains(p))
    }

    pub fn is_unit(&self, budget: &Budget) -> Result<bool> {
        Ok(self.gb(budget)?.is_unit())
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn contains_ideal(&self, other: &Ideal, budget: &Budget) -> Result<bool> {
        let gb = self.gb(budget)?;
        Ok(other.gens.iter().all(|g| gb.contains(g)))
    }

    /// Equality of ideals by comparing reduced Gröbner bases.
    pub fn same_as(&self, other: &Ideal, budget: &Budget) -> Result<bool> {
        Ok(self.gb(budget)?.elements() == other.gb(budget)?.elements())
    }

    pub fn sum(&self, other: &Ideal) -> Ideal {
        let mut gens = self.gens.clone();
        gens.extend(other.gens.iter().cloned());
        Ideal::new(&self.ring, gens)
    }

    pub fn with_gens(&self, extra: &[Poly]) -> Ideal {
        let mut gens = self.gens.clone();
        gens.extend(extra.iter().cloned());
        Ideal::new(&self.ring, gens)
    }

    /// Generators of the reduced Gröbner basis as a fresh ideal.
    pub fn reduced(&self, budget: &Budget) -> Result<Ideal> {
        let gb = self.gb(budget)?.clone();
        let out = Ideal::new(&self.ring, gb.elements().to_vec());
        let _ = out.gb.set(gb);
        Ok(out)
    }

    /// `I ∩ k[remaining vars]`, computed with a block order placing `drop` first.
    pub fn eliminate(&self, drop: &[usize], budget: &Budget) -> Result<Ideal> {
        if drop.is_empty() {
            return Ok(self.clone());
        }
        let n = self.ring.nvars();
        let keep: Vec<usize> = (0..n).filter(|i| !drop.contains(i)).collect();
        let mut perm = vec![0; n];
        let mut vars = Vec::with_capacity(n);
        for (new, &old) in drop.iter().chain(keep.iter()).enumerate() {
            perm[old] = new;
            vars.push(self.ring.vars[old].clone());
        }
        let elim = Arc::new(PolyRing { vars, field: self.ring.field, order: MonomialOrder::Block(drop.len()) });
        let gens: Vec<Poly> = self.gens.iter().map(|g| g.map_vars(&elim, &perm)).collect();
        let gb = buchberger(&gens, &elim, budget)?;
        let mut inverse = vec![0; n];
        for (old, &new) in perm.iter().enumerate() {
            inverse[new] = old;
        }
        let kept: Vec<Poly> = gb
            .elements()
            .iter()
            .filter(|p| p.variables().iter().all(|&v| v >= drop.len()))
            .map(|p| p.map_vars(&self.ring, &inverse))
            .collect();
        Ok(Ideal::new(&self.ring, kept))
    }

    /// `(I : f^∞)` via an auxiliary variable `z` and the relation `z f - 1`.
    pub fn saturate(&self, f: &Poly, budget: &Budget) -> Result<Ideal> {
        assert!(!f.is_zero(), "saturation by zero");
        if f.is_unit() {
            self.gb(budget)?;
            return Ok(self.clone());
        }
        let (ext, embed) = self.extended_ring();
        let z = Poly::var(&ext, 0);
        let mut gens: Vec<Poly> = self.gens.iter().map(|g| g.map_vars(&ext, &embed)).collect();
        gens.push(z.mul(&f.map_vars(&ext, &embed)).sub(&Poly::one(&ext)));
        let big = Ideal::new(&ext, gens).eliminate(&[0], budget)?;
        let mut back = vec![0; ext.nvars()];
        for (old, &new) in embed.iter().enumerate() {
            back[new] = old;
        }
        let out: Vec<Poly> = big.gens.iter().map(|p| p.map_vars(&self.ring, &back)).collect();
        let out = Ideal::new(&self.ring, out);
        out.gb(budget)?;
        Ok(out)
    }

    /// Rabinowitsch test `1 ∈ I + (z p - 1)`.
    pub fn radical_contains(&self, p: &Poly, budget: &Budget) -> Result<bool> {
        if p.is_zero() {
            return Ok(true);
        }
        let (ext, embed) = self.extended_ring();
        let z = Poly::var(&ext, 0);
        let mut gens: Vec<Poly> = self.gens.iter().map(|g| g.map_vars(&ext, &embed)).collect();
        gens.push(z.mul(&p.map_vars(&ext, &embed)).sub(&Poly::one(&ext)));
        Ideal::new(&ext, gens).is_unit(budget)
    }

    /// `I ∩ J` as `(t I + (1 - t) J) ∩ R`.
    pub fn intersect(&self, other: &Ideal, budget: &Budget) -> Result<Ideal> {
        let (ext, embed) = self.extended_ring();
        let t = Poly::var(&ext, 0);
        let u = Poly::one(&ext).sub(&t);
        let mut gens: Vec<Poly> = self.gens.iter().map(|g| t.mul(&g.map_vars(&ext, &embed))).collect();
        gens.extend(other.gens.iter().map(|g| u.mul(&g.map_vars(&ext, &embed))));
        let big = Ideal::new(&ext, gens).eliminate(&[0], budget)?;
        let mut back = vec![0; ext.nvars()];
        for (old, &new) in embed.iter().enumerate() {
            back[new] = old;
        }
        let out = Ideal::new(&self.ring, big.gens.iter().map(|p| p.map_vars(&self.ring, &back)).collect());
        out.gb(budget)?;
        Ok(out)
    }

    pub fn radical_contains_ideal(&self, other: &Ideal, budget: &Budget) -> Result<bool> {
        for g in &other.gens {
            if !self.radical_contains(g, budget)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub(crate) fn extended_ring(&self) -> (Arc<PolyRing>, Vec<usize>) {
        let mut name = String::from("_z");
        while self.ring.vars.contains(&name) {
            name.push('_');
        }
        let mut vars = vec![name];
        vars.extend(self.ring.vars.iter().cloned());
        let ext = Arc::new(PolyRing { vars, field: self.ring.field, order: MonomialOrder::GrevLex });
        let embed: Vec<usize> = (1..=self.ring.nvars()).collect();
        (ext, embed)
    }

    /// Dimension of `R/I` as the largest set of variables independent modulo the initial ideal;
    /// `-1` for the unit ideal.
    pub fn krull_dim(&self, budget: &Budget) -> Result<i64> {
        let gb = self.gb(budget)?;
        if gb.is_unit() {
            return Ok(-1);
        }
        let n = self.ring.nvars();
        let supports: Vec<u64> =
            gb.leading_monomials().iter().map(|m| m.support().fold(0u64, |acc, i| acc | (1 << i))).collect();
        assert!(n < 64, "too many variables for dimension search");
        let mut best = 0i64;
        for mask in 0u64..(1u64 << n) {
            let size = mask.count_ones() as i64;
            if size <= best {
                continue;
            }
            if supports.iter().all(|s| s & !mask != 0) {
                best = size;
            }
        }
        Ok(best)
    }

    /// `dim R/ambient - dim R/(ambient + locus)`, `None` when the locus is empty.
    pub fn codim_in(&self, locus: &Ideal, budget: &Budget) -> Result<Option<i64>> {
        let total = self.sum(locus);
        let d = total.krull_dim(budget)?;
        if d < 0 {
            return Ok(None);
        }
        Ok(Some(self.krull_dim(budget)? - d))
    }
}

pub fn ideal_membership(p: &Poly, ideal: &Ideal, budget: &Budget) -> Result<bool> {
    ideal.contains(p, budget)
}
