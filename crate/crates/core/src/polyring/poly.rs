use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use super::field::{Coeff, Field};
use super::monomial::{Mono, MonomialOrder};
use crate::error::{Error, Result};

/// Variables, coefficient field and term order of a polynomial ring.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PolyRing {
    pub vars: Vec<String>,
    pub field: Field,
    pub order: MonomialOrder,
}

impl PolyRing {
    pub fn new(vars: Vec<String>, field: Field, order: MonomialOrder) -> Result<Arc<Self>> {
        for (i, v) in vars.iter().enumerate() {
            if vars[..i].contains(v) {
                return Err(Error::DuplicateVariable(v.clone()));
            }
        }
        Ok(Arc::new(PolyRing { vars, field, order }))
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn with_order(&self, order: MonomialOrder) -> Arc<Self> {
        Arc::new(PolyRing { vars: self.vars.clone(), field: self.field, order })
    }
}

/// Sparse polynomial; terms are kept sorted by decreasing monomial and never store zero.
#[derive(Clone)]
pub struct Poly {
    ring: Arc<PolyRing>,
    terms: Vec<(Mono, Coeff)>,
}

impl PartialEq for Poly {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms && same_ring(&self.ring, &other.ring)
    }
}

impl Eq for Poly {}

impl std::hash::Hash for Poly {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.terms.hash(state);
    }
}

pub(crate) fn same_ring(a: &Arc<PolyRing>, b: &Arc<PolyRing>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

impl Poly {
    pub fn zero(ring: &Arc<PolyRing>) -> Self {
        Poly { ring: ring.clone(), terms: Vec::new() }
    }

    pub fn constant(ring: &Arc<PolyRing>, c: Coeff) -> Self {
        Self::from_terms(ring, vec![(Mono::one(ring.nvars()), c)])
    }

    pub fn from_i64(ring: &Arc<PolyRing>, v: i64) -> Self {
        Self::constant(ring, ring.field.from_i64(v))
    }

    pub fn one(ring: &Arc<PolyRing>) -> Self {
        Self::from_i64(ring, 1)
    }

    pub fn var(ring: &Arc<PolyRing>, i: usize) -> Self {
        Poly { ring: ring.clone(), terms: vec![(Mono::var(ring.nvars(), i), ring.field.one())] }
    }

    pub fn monomial(ring: &Arc<PolyRing>, m: Mono, c: Coeff) -> Self {
        Self::from_terms(ring, vec![(m, c)])
    }

    /// Builds a canonical polynomial from arbitrary (possibly repeated, zero) terms.
    pub fn from_terms(ring: &Arc<PolyRing>, terms: Vec<(Mono, Coeff)>) -> Self {
        let f = ring.field;
        let mut acc: HashMap<Mono, Coeff> = HashMap::with_capacity(terms.len());
        for (m, c) in terms {
            debug_assert_eq!(m.nvars(), ring.nvars());
            match acc.get_mut(&m) {
                Some(e) => *e = f.add(e, &c),
                None => {
                    acc.insert(m, c);
                }
            }
        }
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !f.is_zero(c)).collect();
        let order = ring.order;
        terms.sort_by(|a, b| order.compare(&b.0, &a.0));
        Poly { ring: ring.clone(), terms }
    }

    /// Trusts the caller that `terms` is already canonical for `ring`.
    pub(crate) fn from_sorted(ring: &Arc<PolyRing>, terms: Vec<(Mono, Coeff)>) -> Self {
        Poly { ring: ring.clone(), terms }
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn field(&self) -> Field {
        self.ring.field
    }

    pub fn terms(&self) -> &[(Mono, Coeff)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Mono, Coeff)> {
        self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    pub fn is_unit(&self) -> bool {
        !self.is_zero() && self.is_constant()
    }

    pub fn leading_term(&self) -> Option<&(Mono, Coeff)> {
        self.terms.first()
    }

    pub fn lm(&self) -> Option<&Mono> {
        self.terms.first().map(|t| &t.0)
    }

    pub fn lc(&self) -> Option<&Coeff> {
        self.terms.first().map(|t| &t.1)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.iter().map(|(m, _)| m.0[var] as u32).max().unwrap_or(0)
    }

    /// Term with monomial 1, i.e. the value at the origin.
    pub fn constant_term(&self) -> Coeff {
        self.terms.last().filter(|(m, _)| m.is_one()).map(|(_, c)| c.clone()).unwrap_or_else(|| self.ring.field.zero())
    }

    pub fn vanishes_at_origin(&self) -> bool {
        self.ring.field.is_zero(&self.constant_term())
    }

    pub fn variables(&self) -> Vec<usize> {
        let mut used = vec![false; self.ring.nvars()];
        for (m, _) in &self.terms {
            for i in m.support() {
                used[i] = true;
            }
        }
        used.iter().enumerate().filter(|(_, u)| **u).map(|(i, _)| i).collect()
    }

    fn check_ring(&self, other: &Poly) -> Result<()> {
        if same_ring(&self.ring, &other.ring) {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    pub fn try_add(&self, other: &Poly) -> Result<Poly> {
        self.check_ring(other)?;
        Ok(self.add(other))
    }

    pub fn try_sub(&self, other: &Poly) -> Result<Poly> {
        self.check_ring(other)?;
        Ok(self.sub(other))
    }

    pub fn try_mul(&self, other: &Poly) -> Result<Poly> {
        self.check_ring(other)?;
        self.checked_mul(other)
    }

    pub fn add(&self, other: &Poly) -> Poly {
        self.merge(other, None)
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let minus = self.ring.field.from_i64(-1);
        self.merge(other, Some((&minus, None)))
    }

    /// `self - c * m * other`, the reduction step.
    pub fn sub_scaled(&self, c: &Coeff, m: &Mono, other: &Poly) -> Poly {
        let neg = self.ring.field.neg(c);
        self.merge(other, Some((&neg, Some(m))))
    }

    fn merge(&self, other: &Poly, scale: Option<(&Coeff, Option<&Mono>)>) -> Poly {
        let f = self.ring.field;
        let order = self.ring.order;
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let mut i = 0;
        let mut j = 0;
        let map_other = |(m, c): &(Mono, Coeff)| -> (Mono, Coeff) {
            match scale {
                None => (m.clone(), c.clone()),
                Some((s, None)) => (m.clone(), f.mul(s, c)),
                Some((s, Some(sm))) => (m.mul(sm), f.mul(s, c)),
            }
        };
        let mut pending: Option<(Mono, Coeff)> = other.terms.first().map(map_other);
        while i < self.terms.len() || pending.is_some() {
            let take_self = match (&self.terms.get(i), &pending) {
                (Some(a), Some(b)) => order.compare(&a.0, &b.0),
                (Some(_), None) => Ordering::Greater,
                (None, Some(_)) => Ordering::Less,
                (None, None) => unreachable!(),
            };
            match take_self {
                Ordering::Greater => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push(pending.take().unwrap());
                    j += 1;
                    pending = other.terms.get(j).map(map_other);
                }
                Ordering::Equal => {
                    let (m, c) = pending.take().unwrap();
                    let s = f.add(&self.terms[i].1, &c);
                    if !f.is_zero(&s) {
                        out.push((m, s));
                    }
                    i += 1;
                    j += 1;
                    pending = other.terms.get(j).map(map_other);
                }
            }
        }
        Poly { ring: self.ring.clone(), terms: out }
    }

    pub fn neg(&self) -> Poly {
        let f = self.ring.field;
        Poly { ring: self.ring.clone(), terms: self.terms.iter().map(|(m, c)| (m.clone(), f.neg(c))).collect() }
    }

    pub fn scale(&self, c: &Coeff) -> Poly {
        let f = self.ring.field;
        if f.is_zero(c) {
            return Poly::zero(&self.ring);
        }
        Poly { ring: self.ring.clone(), terms: self.terms.iter().map(|(m, d)| (m.clone(), f.mul(c, d))).collect() }
    }

    pub fn mul_term(&self, m: &Mono, c: &Coeff) -> Poly {
        let f = self.ring.field;
        if f.is_zero(c) {
            return Poly::zero(&self.ring);
        }
        Poly { ring: self.ring.clone(), terms: self.terms.iter().map(|(n, d)| (n.mul(m), f.mul(c, d))).collect() }
    }

    pub fn checked_mul(&self, other: &Poly) -> Result<Poly> {
        let f = self.ring.field;
        if self.is_zero() || other.is_zero() {
            return Ok(Poly::zero(&self.ring));
        }
        let mut acc: HashMap<Mono, Coeff> = HashMap::new();
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                let m = a.checked_mul(b)?;
                let c = f.mul(ca, cb);
                match acc.get_mut(&m) {
                    Some(e) => *e = f.add(e, &c),
                    None => {
                        acc.insert(m, c);
                    }
                }
            }
        }
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !f.is_zero(c)).collect();
        let order = self.ring.order;
        terms.sort_by(|a, b| order.compare(&b.0, &a.0));
        Ok(Poly { ring: self.ring.clone(), terms })
    }

    /// Product; panics on exponent overflow.
    pub fn mul(&self, other: &Poly) -> Poly {
        self.checked_mul(other).expect("exponent overflow")
    }

    pub fn pow(&self, e: u32) -> Result<Poly> {
        let mut result = Poly::one(&self.ring);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = result.checked_mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.checked_mul(&base)?;
            }
        }
        Ok(result)
    }

    /// Divides by the leading coefficient.
    pub fn monic(&self) -> Poly {
        match self.lc() {
            None => self.clone(),
            Some(c) if self.ring.field.is_one(c) => self.clone(),
            Some(c) => self.scale(&self.ring.field.inv(c)),
        }
    }

    pub fn derivative(&self, var: usize) -> Poly {
        let f = self.ring.field;
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.0[var] > 0)
            .map(|(m, c)| {
                let mut e = m.clone();
                let k = e.0[var];
                e.0[var] -= 1;
                (e, f.mul(c, &f.from_i64(k as i64)))
            })
            .collect();
        // derivative of a sorted list stays sorted up to collisions and zeros
        Poly::from_terms(&self.ring, terms)
    }

    /// Gradient as a column: `(d self / d x_i)_i`.
    pub fn gradient(&self) -> Vec<Poly> {
        (0..self.ring.nvars()).map(|i| self.derivative(i)).collect()
    }

    /// Replaces variable `i` by `images[i]`, landing in the ring of the images.
    pub fn substitute(&self, images: &[Poly], target: &Arc<PolyRing>) -> Result<Poly> {
        if images.len() != self.ring.nvars() {
            return Err(Error::LengthMismatch(images.len(), self.ring.nvars()));
        }
        let f = target.field;
        let mut power_cache: HashMap<(usize, u16), Poly> = HashMap::new();
        let mut out = Poly::zero(target);
        for (m, c) in &self.terms {
            let c = match (c, f) {
                (Coeff::Q(q), _) => f.from_rational(q).ok_or(Error::RingMismatch)?,
                (Coeff::P(v), Field::Prime(_)) => f.from_i64(*v as i64),
                _ => return Err(Error::RingMismatch),
            };
            let mut t = Poly::constant(target, c);
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let p = match power_cache.get(&(i, e)) {
                    Some(p) => p.clone(),
                    None => {
                        let p = images[i].pow(e as u32)?;
                        power_cache.insert((i, e), p.clone());
                        p
                    }
                };
                t = t.checked_mul(&p)?;
            }
            out = out.add(&t);
        }
        Ok(out)
    }

    /// Moves the polynomial into `ring`, sending variable `i` to `mapping[i]`.
    pub fn map_vars(&self, ring: &Arc<PolyRing>, mapping: &[usize]) -> Poly {
        let n = ring.nvars();
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut e = vec![0u16; n];
                for (i, &k) in m.0.iter().enumerate() {
                    if k > 0 {
                        e[mapping[i]] = k;
                    }
                }
                (Mono(e), c.clone())
            })
            .collect();
        Poly::from_terms(ring, terms)
    }

    /// Same variables, different term order.
    pub fn reorder(&self, ring: &Arc<PolyRing>) -> Poly {
        debug_assert_eq!(ring.vars, self.ring.vars);
        let mut terms = self.terms.clone();
        let order = ring.order;
        terms.sort_by(|a, b| order.compare(&b.0, &a.0));
        Poly { ring: ring.clone(), terms }
    }

    /// Exact division by a single polynomial, `None` when it does not divide.
    pub fn div_exact(&self, d: &Poly) -> Option<Poly> {
        let f = self.ring.field;
        let (dm, dc) = d.leading_term()?;
        let dinv = f.inv(dc);
        let mut rem = self.clone();
        let mut quot = Vec::new();
        while let Some((m, c)) = rem.leading_term().cloned() {
            if !dm.divides(&m) {
                return None;
            }
            let qm = dm.quotient_of(&m);
            let qc = f.mul(&c, &dinv);
            rem = rem.sub_scaled(&qc, &qm, d);
            quot.push((qm, qc));
        }
        Some(Poly::from_terms(&self.ring, quot))
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mono = format_mono(&self.ring.vars, m);
            if mono.is_empty() {
                write!(f, "{}", c.abs_string())?;
            } else if c.is_abs_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{}*{mono}", c.abs_string())?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

pub(crate) fn format_mono(vars: &[String], m: &Mono) -> String {
    let mut parts = Vec::new();
    for (i, &e) in m.0.iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(vars[i].clone()),
            _ => parts.push(format!("{}^{e}", vars[i])),
        }
    }
    parts.join("*")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(vars: &[&str], field: Field) -> Arc<PolyRing> {
        PolyRing::new(vars.iter().map(|s| s.to_string()).collect(), field, MonomialOrder::GrevLex).unwrap()
    }

    #[test]
    fn difference_of_squares() {
        let r = ring(&["x", "y"], Field::Rational);
        let x = Poly::var(&r, 0);
        let y = Poly::var(&r, 1);
        let p = x.add(&y).mul(&x.sub(&y));
        assert_eq!(p.to_string(), "x^2 - y^2");
    }

    #[test]
    fn adding_zero_is_identity() {
        let r = ring(&["x", "y"], Field::Rational);
        let p = Poly::var(&r, 0).add(&Poly::from_i64(&r, 3));
        assert_eq!(p.add(&Poly::zero(&r)), p);
    }

    #[test]
    fn frobenius_in_characteristic_two() {
        let r = ring(&["x", "y"], Field::Prime(2));
        let s = Poly::var(&r, 0).add(&Poly::var(&r, 1));
        assert_eq!(s.mul(&s).to_string(), "x^2 + y^2");
    }

    #[test]
    fn ring_mismatch_detected() {
        let r1 = ring(&["x"], Field::Rational);
        let r2 = ring(&["y"], Field::Rational);
        assert!(matches!(Poly::var(&r1, 0).try_add(&Poly::var(&r2, 0)), Err(Error::RingMismatch)));
    }

    #[test]
    fn substitution_into_chart() {
        // x^2 + y^3 under x = x'y', y = y'
        let a = ring(&["x", "y"], Field::Rational);
        let b = ring(&["xp", "yp"], Field::Rational);
        let cusp = Poly::var(&a, 0).pow(2).unwrap().add(&Poly::var(&a, 1).pow(3).unwrap());
        let images = [Poly::var(&b, 0).mul(&Poly::var(&b, 1)), Poly::var(&b, 1)];
        let img = cusp.substitute(&images, &b).unwrap();
        assert_eq!(img.to_string(), "xp^2*yp^2 + yp^3");
    }

    #[test]
    fn exact_division() {
        let r = ring(&["x", "y"], Field::Rational);
        let x = Poly::var(&r, 0);
        let y = Poly::var(&r, 1);
        let p = x.mul(&x).sub(&y.mul(&y));
        assert_eq!(p.div_exact(&x.add(&y)).unwrap(), x.sub(&y));
        assert!(p.div_exact(&x).is_none());
    }

    #[test]
    fn derivative_and_gradient() {
        let r = ring(&["a", "b", "c"], Field::Rational);
        let g = Poly::var(&r, 0).mul(&Poly::var(&r, 2)).sub(&Poly::var(&r, 1).pow(2).unwrap());
        let grad: Vec<String> = g.gradient().iter().map(|p| p.to_string()).collect();
        assert_eq!(grad, ["c", "-2*b", "a"]);
    }
}
