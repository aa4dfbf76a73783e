use std::cmp::Ordering;
use std::sync::Arc;

use crate::polyring::{Coeff, Mono, MonomialOrder, Poly, PolyRing};

/// Element of a free module `R^r`, stored as terms `(position, monomial, coeff)`
/// sorted decreasingly in the position-over-term order where position 0 is largest.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ModVec {
    pub(crate) terms: Vec<(usize, Mono, Coeff)>,
}

pub(crate) fn cmp_term(order: MonomialOrder, a: (usize, &Mono), b: (usize, &Mono)) -> Ordering {
    b.0.cmp(&a.0).then_with(|| order.compare(a.1, b.1))
}

impl ModVec {
    pub fn zero() -> Self {
        ModVec { terms: Vec::new() }
    }

    pub fn from_poly(p: &Poly) -> Self {
        Self::from_poly_at(p, 0)
    }

    pub fn from_poly_at(p: &Poly, pos: usize) -> Self {
        ModVec { terms: p.terms().iter().map(|(m, c)| (pos, m.clone(), c.clone())).collect() }
    }

    /// Column `(p_0, ..., p_{k-1})` placed at positions `offset..offset+k`.
    pub fn from_column(col: &[Poly], offset: usize) -> Self {
        let mut terms = Vec::new();
        for (i, p) in col.iter().enumerate() {
            terms.extend(p.terms().iter().map(|(m, c)| (offset + i, m.clone(), c.clone())));
        }
        ModVec { terms }
    }

    pub fn to_column(&self, ring: &Arc<PolyRing>, rank: usize) -> Vec<Poly> {
        let mut buckets: Vec<Vec<(Mono, Coeff)>> = vec![Vec::new(); rank];
        for (pos, m, c) in &self.terms {
            buckets[*pos].push((m.clone(), c.clone()));
        }
        buckets.into_iter().map(|t| Poly::from_sorted(ring, t)).collect()
    }

    pub fn to_poly(&self, ring: &Arc<PolyRing>) -> Poly {
        debug_assert!(self.terms.iter().all(|t| t.0 == 0));
        Poly::from_sorted(ring, self.terms.iter().map(|(_, m, c)| (m.clone(), c.clone())).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading(&self) -> Option<(usize, &Mono, &Coeff)> {
        self.terms.first().map(|(p, m, c)| (*p, m, c))
    }

    pub fn min_position(&self) -> Option<usize> {
        self.terms.first().map(|t| t.0)
    }

    /// Drops every term with position below `from` and shifts the rest down.
    pub fn project_from(&self, from: usize) -> ModVec {
        ModVec {
            terms: self
                .terms
                .iter()
                .filter(|t| t.0 >= from)
                .map(|(p, m, c)| (p - from, m.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn max_degree(&self) -> u32 {
        self.terms.iter().map(|t| t.1.degree()).max().unwrap_or(0)
    }

    pub fn scale(&self, ring: &PolyRing, c: &Coeff) -> ModVec {
        let f = ring.field;
        ModVec { terms: self.terms.iter().map(|(p, m, d)| (*p, m.clone(), f.mul(c, d))).collect() }
    }

    pub fn monic(&self, ring: &PolyRing) -> ModVec {
        match self.leading() {
            Some((_, _, c)) if !ring.field.is_one(c) => self.scale(ring, &ring.field.inv(c)),
            _ => self.clone(),
        }
    }

    pub fn add(&self, ring: &PolyRing, other: &ModVec) -> ModVec {
        self.merge(ring, other, None, None)
    }

    /// `self - c * m * other`.
    pub fn sub_scaled(&self, ring: &PolyRing, c: &Coeff, m: &Mono, other: &ModVec) -> ModVec {
        let neg = ring.field.neg(c);
        self.merge(ring, other, Some(&neg), Some(m))
    }

    /// `self + p * other` for a polynomial multiplier.
    pub fn add_mul_poly(&self, ring: &PolyRing, p: &Poly, other: &ModVec) -> ModVec {
        let mut acc = self.clone();
        for (m, c) in p.terms() {
            acc = acc.merge(ring, other, Some(c), Some(m));
        }
        acc
    }

    pub fn mul_poly(&self, ring: &PolyRing, p: &Poly) -> ModVec {
        ModVec::zero().add_mul_poly(ring, p, self)
    }

    fn merge(&self, ring: &PolyRing, other: &ModVec, c: Option<&Coeff>, m: Option<&Mono>) -> ModVec {
        let f = ring.field;
        let order = ring.order;
        let map = |(p, n, d): &(usize, Mono, Coeff)| -> (usize, Mono, Coeff) {
            let n = match m {
                Some(m) => n.mul(m),
                None => n.clone(),
            };
            let d = match c {
                Some(c) => f.mul(c, d),
                None => d.clone(),
            };
            (*p, n, d)
        };
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let mut i = 0;
        let mut j = 0;
        let mut pending = other.terms.first().map(map);
        loop {
            let ord = match (self.terms.get(i), &pending) {
                (Some(a), Some(b)) => cmp_term(order, (a.0, &a.1), (b.0, &b.1)),
                (Some(_), None) => Ordering::Greater,
                (None, Some(_)) => Ordering::Less,
                (None, None) => break,
            };
            match ord {
                Ordering::Greater => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push(pending.take().unwrap());
                    j += 1;
                    pending = other.terms.get(j).map(map);
                }
                Ordering::Equal => {
                    let (p, n, d) = pending.take().unwrap();
                    let s = f.add(&self.terms[i].2, &d);
                    if !f.is_zero(&s) {
                        out.push((p, n, s));
                    }
                    i += 1;
                    j += 1;
                    pending = other.terms.get(j).map(map);
                }
            }
        }
        ModVec { terms: out }
    }
}
