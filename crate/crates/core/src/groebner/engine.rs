//! Buchberger completion over free modules with Gebauer–Möller pair pruning.
//!
//! Ideals are the rank-one case. Pairs are selected by the normal strategy
//! (smallest lcm first, ties broken by index), so every run is reproducible.

use std::cmp::Ordering;
use std::sync::Arc;
use std::time::{Duration, Instant};

use super::vector::{cmp_term, ModVec};
use crate::error::{Error, Result};
use crate::polyring::{Mono, PolyRing};

/// Resource limits for Gröbner computations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    pub degree_cap: u32,
    pub deadline: Option<Instant>,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { degree_cap: 40, deadline: None }
    }
}

impl Budget {
    pub fn new(degree_cap: u32, seconds: Option<u64>) -> Self {
        Budget { degree_cap, deadline: seconds.map(|s| Instant::now() + Duration::from_secs(s)) }
    }

    pub(crate) fn check_time(&self) -> Result<()> {
        match self.deadline {
            Some(d) if Instant::now() > d => Err(Error::BudgetExceeded("time limit reached".into())),
            _ => Ok(()),
        }
    }
}

struct Pair {
    i: usize,
    j: usize,
    pos: usize,
    lcm: Mono,
}

struct State<'a> {
    ring: &'a PolyRing,
    basis: Vec<ModVec>,
    /// Indices of the current minimal basis, kept sorted by increasing leading term.
    active: Vec<usize>,
    pairs: Vec<Pair>,
    rank_one: bool,
}

impl State<'_> {
    fn lead(&self, i: usize) -> (usize, &Mono) {
        let (p, m, _) = self.basis[i].leading().expect("nonzero basis element");
        (p, m)
    }

    fn sort_active(&mut self) {
        let order = self.ring.order;
        let basis = &self.basis;
        self.active.sort_by(|&a, &b| {
            let (pa, ma, _) = basis[a].leading().unwrap();
            let (pb, mb, _) = basis[b].leading().unwrap();
            cmp_term(order, (pa, ma), (pb, mb)).then(a.cmp(&b))
        });
    }

    fn update(&mut self, h: usize) {
        let (hp, hm) = {
            let (p, m) = self.lead(h);
            (p, m.clone())
        };
        let mut c: Vec<(usize, Mono)> =
            self.active.iter().filter(|&&g| self.lead(g).0 == hp).map(|&g| (g, hm.lcm(self.lead(g).1))).collect();
        let mut d: Vec<(usize, Mono)> = Vec::new();
        while let Some((g, l)) = c.pop() {
            let coprime = self.rank_one && hm.is_coprime(self.lead(g).1);
            if coprime || (!c.iter().any(|(_, l2)| l2.divides(&l)) && !d.iter().any(|(_, l2)| l2.divides(&l))) {
                d.push((g, l));
            }
        }
        let new_pairs: Vec<Pair> = d
            .into_iter()
            .filter(|(g, _)| !(self.rank_one && hm.is_coprime(self.lead(*g).1)))
            .map(|(g, lcm)| Pair { i: g, j: h, pos: hp, lcm })
            .collect();

        let basis = &self.basis;
        self.pairs.retain(|p| {
            if p.pos != hp || !hm.divides(&p.lcm) {
                return true;
            }
            let li = hm.lcm(basis[p.i].leading().unwrap().1);
            let lj = hm.lcm(basis[p.j].leading().unwrap().1);
            li == p.lcm || lj == p.lcm
        });
        self.pairs.extend(new_pairs);
        self.active.retain(|&g| {
            let (gp, gm, _) = basis[g].leading().unwrap();
            !(gp == hp && hm.divides(gm))
        });
        self.active.push(h);
        self.sort_active();
    }

    fn select(&mut self) -> Option<Pair> {
        let order = self.ring.order;
        let best = (0..self.pairs.len()).min_by(|&a, &b| {
            let pa = &self.pairs[a];
            let pb = &self.pairs[b];
            cmp_term(order, (pa.pos, &pa.lcm), (pb.pos, &pb.lcm)).then((pa.i, pa.j).cmp(&(pb.i, pb.j)))
        })?;
        Some(self.pairs.swap_remove(best))
    }

    fn spoly(&self, p: &Pair) -> ModVec {
        let f = self.ring.field;
        let a = &self.basis[p.i];
        let b = &self.basis[p.j];
        let (_, am, ac) = a.leading().unwrap();
        let (_, bm, bc) = b.leading().unwrap();
        let ma = am.quotient_of(&p.lcm);
        let mb = bm.quotient_of(&p.lcm);
        let left = ModVec::zero().sub_scaled(self.ring, &f.neg(&f.inv(ac)), &ma, a);
        left.sub_scaled(self.ring, &f.inv(bc), &mb, b)
    }
}

/// Finds the reducer with the smallest leading term dividing `(pos, m)`.
fn find_reducer<'b>(basis: &'b [ModVec], sorted: &[usize], pos: usize, m: &Mono) -> Option<&'b ModVec> {
    sorted.iter().map(|&i| &basis[i]).find(|g| {
        let (gp, gm, _) = g.leading().unwrap();
        gp == pos && gm.divides(m)
    })
}

fn reduce_with(ring: &PolyRing, v: &ModVec, basis: &[ModVec], sorted: &[usize]) -> ModVec {
    let f = ring.field;
    let mut p = v.clone();
    let mut rem: Vec<_> = Vec::new();
    while let Some((pos, m, c)) = p.leading() {
        match find_reducer(basis, sorted, pos, m) {
            Some(g) => {
                let (_, gm, gc) = g.leading().unwrap();
                let q = gm.quotient_of(m);
                let coef = f.div(c, gc);
                p = p.sub_scaled(ring, &coef, &q, g);
            }
            None => rem.push(p.terms.remove(0)),
        }
    }
    ModVec { terms: rem }
}

/// Full normal form of `v` with respect to a reduced basis sorted by increasing leading term.
pub(crate) fn normal_form(ring: &PolyRing, v: &ModVec, gb: &[ModVec]) -> ModVec {
    let idx: Vec<usize> = (0..gb.len()).collect();
    reduce_with(ring, v, gb, &idx)
}

/// Reduced Gröbner basis of the submodule generated by `gens`, sorted by increasing leading term.
pub(crate) fn groebner(ring: &Arc<PolyRing>, gens: &[ModVec], budget: &Budget, rank_one: bool) -> Result<Vec<ModVec>> {
    let order = ring.order;
    let mut st = State { ring, basis: Vec::new(), active: Vec::new(), pairs: Vec::new(), rank_one };
    let mut input: Vec<ModVec> = gens.iter().filter(|g| !g.is_zero()).cloned().collect();
    input.sort_by(|a, b| {
        let (pa, ma, _) = a.leading().unwrap();
        let (pb, mb, _) = b.leading().unwrap();
        cmp_term(order, (pa, ma), (pb, mb))
    });
    for g in input {
        let r = reduce_with(ring, &g, &st.basis, &st.active);
        if !r.is_zero() {
            st.basis.push(r.monic(ring));
            let h = st.basis.len() - 1;
            st.update(h);
        }
    }
    while let Some(pair) = st.select() {
        budget.check_time()?;
        if pair.lcm.degree() > budget.degree_cap {
            return Err(Error::BudgetExceeded(format!(
                "S-pair degree {} exceeds cap {}",
                pair.lcm.degree(),
                budget.degree_cap
            )));
        }
        let s = st.spoly(&pair);
        let r = reduce_with(ring, &s, &st.basis, &st.active);
        if !r.is_zero() {
            st.basis.push(r.monic(ring));
            let h = st.basis.len() - 1;
            st.update(h);
        }
    }

    // inter-reduce the minimal basis
    let minimal: Vec<ModVec> = st.active.iter().map(|&i| st.basis[i].clone()).collect();
    let mut reduced = Vec::with_capacity(minimal.len());
    for (k, g) in minimal.iter().enumerate() {
        let others: Vec<usize> = (0..minimal.len()).filter(|&j| j != k).collect();
        let (lp, lm, lc) = g.leading().unwrap();
        let head = ModVec { terms: vec![(lp, lm.clone(), lc.clone())] };
        let tail = ModVec { terms: g.terms[1..].to_vec() };
        let tail = reduce_with(ring, &tail, &minimal, &others);
        reduced.push(head.add(ring, &tail).monic(ring));
    }
    reduced.sort_by(|a, b| {
        let (pa, ma, _) = a.leading().unwrap();
        let (pb, mb, _) = b.leading().unwrap();
        match cmp_term(order, (pa, ma), (pb, mb)) {
            Ordering::Equal => unreachable!("minimal basis has distinct leading terms"),
            o => o,
        }
    });
    Ok(reduced)
}
