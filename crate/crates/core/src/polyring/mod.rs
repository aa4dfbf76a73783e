//! Exact multivariate polynomial arithmetic, term orders and the expression parser.

mod field;
mod monomial;
mod parse;
mod poly;

use std::sync::Arc;

pub use field::{Coeff, Field};
pub use monomial::{Mono, MonomialOrder, MAX_EXPONENT};
pub use parse::parse_poly;
pub use poly::{Poly, PolyRing};

use crate::error::Result;

/// A named affine coordinate ring `k[vars] / (ideal_gens)`.
#[derive(Clone, Debug)]
pub struct RingDecl {
    pub name: String,
    pub ring: Arc<PolyRing>,
    pub ideal_gens: Vec<Poly>,
}

impl RingDecl {
    pub fn new(name: &str, vars: &[&str], field: Field, gens: &[&str]) -> Result<Self> {
        Self::with_order(name, vars, field, MonomialOrder::GrevLex, gens)
    }

    pub fn with_order(name: &str, vars: &[&str], field: Field, order: MonomialOrder, gens: &[&str]) -> Result<Self> {
        let ring = PolyRing::new(vars.iter().map(|v| v.to_string()).collect(), field, order)?;
        let ideal_gens = gens.iter().map(|g| parse_poly(g, &ring)).collect::<Result<Vec<_>>>()?;
        Ok(RingDecl { name: name.to_string(), ring, ideal_gens })
    }

    pub fn nvars(&self) -> usize {
        self.ring.nvars()
    }

    pub fn parse(&self, src: &str) -> Result<Poly> {
        parse_poly(src, &self.ring)
    }
}

/// `a op b` with ring checking.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
}

pub fn poly_arith(a: &Poly, b: &Poly, op: ArithOp) -> Result<Poly> {
    match op {
        ArithOp::Add => a.try_add(b),
        ArithOp::Sub => a.try_sub(b),
        ArithOp::Mul => a.try_mul(b),
    }
}

pub fn monomial_compare(m1: &[u32], m2: &[u32], order: MonomialOrder) -> Result<std::cmp::Ordering> {
    order.try_compare(m1, m2)
}
