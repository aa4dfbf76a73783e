#![allow(dead_code)]

pub mod invariants;

use std::sync::Arc;

use branchloc::groebner::{AffineRing, Budget};
use branchloc::polyring::{Coeff, Field, Mono, MonomialOrder, Poly, PolyRing};
use branchloc::resolve::{module_contains, syzygy, Matrix, PresentedModule};
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use proptest::test_runner::{Config, RngSeed};

pub const SEED: u64 = 0x5eed_b1ca;

pub fn config(cases: u32) -> Config {
    Config { cases, rng_seed: RngSeed::Fixed(SEED), failure_persistence: None, ..Config::default() }
}

pub fn plane() -> Arc<AffineRing> {
    let ring = PolyRing::new(vec!["x".into(), "y".into()], Field::Rational, MonomialOrder::GrevLex).unwrap();
    AffineRing::polynomial("R", &ring)
}

pub fn q(c: i64) -> Coeff {
    Coeff::Q(BigRational::from_integer(BigInt::from(c)))
}

/// `a*x + b*y`.
pub fn linear(ring: &Arc<PolyRing>, a: i64, b: i64) -> Poly {
    Poly::from_terms(ring, vec![(Mono(vec![1, 0]), q(a)), (Mono(vec![0, 1]), q(b))])
}

pub fn poly_from(ring: &Arc<PolyRing>, terms: &[(u16, u16, i64)]) -> Poly {
    Poly::from_terms(ring, terms.iter().map(|&(a, b, c)| (Mono(vec![a, b]), q(c))).collect())
}

/// Matrix shape with homogeneous linear entries, as `(rows, cols, coefficient pairs)`.
pub fn linear_matrix() -> impl Strategy<Value = (usize, usize, Vec<(i64, i64)>)> {
    (1usize..=3, 1usize..=3)
        .prop_flat_map(|(r, c)| (Just(r), Just(c), prop::collection::vec((-2i64..=2, -2i64..=2), r * c)))
}

pub fn build_linear(ring: &Arc<PolyRing>, (r, c, coeffs): &(usize, usize, Vec<(i64, i64)>)) -> Matrix {
    let rows =
        (0..*r).map(|i| (0..*c).map(|j| linear(ring, coeffs[i * c + j].0, coeffs[i * c + j].1)).collect()).collect();
    Matrix::from_rows(ring, rows)
}

pub fn small_poly() -> impl Strategy<Value = Vec<(u16, u16, i64)>> {
    prop::collection::vec((0u16..=3, 0u16..=3, -4i64..=4), 0..=4)
}

/// Whether multiplication by `l` is injective on `coker(a)`.
pub fn nonzerodivisor(base: &Arc<AffineRing>, a: &Matrix, l: &Poly, b: &Budget) -> bool {
    let n = a.nrows();
    let s = syzygy(base, &Matrix::scalar(&base.ring, n, l).hcat(a), b).unwrap();
    s.top_rows(n).cols().iter().all(|u| module_contains(base, a, u, b).unwrap())
}

/// Depth at the origin of a graded module over `k[x, y]`, from a maximal regular sequence
/// of linear forms. Graded associated primes other than the maximal ideal are finitely many
/// lines, so one of eight pairwise independent forms avoids them.
pub fn graded_depth(m: &PresentedModule, b: &Budget) -> usize {
    let base = &m.base;
    let ring = &base.ring;
    let a = m.relations.clone();
    let forms: Vec<Poly> = (0..7).map(|c| linear(ring, 1, c)).chain([linear(ring, 0, 1)]).collect();
    let Some(k) = forms.iter().position(|l| nonzerodivisor(base, &a, l, b)) else {
        return 0;
    };
    let l1 = &forms[k];
    let l2 = if k == 7 { linear(ring, 1, 0) } else { linear(ring, 0, 1) };
    let quotient = a.hcat(&Matrix::scalar(ring, a.nrows(), l1));
    if nonzerodivisor(base, &quotient, &l2, b) {
        2
    } else {
        1
    }
}
