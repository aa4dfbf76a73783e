//! Limited factorization: monomial content, repeated factors, and
//! irreducibility certificates for linear, binomial, univariate and
//! bivariate homogeneous polynomials. Anything else is left uncertified.

use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::Result;
use crate::groebner::{Budget, Ideal};
use crate::polyring::{Coeff, Field, Mono, Poly, PolyRing};

const KRONECKER_MAX_DEGREE: usize = 8;
const KRONECKER_MAX_TRIALS: usize = 200_000;
const DIVISOR_LIMIT: u64 = 1_000_000_000_000;

/// Monic factors with multiplicities; `certified` when each factor is proven irreducible.
#[derive(Clone, Debug)]
pub struct Factorization {
    pub factors: Vec<(Poly, u32)>,
    pub certified: bool,
}

enum Split {
    Irreducible,
    Factors(Vec<Poly>),
    Unknown,
}

/// Monic gcd, computed as `f g / lcm(f, g)` with the lcm from `(f) ∩ (g)`.
pub fn gcd(f: &Poly, g: &Poly, budget: &Budget) -> Result<Poly> {
    if f.is_zero() {
        return Ok(g.monic());
    }
    if g.is_zero() || f.is_constant() || g.is_constant() {
        return Ok(if g.is_zero() { f.monic() } else { Poly::one(f.ring()) });
    }
    let ring = f.ring();
    let lcm = Ideal::new(ring, vec![f.clone()]).intersect(&Ideal::new(ring, vec![g.clone()]), budget)?;
    let l = lcm.gb(budget)?.elements()[0].clone();
    Ok(f.mul(g).div_exact(&l).expect("lcm divides the product").monic())
}

pub fn factor(f: &Poly, budget: &Budget) -> Result<Factorization> {
    let mut out = Factorization { factors: Vec::new(), certified: true };
    collect(f, 1, budget, &mut out, 0)?;
    out.factors.sort_by_key(|a| a.0.to_string());
    Ok(out)
}

fn push(out: &mut Factorization, p: Poly, e: u32) {
    let p = p.monic();
    match out.factors.iter_mut().find(|(q, _)| *q == p) {
        Some((_, k)) => *k += e,
        None => out.factors.push((p, e)),
    }
}

fn collect(f: &Poly, mult: u32, budget: &Budget, out: &mut Factorization, depth: usize) -> Result<()> {
    if f.is_constant() {
        return Ok(());
    }
    let ring = f.ring();
    let content = f.terms().iter().skip(1).fold(f.terms()[0].0.clone(), |acc, (m, _)| acc.gcd(m));
    for v in content.support().collect::<Vec<_>>() {
        push(out, Poly::var(ring, v), mult * content.0[v] as u32);
    }
    let f = if content.is_one() {
        f.clone()
    } else {
        let c = Poly::monomial(ring, content, ring.field.one());
        f.div_exact(&c).expect("content divides")
    };
    if f.is_constant() {
        return Ok(());
    }
    if depth > 32 {
        out.certified = false;
        push(out, f, mult);
        return Ok(());
    }
    match try_split(&f, budget)? {
        Split::Irreducible => push(out, f, mult),
        Split::Unknown => {
            out.certified = false;
            push(out, f, mult);
        }
        Split::Factors(parts) => {
            for p in parts {
                collect(&p, mult, budget, out, depth + 1)?;
            }
        }
    }
    Ok(())
}

fn try_split(f: &Poly, budget: &Budget) -> Result<Split> {
    if f.total_degree() == Some(1) {
        return Ok(Split::Irreducible);
    }
    let vars = f.variables();
    for &v in &vars {
        let d = f.derivative(v);
        if d.is_zero() {
            continue;
        }
        let g = gcd(f, &d, budget)?;
        if !g.is_constant() {
            let h = f.div_exact(&g).expect("gcd divides");
            return Ok(Split::Factors(vec![g, h]));
        }
    }
    for &v in &vars {
        if f.degree_in(v) == 1 {
            let (a, b) = linear_coefficients(f, v);
            let g = gcd(&a, &b, budget)?;
            if g.is_constant() {
                return Ok(Split::Irreducible);
            }
            let h = f.div_exact(&g).expect("gcd divides");
            return Ok(Split::Factors(vec![g, h]));
        }
    }
    if f.len() == 2 {
        let (m1, m2) = (&f.terms()[0].0, &f.terms()[1].0);
        let g = m1.0.iter().zip(&m2.0).fold(0i64, |acc, (&a, &b)| acc.gcd(&(a as i64 - b as i64)));
        if g == 1 {
            return Ok(Split::Irreducible);
        }
    }
    if vars.len() == 1 {
        return univariate_split(f, vars[0]);
    }
    if vars.len() == 2 && is_homogeneous(f) {
        return homogeneous_split(f, vars[0], vars[1]);
    }
    Ok(Split::Unknown)
}

/// `f = a x_v + b` with `a, b` free of `x_v`.
fn linear_coefficients(f: &Poly, v: usize) -> (Poly, Poly) {
    let ring = f.ring();
    let mut a = Vec::new();
    let mut b = Vec::new();
    for (m, c) in f.terms() {
        if m.0[v] == 1 {
            let mut q = m.clone();
            q.0[v] = 0;
            a.push((q, c.clone()));
        } else {
            b.push((m.clone(), c.clone()));
        }
    }
    (Poly::from_terms(ring, a), Poly::from_terms(ring, b))
}

fn is_homogeneous(f: &Poly) -> bool {
    let d = f.total_degree().unwrap_or(0);
    f.terms().iter().all(|(m, _)| m.degree() == d)
}

/// Dehomogenizes at `x_w = 1`; irreducibility transfers since `x_w` does not divide `f`.
fn homogeneous_split(f: &Poly, v: usize, w: usize) -> Result<Split> {
    let ring = f.ring();
    let deg = f.total_degree().unwrap();
    let dehom = Poly::from_terms(
        ring,
        f.terms()
            .iter()
            .map(|(m, c)| {
                let mut q = m.clone();
                q.0[w] = 0;
                (q, c.clone())
            })
            .collect(),
    );
    Ok(match univariate_split(&dehom, v)? {
        Split::Irreducible => Split::Irreducible,
        Split::Unknown => Split::Unknown,
        Split::Factors(parts) => Split::Factors(
            parts
                .into_iter()
                .map(|p| {
                    let d = p.total_degree().unwrap_or(0);
                    let _ = deg;
                    Poly::from_terms(
                        ring,
                        p.terms()
                            .iter()
                            .map(|(m, c)| {
                                let mut q = m.clone();
                                q.0[w] = (d - m.degree()) as u16;
                                (q, c.clone())
                            })
                            .collect(),
                    )
                })
                .collect(),
        ),
    })
}

fn to_univariate(f: &Poly, v: usize) -> Vec<Coeff> {
    let n = f.degree_in(v) as usize;
    let mut out = vec![f.field().zero(); n + 1];
    for (m, c) in f.terms() {
        out[m.0[v] as usize] = c.clone();
    }
    out
}

fn from_univariate_q(ring: &Arc<PolyRing>, v: usize, coeffs: &[BigRational]) -> Poly {
    let terms = coeffs
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(k, c)| {
            let mut m = Mono::one(ring.nvars());
            m.0[v] = k as u16;
            (m, Coeff::Q(c.clone()))
        })
        .collect();
    Poly::from_terms(ring, terms)
}

fn univariate_split(f: &Poly, v: usize) -> Result<Split> {
    let ring = f.ring();
    let deg = f.degree_in(v) as usize;
    match ring.field {
        Field::Prime(p) => {
            if p > 10_007 {
                return Ok(Split::Unknown);
            }
            let coeffs: Vec<u64> = to_univariate(f, v)
                .iter()
                .map(|c| match c {
                    Coeff::P(x) => *x as u64,
                    Coeff::Q(_) => unreachable!(),
                })
                .collect();
            for a in 0..p as u64 {
                let val = coeffs.iter().rev().fold(0u64, |acc, &c| (acc * a + c) % p as u64);
                if val == 0 {
                    let lin = Poly::var(ring, v).sub(&Poly::constant(ring, Coeff::P(a as u32)));
                    let q = f.div_exact(&lin).expect("root gives a linear factor");
                    return Ok(Split::Factors(vec![lin, q]));
                }
            }
            Ok(if deg <= 3 { Split::Irreducible } else { Split::Unknown })
        }
        Field::Rational => {
            let ints = integer_coeffs(&to_univariate(f, v));
            if let Some(r) = rational_root(&ints) {
                let lin = from_univariate_q(ring, v, &[-r, BigRational::one()]);
                let q = f.div_exact(&lin).expect("root gives a linear factor");
                return Ok(Split::Factors(vec![lin, q]));
            }
            if deg <= 3 {
                return Ok(Split::Irreducible);
            }
            if deg > KRONECKER_MAX_DEGREE {
                return Ok(Split::Unknown);
            }
            Ok(match kronecker(&ints) {
                Some(Some(g)) => {
                    let g: Vec<BigRational> = g.into_iter().map(BigRational::from_integer).collect();
                    let gp = from_univariate_q(ring, v, &g);
                    let q = f.div_exact(&gp).expect("Kronecker factor divides");
                    Split::Factors(vec![gp, q])
                }
                Some(None) => Split::Irreducible,
                None => Split::Unknown,
            })
        }
    }
}

/// Primitive integer coefficients (low to high) of a rational polynomial.
fn integer_coeffs(c: &[Coeff]) -> Vec<BigInt> {
    let rats: Vec<BigRational> = c
        .iter()
        .map(|x| match x {
            Coeff::Q(q) => q.clone(),
            Coeff::P(_) => unreachable!(),
        })
        .collect();
    let den = rats.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    let ints: Vec<BigInt> = rats.iter().map(|q| (q * BigRational::from_integer(den.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    ints.into_iter().map(|x| x / &g).collect()
}

fn divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    let n = n.abs().to_u64()?;
    if n == 0 || n > DIVISOR_LIMIT {
        return None;
    }
    let mut out = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(BigInt::from(d));
            if d * d != n {
                out.push(BigInt::from(n / d));
            }
        }
        d += 1;
    }
    out.sort();
    Some(out)
}

fn eval_int(c: &[BigInt], x: &BigRational) -> BigRational {
    c.iter().rev().fold(BigRational::zero(), |acc, a| acc * x + BigRational::from_integer(a.clone()))
}

fn rational_root(c: &[BigInt]) -> Option<BigRational> {
    if c[0].is_zero() {
        return Some(BigRational::zero());
    }
    let ps = divisors(&c[0])?;
    let qs = divisors(c.last().unwrap())?;
    for p in &ps {
        for q in &qs {
            for s in [1, -1] {
                let r = BigRational::new(p * BigInt::from(s), q.clone());
                if eval_int(c, &r).is_zero() {
                    return Some(r);
                }
            }
        }
    }
    None
}

/// Lagrange interpolation through `(xs[k], ys[k])`, coefficients low to high.
fn interpolate(xs: &[BigInt], ys: &[BigInt]) -> Vec<BigRational> {
    let n = xs.len();
    let mut out = vec![BigRational::zero(); n];
    for k in 0..n {
        let mut basis = vec![BigRational::one()];
        let mut denom = BigRational::one();
        for j in 0..n {
            if j == k {
                continue;
            }
            let mut next = vec![BigRational::zero(); basis.len() + 1];
            for (i, b) in basis.iter().enumerate() {
                next[i + 1] += b;
                next[i] -= b * BigRational::from_integer(xs[j].clone());
            }
            basis = next;
            denom *= BigRational::from_integer(&xs[k] - &xs[j]);
        }
        let scale = BigRational::from_integer(ys[k].clone()) / denom;
        for (o, b) in out.iter_mut().zip(basis) {
            *o += b * &scale;
        }
    }
    out
}

fn divides_int(g: &[BigInt], f: &[BigInt]) -> bool {
    let mut r: Vec<BigRational> = f.iter().map(|x| BigRational::from_integer(x.clone())).collect();
    let lead = BigRational::from_integer(g.last().unwrap().clone());
    let dg = g.len() - 1;
    while r.len() > dg && !r.is_empty() {
        let top = r.last().unwrap().clone();
        if !top.is_zero() {
            let q = &top / &lead;
            let shift = r.len() - 1 - dg;
            for (i, gi) in g.iter().enumerate() {
                r[shift + i] -= &q * BigRational::from_integer(gi.clone());
            }
        }
        r.pop();
    }
    r.iter().all(Zero::is_zero)
}

/// Kronecker's method: `Some(Some(g))` for a proper factor, `Some(None)` when
/// none exists, `None` when the search exceeds its limits.
fn kronecker(f: &[BigInt]) -> Option<Option<Vec<BigInt>>> {
    let n = f.len() - 1;
    let mut points = Vec::new();
    let mut k = 0i64;
    while points.len() < n / 2 + 1 {
        let x = BigInt::from(if k % 2 == 0 { k / 2 } else { -(k + 1) / 2 });
        let y = eval_int(f, &BigRational::from_integer(x.clone())).to_integer();
        if !y.is_zero() {
            points.push((x, y));
        }
        k += 1;
    }
    let mut trials = 0usize;
    for d in 1..=n / 2 {
        let pts = &points[..=d];
        let xs: Vec<BigInt> = pts.iter().map(|p| p.0.clone()).collect();
        let divs: Vec<Vec<BigInt>> = pts.iter().map(|p| divisors(&p.1)).collect::<Option<_>>()?;
        let mut idx = vec![0usize; d + 1];
        let mut signs = vec![1i32; d + 1];
        loop {
            trials += 1;
            if trials > KRONECKER_MAX_TRIALS {
                return None;
            }
            let ys: Vec<BigInt> = (0..=d).map(|i| &divs[i][idx[i]] * BigInt::from(signs[i])).collect();
            let g = interpolate(&xs, &ys);
            if g.iter().all(|c| c.is_integer()) && !g[d].is_zero() {
                let gi: Vec<BigInt> = g.iter().map(|c| c.to_integer()).collect();
                if divides_int(&gi, f) {
                    return Some(Some(gi));
                }
            }
            // advance the odometer over divisor choices and signs (first sign fixed)
            let mut pos = 0;
            loop {
                if pos > d {
                    break;
                }
                if pos > 0 && signs[pos] == 1 {
                    signs[pos] = -1;
                    break;
                }
                if pos > 0 {
                    signs[pos] = 1;
                }
                idx[pos] += 1;
                if idx[pos] < divs[pos].len() {
                    break;
                }
                idx[pos] = 0;
                pos += 1;
            }
            if pos > d {
                break;
            }
        }
    }
    Some(None)
}
