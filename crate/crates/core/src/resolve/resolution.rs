use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use super::matrix::Matrix;
use super::module::{prune, syzygy, PresentedModule};
use crate::error::{Error, Result};
use crate::groebner::{AffineRing, Budget};

/// Free resolution `... -> F_2 -> F_1 -> F_0` given by its differentials `d_1, d_2, ...`.
#[derive(Clone, Debug)]
pub struct Resolution {
    pub base: Arc<AffineRing>,
    pub rank0: usize,
    pub maps: Vec<Matrix>,
    pub terminated: bool,
    pub minimal_at_origin: bool,
}

impl Resolution {
    /// Rank of `F_i`.
    pub fn rank(&self, i: usize) -> usize {
        if i == 0 {
            self.rank0
        } else {
            self.maps.get(i - 1).map_or(0, |d| d.ncols())
        }
    }

    pub fn len(&self) -> usize {
        self.maps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.maps.is_empty()
    }

    /// Whether `d_i d_{i+1} = 0` modulo `I` for every consecutive pair.
    pub fn is_complex(&self, budget: &Budget) -> Result<bool> {
        for w in self.maps.windows(2) {
            for c in w[0].mul(&w[1]).cols() {
                for p in c {
                    if !self.base.is_zero(p, budget)? {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    }
}

/// Projective dimension, exact or bounded below when the resolution was cut off.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "value", rename_all = "kebab-case")]
pub enum Pd {
    Exact(usize),
    AtLeast(usize),
}

impl Pd {
    pub fn exact(self) -> Option<usize> {
        match self {
            Pd::Exact(n) => Some(n),
            Pd::AtLeast(_) => None,
        }
    }
}

impl fmt::Display for Pd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Pd::Exact(n) => write!(f, "{n}"),
            Pd::AtLeast(n) => write!(f, "at-least({n})"),
        }
    }
}

/// Local Betti numbers at the origin with derived Euler characteristics.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BettiData {
    pub betti: Vec<usize>,
    pub pd: Pd,
}

impl BettiData {
    pub fn beta(&self, i: usize) -> usize {
        self.betti.get(i).copied().unwrap_or(0)
    }

    /// `chi_i = sum_{j >= i} (-1)^j beta_j`, known only when the pd is exact.
    pub fn partial_euler(&self, i: usize) -> Option<i64> {
        self.pd.exact()?;
        Some(self.betti.iter().enumerate().skip(i).map(|(j, &b)| if j % 2 == 0 { b as i64 } else { -(b as i64) }).sum())
    }

    pub fn euler(&self) -> Option<i64> {
        self.partial_euler(0)
    }
}

/// Default length cutoff: `#vars + 1` over a polynomial ring, `2 dim B + 2` otherwise.
pub fn default_cutoff(base: &AffineRing, budget: &Budget) -> Result<usize> {
    if base.is_polynomial() {
        Ok(base.nvars() + 1)
    } else {
        Ok((2 * base.dim(budget)?.max(0) + 2) as usize)
    }
}

/// Iterated syzygies of the presentation, up to `cutoff + 1` maps so that
/// `beta_cutoff` is reliable after minimization.
pub fn free_resolution(m: &PresentedModule, cutoff: usize, budget: &Budget) -> Result<Resolution> {
    assert!(cutoff >= 1, "cutoff must be positive");
    let base = &m.base;
    let mut maps = Vec::new();
    let mut terminated = true;
    if m.relations.ncols() > 0 {
        maps.push(m.relations.clone());
        loop {
            let last = maps.last().unwrap();
            let s = syzygy(base, last, budget)?;
            if s.ncols() == 0 {
                break;
            }
            if maps.len() > cutoff {
                terminated = false;
                break;
            }
            let s = if s.ncols() <= 12 { prune(base, &s, &Matrix::empty(&base.ring, s.nrows()), budget)? } else { s };
            maps.push(s);
        }
    }
    Ok(Resolution { base: base.clone(), rank0: m.rank, maps, terminated, minimal_at_origin: false })
}

/// Splits off unit entries at the origin until every entry lies in the maximal ideal.
///
/// Uses the fraction-free update `d_i <- u D - gamma delta` for a unit `u` at
/// `(r, c)`, deleting row `c` of `d_{i+1}` and column `r` of `d_{i-1}`.
pub fn minimize_at_origin(res: &Resolution, budget: &Budget) -> Result<(Resolution, BettiData)> {
    let base = &res.base;
    if !base.contains_origin() {
        return Err(Error::PointNotOnVariety(format!("origin is not on V(I) of {}", base.name)));
    }
    let mut maps = res.maps.clone();
    let mut rank0 = res.rank0;
    for i in 0..maps.len() {
        loop {
            let d = &maps[i];
            let mut pivot = None;
            'search: for (c, col) in d.cols().iter().enumerate() {
                for (r, p) in col.iter().enumerate() {
                    if !p.vanishes_at_origin() {
                        pivot = Some((r, c));
                        break 'search;
                    }
                }
            }
            let Some((r, c)) = pivot else { break };
            let d = &maps[i];
            let u = d.entry(r, c).clone();
            let mut cols = Vec::with_capacity(d.ncols() - 1);
            for (j, col) in d.cols().iter().enumerate() {
                if j == c {
                    continue;
                }
                let delta = &col[r];
                let mut out = Vec::with_capacity(d.nrows() - 1);
                for (k, p) in col.iter().enumerate() {
                    if k == r {
                        continue;
                    }
                    let gamma = d.entry(k, c);
                    let v = if delta.is_zero() || gamma.is_zero() { u.mul(p) } else { u.mul(p).sub(&gamma.mul(delta)) };
                    out.push(base.reduce(&v, budget)?);
                }
                cols.push(out);
            }
            maps[i] = Matrix::from_cols(&base.ring, d.nrows() - 1, cols);
            if i + 1 < maps.len() {
                let next = &mut maps[i + 1];
                for col in next.cols_mut().iter_mut() {
                    col.remove(c);
                }
                let n = next.nrows() - 1;
                next.set_nrows(n);
            }
            if i == 0 {
                rank0 -= 1;
            } else {
                maps[i - 1].cols_mut().remove(r);
            }
        }
    }
    let mut out = Resolution { base: base.clone(), rank0, maps, terminated: res.terminated, minimal_at_origin: true };
    let computed = out.maps.len();
    let mut betti: Vec<usize> = (0..=computed).map(|i| out.rank(i)).collect();
    let trusted = if res.terminated { betti.len() } else { computed };
    betti.truncate(trusted);
    let pd = match betti.iter().position(|&b| b == 0) {
        Some(0) => Pd::Exact(0),
        Some(k) => Pd::Exact(k - 1),
        None if res.terminated => Pd::Exact(betti.len() - 1),
        None => Pd::AtLeast(betti.len() - 1),
    };
    if let Pd::Exact(p) = pd {
        betti.truncate(p + 1);
        if betti == [0] {
            betti.clear();
        }
        out.maps.truncate(p);
    }
    Ok((out, BettiData { betti, pd }))
}

/// Resolution with the default cutoff followed by minimization at the origin.
pub fn betti_at_origin(m: &PresentedModule, budget: &Budget) -> Result<BettiData> {
    let cutoff = default_cutoff(&m.base, budget)?;
    let res = free_resolution(m, cutoff, budget)?;
    Ok(minimize_at_origin(&res, budget)?.1)
}
