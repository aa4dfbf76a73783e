use std::fmt;
use std::sync::Arc;

use crate::polyring::{Poly, PolyRing};

/// Polynomial matrix stored by columns.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    ring: Arc<PolyRing>,
    nrows: usize,
    cols: Vec<Vec<Poly>>,
}

impl Matrix {
    pub fn from_cols(ring: &Arc<PolyRing>, nrows: usize, cols: Vec<Vec<Poly>>) -> Self {
        assert!(cols.iter().all(|c| c.len() == nrows), "column length mismatch");
        Matrix { ring: ring.clone(), nrows, cols }
    }

    pub fn from_rows(ring: &Arc<PolyRing>, rows: Vec<Vec<Poly>>) -> Self {
        let ncols = rows.first().map_or(0, |r| r.len());
        assert!(rows.iter().all(|r| r.len() == ncols), "row length mismatch");
        let cols = (0..ncols).map(|j| rows.iter().map(|r| r[j].clone()).collect()).collect();
        Matrix { ring: ring.clone(), nrows: rows.len(), cols }
    }

    pub fn empty(ring: &Arc<PolyRing>, nrows: usize) -> Self {
        Matrix { ring: ring.clone(), nrows, cols: Vec::new() }
    }

    pub fn identity(ring: &Arc<PolyRing>, n: usize) -> Self {
        Self::scalar(ring, n, &Poly::one(ring))
    }

    /// `f` times the identity.
    pub fn scalar(ring: &Arc<PolyRing>, n: usize, f: &Poly) -> Self {
        let cols =
            (0..n).map(|j| (0..n).map(|i| if i == j { f.clone() } else { Poly::zero(ring) }).collect()).collect();
        Matrix { ring: ring.clone(), nrows: n, cols }
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.cols.len()
    }

    pub fn cols(&self) -> &[Vec<Poly>] {
        &self.cols
    }

    pub fn col(&self, j: usize) -> &[Poly] {
        &self.cols[j]
    }

    pub fn entry(&self, i: usize, j: usize) -> &Poly {
        &self.cols[j][i]
    }

    pub fn row(&self, i: usize) -> Vec<Poly> {
        self.cols.iter().map(|c| c[i].clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(|c| c.iter().all(Poly::is_zero))
    }

    pub fn transpose(&self) -> Matrix {
        let cols = (0..self.nrows).map(|i| self.row(i)).collect();
        Matrix { ring: self.ring.clone(), nrows: self.ncols(), cols }
    }

    pub fn apply(&self, v: &[Poly]) -> Vec<Poly> {
        assert_eq!(v.len(), self.ncols());
        let mut out = vec![Poly::zero(&self.ring); self.nrows];
        for (c, x) in self.cols.iter().zip(v) {
            if x.is_zero() {
                continue;
            }
            for (o, a) in out.iter_mut().zip(c) {
                if !a.is_zero() {
                    *o = o.add(&a.mul(x));
                }
            }
        }
        out
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.ncols(), other.nrows());
        let cols = other.cols.iter().map(|c| self.apply(c)).collect();
        Matrix { ring: self.ring.clone(), nrows: self.nrows, cols }
    }

    /// Columns of `self` followed by columns of `other`.
    pub fn hcat(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.nrows, other.nrows);
        let mut cols = self.cols.clone();
        cols.extend(other.cols.iter().cloned());
        Matrix { ring: self.ring.clone(), nrows: self.nrows, cols }
    }

    pub fn top_rows(&self, k: usize) -> Matrix {
        let cols = self.cols.iter().map(|c| c[..k].to_vec()).collect();
        Matrix { ring: self.ring.clone(), nrows: k, cols }
    }

    pub fn select_cols(&self, idx: &[usize]) -> Matrix {
        let cols = idx.iter().map(|&j| self.cols[j].clone()).collect();
        Matrix { ring: self.ring.clone(), nrows: self.nrows, cols }
    }

    pub fn map_entries(&self, mut f: impl FnMut(&Poly) -> Poly) -> Matrix {
        let cols = self.cols.iter().map(|c| c.iter().map(&mut f).collect()).collect();
        Matrix { ring: self.ring.clone(), nrows: self.nrows, cols }
    }

    pub fn push_col(&mut self, col: Vec<Poly>) {
        assert_eq!(col.len(), self.nrows);
        self.cols.push(col);
    }

    pub(crate) fn cols_mut(&mut self) -> &mut Vec<Vec<Poly>> {
        &mut self.cols
    }

    pub(crate) fn set_nrows(&mut self, n: usize) {
        self.nrows = n;
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = (0..self.nrows)
            .map(|i| {
                let r: Vec<String> = self.row(i).iter().map(|p| p.to_string()).collect();
                format!("[{}]", r.join(", "))
            })
            .collect();
        write!(f, "[{}]", rows.join(", "))
    }
}

/// Determinant by fraction-free (Bareiss) elimination.
pub fn determinant(rows: &[Vec<Poly>], ring: &Arc<PolyRing>) -> Poly {
    let n = rows.len();
    if n == 0 {
        return Poly::one(ring);
    }
    if n == 1 {
        return rows[0][0].clone();
    }
    if n == 2 {
        return rows[0][0].mul(&rows[1][1]).sub(&rows[0][1].mul(&rows[1][0]));
    }
    let mut a: Vec<Vec<Poly>> = rows.to_vec();
    let mut sign = false;
    let mut prev = Poly::one(ring);
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = !sign;
                }
                None => return Poly::zero(ring),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = a[i][j].mul(&a[k][k]).sub(&a[i][k].mul(&a[k][j]));
                a[i][j] = num.div_exact(&prev).expect("Bareiss division is exact");
            }
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if sign {
        d.neg()
    } else {
        d
    }
}

/// All `k`-element subsets of `0..n` in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        out.push(cur.clone());
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] < n - k + i {
                cur[i] += 1;
                for j in i + 1..k {
                    cur[j] = cur[j - 1] + 1;
                }
                break;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::{parse_poly, Field, MonomialOrder};

    fn ring() -> Arc<PolyRing> {
        PolyRing::new(vec!["x".into(), "y".into()], Field::Rational, MonomialOrder::GrevLex).unwrap()
    }

    fn m(r: &Arc<PolyRing>, rows: &[&[&str]]) -> Vec<Vec<Poly>> {
        rows.iter().map(|row| row.iter().map(|s| parse_poly(s, r).unwrap()).collect()).collect()
    }

    #[test]
    fn determinants() {
        let r = ring();
        assert_eq!(determinant(&m(&r, &[&["x", "y"], &["y", "x"]]), &r).to_string(), "x^2 - y^2");
        let a = m(&r, &[&["0", "1", "x"], &["1", "0", "y"], &["x", "y", "1"]]);
        // expansion along the first row: -1*(1 - x*y) + x*(y - 0)
        assert_eq!(determinant(&a, &r).to_string(), "2*x*y - 1");
        let b = m(&r, &[&["x", "x^2", "1"], &["y", "x*y", "0"], &["1", "x", "y"]]);
        assert!(determinant(&b, &r).is_zero());
    }

    #[test]
    fn subset_enumeration() {
        assert_eq!(subsets(4, 2).len(), 6);
        assert_eq!(subsets(3, 0), vec![Vec::<usize>::new()]);
        assert!(subsets(2, 3).is_empty());
        assert_eq!(subsets(3, 3), vec![vec![0, 1, 2]]);
    }

    #[test]
    fn transpose_and_product() {
        let r = ring();
        let a = Matrix::from_rows(&r, m(&r, &[&["x", "y", "1"]]));
        let t = a.transpose();
        assert_eq!((t.nrows(), t.ncols()), (3, 1));
        assert_eq!(a.mul(&t).entry(0, 0).to_string(), "x^2 + y^2 + 1");
    }
}
