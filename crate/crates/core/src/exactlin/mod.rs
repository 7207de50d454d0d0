//! Exact rational scalars and sparse linear algebra over the rationals.
//!
//! Pivoting always selects the first nonzero column, and among rows the
//! earliest one, so every derived object is deterministic. Whatever happens
//! internally, the observable reduced form is the canonical reduced
//! row-echelon form.

mod echelon;
mod rational;
mod sparse;

pub use echelon::Echelon;
pub use rational::Rational;
pub use sparse::{RationalMatrix, SparseVec};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Output of [`rref`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    /// Nonzero rows of the reduced row-echelon form.
    pub reduced: RationalMatrix,
    pub rank: usize,
    pub pivot_cols: Vec<usize>,
}

pub fn rref(m: &RationalMatrix) -> Rref {
    let mut ech = Echelon::new(m.ncols());
    for row in m.rows() {
        ech.insert(row.clone());
    }
    let (reduced, pivot_cols) = ech.to_rref();
    Rref { rank: pivot_cols.len(), reduced, pivot_cols }
}

pub fn rank(m: &RationalMatrix) -> usize {
    let mut ech = Echelon::new(m.ncols());
    for row in m.rows() {
        ech.insert(row.clone());
    }
    ech.rank()
}

/// Basis of `{x : m x = 0}`.
pub fn kernel_basis(m: &RationalMatrix) -> Subspace {
    let Rref { reduced, pivot_cols, .. } = rref(m);
    let n = m.ncols();
    let mut is_pivot = vec![false; n];
    for &p in &pivot_cols {
        is_pivot[p] = true;
    }
    let mut vectors = Vec::new();
    for free in (0..n).filter(|&c| !is_pivot[c]) {
        let mut e = vec![(free, Rational::one())];
        for (row, &p) in reduced.rows().iter().zip(&pivot_cols) {
            let x = row.get(free);
            if !x.is_zero() {
                e.push((p, -x));
            }
        }
        vectors.push(SparseVec::from_entries(e));
    }
    Subspace::from_vectors(n, vectors).expect("kernel vectors have ambient length")
}

/// Subspace of `ℚ^ambient_dim` held as a reduced row-echelon basis.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Subspace {
    ambient_dim: usize,
    basis: RationalMatrix,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient_dim: usize) -> Self {
        Subspace { ambient_dim, basis: RationalMatrix::zeros(0, ambient_dim), pivots: Vec::new() }
    }

    pub fn full(ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            basis: RationalMatrix::identity(ambient_dim),
            pivots: (0..ambient_dim).collect(),
        }
    }

    pub fn from_vectors(ambient_dim: usize, vectors: Vec<SparseVec>) -> Result<Self> {
        let m = RationalMatrix::from_rows(ambient_dim, vectors)?;
        Ok(Self::row_space(&m))
    }

    pub fn from_dense(ambient_dim: usize, vectors: &[Vec<Rational>]) -> Result<Self> {
        let mut sv = Vec::with_capacity(vectors.len());
        for v in vectors {
            if v.len() != ambient_dim {
                return Err(Error::DimensionMismatch { expected: ambient_dim, found: v.len() });
            }
            sv.push(SparseVec::from_dense(v));
        }
        Self::from_vectors(ambient_dim, sv)
    }

    pub fn row_space(m: &RationalMatrix) -> Self {
        let Rref { reduced, pivot_cols, .. } = rref(m);
        Subspace { ambient_dim: m.ncols(), basis: reduced, pivots: pivot_cols }
    }

    pub(crate) fn from_echelon(ech: &Echelon) -> Self {
        let (basis, pivots) = ech.to_rref();
        Subspace { ambient_dim: ech.ncols(), basis, pivots }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    pub fn basis(&self) -> &RationalMatrix {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn basis_vectors(&self) -> &[SparseVec] {
        self.basis.rows()
    }

    /// Component of `v` outside the span, in the coordinates of the non-pivot columns.
    fn residue(&self, v: &SparseVec) -> SparseVec {
        let mut r = v.clone();
        for (row, &p) in self.basis.rows().iter().zip(&self.pivots) {
            let c = r.get(p);
            if !c.is_zero() {
                r = r.add_scaled(&-c, row);
            }
        }
        r
    }

    pub fn contains_sparse(&self, v: &SparseVec) -> Result<bool> {
        if let Some(c) = v.max_col() {
            if c >= self.ambient_dim {
                return Err(Error::DimensionMismatch { expected: self.ambient_dim, found: c + 1 });
            }
        }
        Ok(self.residue(v).is_zero())
    }

    pub fn contains(&self, v: &[Rational]) -> Result<bool> {
        membership(self, v)
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> Result<bool> {
        if self.ambient_dim != other.ambient_dim {
            return Err(Error::DimensionMismatch { expected: other.ambient_dim, found: self.ambient_dim });
        }
        for row in self.basis.rows() {
            if !other.contains_sparse(row)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Coordinates of `v` in the basis rows, if `v` lies in the span.
    pub fn coordinates(&self, v: &SparseVec) -> Result<Option<Vec<Rational>>> {
        if !self.contains_sparse(v)? {
            return Ok(None);
        }
        // The basis is reduced, so the coordinate on row i is v[pivot_i].
        Ok(Some(self.pivots.iter().map(|&p| v.get(p)).collect()))
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        if self.ambient_dim != other.ambient_dim {
            return Err(Error::DimensionMismatch { expected: self.ambient_dim, found: other.ambient_dim });
        }
        let rows = self.basis.rows().iter().chain(other.basis.rows()).cloned().collect();
        Subspace::from_vectors(self.ambient_dim, rows)
    }
}

/// True iff `v` lies in `s`; errors if `v` has the wrong length.
pub fn membership(s: &Subspace, v: &[Rational]) -> Result<bool> {
    if v.len() != s.ambient_dim {
        return Err(Error::DimensionMismatch { expected: s.ambient_dim, found: v.len() });
    }
    s.contains_sparse(&SparseVec::from_dense(v))
}

/// Exact inverse of a square matrix by Gauss-Jordan elimination.
pub fn inverse(m: &RationalMatrix) -> Result<RationalMatrix> {
    let n = m.nrows();
    if m.ncols() != n {
        return Err(Error::DimensionMismatch { expected: n, found: m.ncols() });
    }
    // Row-reduce [m | I]; m is invertible iff the left block reduces to I.
    let aug: Vec<SparseVec> = m
        .rows()
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut e: Vec<(usize, Rational)> = row.iter().map(|(c, v)| (c, v.clone())).collect();
            e.push((n + i, Rational::one()));
            SparseVec::from_entries(e)
        })
        .collect();
    let r = rref(&RationalMatrix::from_rows(2 * n, aug)?);
    if r.rank < n || r.pivot_cols[..n] != (0..n).collect::<Vec<_>>()[..] {
        return Err(Error::Singular);
    }
    let rows = r.reduced.rows().iter().map(|row| {
        SparseVec::from_entries(row.iter().filter(|(c, _)| *c >= n).map(|(c, v)| (c - n, v.clone())).collect())
    });
    RationalMatrix::from_rows(n, rows.collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn rref_proportional_rows() {
        let r = rref(&RationalMatrix::from_i64(&[&[1, 2], &[2, 4]]));
        assert_eq!(r.rank, 1);
        assert_eq!(r.reduced, RationalMatrix::from_i64(&[&[1, 2]]));
        assert_eq!(r.pivot_cols, vec![0]);
    }

    #[test]
    fn rref_identity() {
        let r = rref(&RationalMatrix::identity(3));
        assert_eq!(r.rank, 3);
        assert_eq!(r.reduced, RationalMatrix::identity(3));
    }

    #[test]
    fn rref_half_entries() {
        // [[1/2, 1], [1, 3]]: R2 - 2 R1 = [0, 1], full rank.
        let m = RationalMatrix::from_dense(&[vec![q(1, 2), q(1, 1)], vec![q(1, 1), q(3, 1)]]).unwrap();
        let r = rref(&m);
        assert_eq!(r.rank, 2);
        assert_eq!(r.reduced, RationalMatrix::identity(2));
    }

    #[test]
    fn rref_empty() {
        let r = rref(&RationalMatrix::zeros(0, 3));
        assert_eq!(r.rank, 0);
        assert_eq!(r.reduced.nrows(), 0);
    }

    #[test]
    fn kernel_single_equation() {
        let k = kernel_basis(&RationalMatrix::from_i64(&[&[1, 1]]));
        assert_eq!(k.dim(), 1);
        assert!(k.contains(&[q(1, 1), q(-1, 1)]).unwrap());
    }

    #[test]
    fn kernel_of_identity_is_zero() {
        assert_eq!(kernel_basis(&RationalMatrix::identity(4)).dim(), 0);
    }

    #[test]
    fn kernel_rank_one() {
        let m = RationalMatrix::from_i64(&[&[1, 2, 3], &[2, 4, 6]]);
        let k = kernel_basis(&m);
        assert_eq!(k.dim(), 2);
        for v in k.basis_vectors() {
            let prod = m.mul_vec(&v.to_dense(3)).unwrap();
            assert!(prod.iter().all(Rational::is_zero));
        }
    }

    #[test]
    fn membership_examples() {
        let s = Subspace::from_dense(2, &[vec![q(1, 1), q(0, 1)]]).unwrap();
        assert!(membership(&s, &[q(2, 1), q(0, 1)]).unwrap());
        assert!(!membership(&s, &[q(0, 1), q(1, 1)]).unwrap());
        let s2 = Subspace::from_dense(2, &[vec![q(1, 1), q(1, 1)], vec![q(0, 1), q(2, 1)]]).unwrap();
        assert!(membership(&s2, &[q(3, 1), q(5, 1)]).unwrap());
    }

    #[test]
    fn membership_dimension_mismatch() {
        let s = Subspace::zero(3);
        assert!(matches!(membership(&s, &[q(1, 1)]), Err(Error::DimensionMismatch { expected: 3, found: 1 })));
    }

    #[test]
    fn inverse_roundtrip_and_singular() {
        let m = RationalMatrix::from_i64(&[&[1, 1], &[0, 1]]);
        let inv = inverse(&m).unwrap();
        assert_eq!(inv, RationalMatrix::from_i64(&[&[1, -1], &[0, 1]]));
        assert_eq!(m.mul(&inv).unwrap(), RationalMatrix::identity(2));
        assert_eq!(inverse(&RationalMatrix::from_i64(&[&[1, 2], &[2, 4]])), Err(Error::Singular));
    }

    #[test]
    fn kron_shape_and_values() {
        let a = RationalMatrix::from_i64(&[&[1, 2]]);
        let b = RationalMatrix::from_i64(&[&[0], &[3]]);
        let k = a.kron(&b);
        assert_eq!(k, RationalMatrix::from_i64(&[&[0, 0], &[3, 6]]));
    }
}
