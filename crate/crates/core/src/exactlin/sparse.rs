use std::fmt;

use serde::{Deserialize, Serialize};

use super::Rational;
use crate::error::{Error, Result};

/// Sparse vector: entries sorted by column, no explicit zeros.
#[derive(Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SparseVec {
    entries: Vec<(usize, Rational)>,
}

impl SparseVec {
    pub fn new() -> Self {
        Self::default()
    }

    /// Accepts entries in any order; duplicate columns are summed.
    pub fn from_entries(mut entries: Vec<(usize, Rational)>) -> Self {
        entries.sort_by_key(|(c, _)| *c);
        let mut out: Vec<(usize, Rational)> = Vec::with_capacity(entries.len());
        for (c, v) in entries {
            match out.last_mut() {
                Some((lc, lv)) if *lc == c => *lv += &v,
                _ => out.push((c, v)),
            }
        }
        out.retain(|(_, v)| !v.is_zero());
        SparseVec { entries: out }
    }

    /// Caller guarantees sorted, distinct columns and no zeros.
    pub(crate) fn from_sorted_unchecked(entries: Vec<(usize, Rational)>) -> Self {
        debug_assert!(entries.windows(2).all(|w| w[0].0 < w[1].0));
        debug_assert!(entries.iter().all(|(_, v)| !v.is_zero()));
        SparseVec { entries }
    }

    pub fn from_dense(values: &[Rational]) -> Self {
        SparseVec {
            entries: values
                .iter()
                .enumerate()
                .filter(|(_, v)| !v.is_zero())
                .map(|(i, v)| (i, v.clone()))
                .collect(),
        }
    }

    pub fn unit(col: usize) -> Self {
        SparseVec { entries: vec![(col, Rational::one())] }
    }

    pub fn to_dense(&self, len: usize) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); len];
        for (c, v) in &self.entries {
            out[*c] = v.clone();
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[(usize, Rational)] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<(usize, Rational)> {
        self.entries
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &Rational)> + '_ {
        self.entries.iter().map(|(c, v)| (*c, v))
    }

    pub fn leading(&self) -> Option<(usize, &Rational)> {
        self.entries.first().map(|(c, v)| (*c, v))
    }

    pub fn max_col(&self) -> Option<usize> {
        self.entries.last().map(|(c, _)| *c)
    }

    pub fn get(&self, col: usize) -> Rational {
        match self.entries.binary_search_by_key(&col, |(c, _)| *c) {
            Ok(i) => self.entries[i].1.clone(),
            Err(_) => Rational::zero(),
        }
    }

    pub fn scaled(&self, c: &Rational) -> SparseVec {
        if c.is_zero() {
            return SparseVec::new();
        }
        SparseVec {
            entries: self.entries.iter().map(|(i, v)| (*i, v * c)).collect(),
        }
    }

    /// `self + c * other`.
    pub fn add_scaled(&self, c: &Rational, other: &SparseVec) -> SparseVec {
        if c.is_zero() {
            return self.clone();
        }
        let (a, b) = (&self.entries, &other.entries);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            let take_a = j == b.len() || (i < a.len() && a[i].0 < b[j].0);
            let take_b = i == a.len() || (j < b.len() && b[j].0 < a[i].0);
            if take_a {
                out.push(a[i].clone());
                i += 1;
            } else if take_b {
                out.push((b[j].0, c * &b[j].1));
                j += 1;
            } else {
                let v = &a[i].1 + &(c * &b[j].1);
                if !v.is_zero() {
                    out.push((a[i].0, v));
                }
                i += 1;
                j += 1;
            }
        }
        SparseVec { entries: out }
    }

    pub fn remap(&self, f: impl Fn(usize) -> usize) -> SparseVec {
        SparseVec::from_entries(self.entries.iter().map(|(c, v)| (f(*c), v.clone())).collect())
    }
}

impl fmt::Debug for SparseVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.entries.iter().map(|(c, v)| (c, v))).finish()
    }
}

/// Exact sparse matrix over the rationals, stored by rows.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<SparseVec>,
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RationalMatrix { rows, cols, data: vec![SparseVec::new(); rows] }
    }

    pub fn identity(n: usize) -> Self {
        RationalMatrix { rows: n, cols: n, data: (0..n).map(SparseVec::unit).collect() }
    }

    pub fn from_rows(cols: usize, data: Vec<SparseVec>) -> Result<Self> {
        for row in &data {
            if let Some(c) = row.max_col() {
                if c >= cols {
                    return Err(Error::DimensionMismatch { expected: cols, found: c + 1 });
                }
            }
        }
        Ok(RationalMatrix { rows: data.len(), cols, data })
    }

    pub fn from_dense(rows: &[Vec<Rational>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch { expected: cols, found: bad.len() });
        }
        Ok(RationalMatrix {
            rows: rows.len(),
            cols,
            data: rows.iter().map(|r| SparseVec::from_dense(r)).collect(),
        })
    }

    /// Convenience constructor for small integer matrices.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let dense: Vec<Vec<Rational>> =
            rows.iter().map(|r| r.iter().map(|&x| Rational::from_int(x)).collect()).collect();
        Self::from_dense(&dense).expect("ragged matrix literal")
    }

    /// Builds from `(row, col, value)` triples; duplicates are summed.
    pub fn from_triplets(rows: usize, cols: usize, triplets: Vec<(usize, usize, Rational)>) -> Result<Self> {
        let mut buckets: Vec<Vec<(usize, Rational)>> = vec![Vec::new(); rows];
        for (r, c, v) in triplets {
            if r >= rows {
                return Err(Error::DimensionMismatch { expected: rows, found: r + 1 });
            }
            if c >= cols {
                return Err(Error::DimensionMismatch { expected: cols, found: c + 1 });
            }
            buckets[r].push((c, v));
        }
        Ok(RationalMatrix {
            rows,
            cols,
            data: buckets.into_iter().map(SparseVec::from_entries).collect(),
        })
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &SparseVec {
        &self.data[i]
    }

    pub fn rows(&self) -> &[SparseVec] {
        &self.data
    }

    pub fn get(&self, r: usize, c: usize) -> Rational {
        self.data[r].get(c)
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(SparseVec::nnz).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(SparseVec::is_zero)
    }

    pub fn to_dense(&self) -> Vec<Vec<Rational>> {
        self.data.iter().map(|r| r.to_dense(self.cols)).collect()
    }

    pub fn transpose(&self) -> RationalMatrix {
        let mut buckets: Vec<Vec<(usize, Rational)>> = vec![Vec::new(); self.cols];
        for (r, row) in self.data.iter().enumerate() {
            for (c, v) in row.iter() {
                buckets[c].push((r, v.clone()));
            }
        }
        RationalMatrix {
            rows: self.cols,
            cols: self.rows,
            data: buckets.into_iter().map(SparseVec::from_sorted_unchecked).collect(),
        }
    }

    /// Matrix product `self * rhs`.
    pub fn mul(&self, rhs: &RationalMatrix) -> Result<RationalMatrix> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch { expected: self.cols, found: rhs.rows });
        }
        let data = self
            .data
            .iter()
            .map(|row| {
                let mut acc: Vec<(usize, Rational)> = Vec::new();
                for (k, a) in row.iter() {
                    for (c, b) in rhs.data[k].iter() {
                        acc.push((c, a * b));
                    }
                }
                SparseVec::from_entries(acc)
            })
            .collect();
        Ok(RationalMatrix { rows: self.rows, cols: rhs.cols, data })
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Result<Vec<Rational>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch { expected: self.cols, found: v.len() });
        }
        Ok(self
            .data
            .iter()
            .map(|row| row.iter().map(|(c, a)| a * &v[c]).sum())
            .collect())
    }

    /// Kronecker product; row and column indices are ordered left factor major.
    pub fn kron(&self, rhs: &RationalMatrix) -> RationalMatrix {
        let rows = self.rows * rhs.rows;
        let cols = self.cols * rhs.cols;
        let mut data = Vec::with_capacity(rows);
        for ra in &self.data {
            for rb in &rhs.data {
                let mut e = Vec::with_capacity(ra.nnz() * rb.nnz());
                for (ca, va) in ra.iter() {
                    for (cb, vb) in rb.iter() {
                        e.push((ca * rhs.cols + cb, va * vb));
                    }
                }
                data.push(SparseVec::from_sorted_unchecked(e));
            }
        }
        RationalMatrix { rows, cols, data }
    }

    pub fn add(&self, rhs: &RationalMatrix) -> Result<RationalMatrix> {
        if (self.rows, self.cols) != (rhs.rows, rhs.cols) {
            return Err(Error::DimensionMismatch { expected: self.rows * self.cols, found: rhs.rows * rhs.cols });
        }
        Ok(RationalMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a.add_scaled(&Rational::one(), b)).collect(),
        })
    }

    pub fn scaled(&self, c: &Rational) -> RationalMatrix {
        RationalMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|r| r.scaled(c)).collect(),
        }
    }

    /// Rows as a single vector, row-major (`r * cols + c`).
    pub fn flatten(&self) -> SparseVec {
        let mut e = Vec::with_capacity(self.nnz());
        for (r, row) in self.data.iter().enumerate() {
            for (c, v) in row.iter() {
                e.push((r * self.cols + c, v.clone()));
            }
        }
        SparseVec::from_sorted_unchecked(e)
    }

    pub fn unflatten(rows: usize, cols: usize, v: &SparseVec) -> Result<RationalMatrix> {
        let t = v.iter().map(|(i, x)| (i / cols, i % cols, x.clone())).collect();
        RationalMatrix::from_triplets(rows, cols, t)
    }
}

impl fmt::Debug for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}x{} [", self.rows, self.cols)?;
        for row in self.to_dense() {
            let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        write!(f, "]")
    }
}
