use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{Rational, RationalMatrix, SparseVec};

const NO_PIVOT: u32 = u32::MAX;

/// Incrementally maintained row-echelon basis.
///
/// Each stored row has leading coefficient 1 at a column no other stored row
/// leads with. Rows are only top-reduced on insertion; [`Echelon::reduce`]
/// performs full reduction, which terminates because every pivot row only
/// carries columns to the right of its pivot.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Echelon {
    ncols: usize,
    rows: Vec<SparseVec>,
    pivot_of: Vec<u32>,
}

impl Echelon {
    pub fn new(ncols: usize) -> Self {
        Echelon { ncols, rows: Vec::new(), pivot_of: vec![NO_PIVOT; ncols] }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.pivot_of[col] != NO_PIVOT
    }

    pub fn pivot_row(&self, col: usize) -> Option<&SparseVec> {
        match self.pivot_of[col] {
            NO_PIVOT => None,
            r => Some(&self.rows[r as usize]),
        }
    }

    pub fn pivot_cols(&self) -> Vec<usize> {
        let mut p: Vec<usize> = self.rows.iter().map(|r| r.leading().unwrap().0).collect();
        p.sort_unstable();
        p
    }

    /// Adds a vector to the span. Returns `true` if the rank grew.
    pub fn insert(&mut self, mut v: SparseVec) -> bool {
        loop {
            let Some((lead, coeff)) = v.leading() else {
                return false;
            };
            match self.pivot_of[lead] {
                NO_PIVOT => {
                    let inv = coeff.recip().unwrap();
                    let v = if inv.is_one() { v } else { v.scaled(&inv) };
                    self.pivot_of[lead] = self.rows.len() as u32;
                    self.rows.push(v);
                    return true;
                }
                r => {
                    let c = -coeff;
                    v = v.add_scaled(&c, &self.rows[r as usize]);
                }
            }
        }
    }

    /// The unique representative of `v` modulo the span with no pivot columns.
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        if v.iter().all(|(c, _)| !self.is_pivot(c)) {
            return v.clone();
        }
        let mut work: BTreeMap<usize, Rational> = v.iter().map(|(c, x)| (c, x.clone())).collect();
        let mut out = Vec::new();
        while let Some((col, coeff)) = work.pop_first() {
            match self.pivot_of[col] {
                NO_PIVOT => out.push((col, coeff)),
                r => {
                    for (c, x) in self.rows[r as usize].iter().skip(1) {
                        let delta = &coeff * x;
                        match work.entry(c) {
                            std::collections::btree_map::Entry::Vacant(e) => {
                                e.insert(-delta);
                            }
                            std::collections::btree_map::Entry::Occupied(mut e) => {
                                *e.get_mut() -= &delta;
                                if e.get().is_zero() {
                                    e.remove();
                                }
                            }
                        }
                    }
                }
            }
        }
        SparseVec::from_sorted_unchecked(out)
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).is_zero()
    }

    /// Back-substitutes to the reduced row-echelon form, rows sorted by pivot.
    pub fn to_rref(&self) -> (RationalMatrix, Vec<usize>) {
        let pivots = self.pivot_cols();
        let mut reduced: Vec<Option<SparseVec>> = vec![None; self.ncols];
        // Right-most pivots first, so each row only needs already-reduced rows.
        for &p in pivots.iter().rev() {
            let row = self.pivot_row(p).unwrap();
            let mut work: BTreeMap<usize, Rational> = row.iter().skip(1).map(|(c, x)| (c, x.clone())).collect();
            let mut out = vec![(p, Rational::one())];
            while let Some((col, coeff)) = work.pop_first() {
                match &reduced[col] {
                    None => out.push((col, coeff)),
                    Some(prow) => {
                        for (c, x) in prow.iter().skip(1) {
                            let e = work.entry(c).or_insert_with(Rational::zero);
                            *e -= &(&coeff * x);
                            if e.is_zero() {
                                work.remove(&c);
                            }
                        }
                    }
                }
            }
            reduced[p] = Some(SparseVec::from_sorted_unchecked(out));
        }
        let rows: Vec<SparseVec> = pivots.iter().map(|&p| reduced[p].take().unwrap()).collect();
        (RationalMatrix::from_rows(self.ncols, rows).unwrap(), pivots)
    }
}
