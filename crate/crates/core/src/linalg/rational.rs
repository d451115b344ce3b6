//! Exact rational elimination: linear solves and greedy row-basis selection.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};

/// Sparse vector: column index to nonzero value.
pub type SparseRow = BTreeMap<usize, BigRational>;

pub fn to_sparse(dense: &[BigRational]) -> SparseRow {
    dense
        .iter()
        .enumerate()
        .filter(|(_, v)| !v.is_zero())
        .map(|(i, v)| (i, v.clone()))
        .collect()
}

/// Row-reduced basis keyed by pivot column; every stored row has pivot 1.
#[derive(Debug, Clone, Default)]
pub struct RationalBasis {
    rows: BTreeMap<usize, SparseRow>,
}

impl RationalBasis {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, mut w: SparseRow) -> SparseRow {
        let mut cursor = 0;
        loop {
            let Some((&col, coef)) = w.range(cursor..).next() else {
                return w;
            };
            cursor = col + 1;
            let Some(row) = self.rows.get(&col) else {
                continue;
            };
            let f = coef.clone();
            for (&j, v) in row {
                let entry = w.entry(j).or_insert_with(BigRational::zero);
                *entry -= &f * v;
                if entry.is_zero() {
                    w.remove(&j);
                }
            }
        }
    }

    pub fn contains(&self, w: &SparseRow) -> bool {
        self.reduce(w.clone()).is_empty()
    }

    /// Adds `w`; returns `false` if it was already in the span.
    pub fn insert(&mut self, w: SparseRow) -> bool {
        let mut w = self.reduce(w);
        let Some((&pivot, lead)) = w.iter().next() else {
            return false;
        };
        let inv = lead.recip();
        for v in w.values_mut() {
            *v *= &inv;
        }
        // keep earlier rows reduced at the new pivot column
        for row in self.rows.values_mut() {
            if let Some(f) = row.get(&pivot).cloned() {
                for (&j, v) in &w {
                    let entry = row.entry(j).or_insert_with(BigRational::zero);
                    *entry -= &f * v;
                    if entry.is_zero() {
                        row.remove(&j);
                    }
                }
            }
        }
        self.rows.insert(pivot, w);
        true
    }
}

/// Greedy keep-first selection over the rationals: row `i` is kept iff it is
/// not in the span of the rows kept before it.
pub fn rational_row_basis(rows: &[SparseRow]) -> Vec<usize> {
    let mut basis = RationalBasis::new();
    rows.iter()
        .enumerate()
        .filter_map(|(i, r)| basis.insert(r.clone()).then_some(i))
        .collect()
}

/// Some `x` with `A x = b` over the rationals (free variables set to zero), or `None`.
pub fn solve_rational(a: &[Vec<BigRational>], b: &[BigRational]) -> Result<Option<Vec<BigRational>>> {
    if a.len() != b.len() {
        return Err(Error::DimensionMismatch {
            expected: a.len(),
            found: b.len(),
        });
    }
    let cols = a.first().map_or(0, |r| r.len());
    if let Some(bad) = a.iter().find(|r| r.len() != cols) {
        return Err(Error::DimensionMismatch {
            expected: cols,
            found: bad.len(),
        });
    }
    let mut m: Vec<Vec<BigRational>> = a
        .iter()
        .zip(b)
        .map(|(r, bi)| r.iter().cloned().chain(std::iter::once(bi.clone())).collect())
        .collect();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        let Some(p) = (row..m.len()).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        let inv = m[row][col].recip();
        for v in m[row].iter_mut() {
            *v *= &inv;
        }
        for i in 0..m.len() {
            if i != row && !m[i][col].is_zero() {
                let f = m[i][col].clone();
                for j in col..=cols {
                    let delta = &f * &m[row][j];
                    m[i][j] -= delta;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    if m[row..].iter().any(|r| !r[cols].is_zero()) {
        return Ok(None);
    }
    let mut x = vec![BigRational::zero(); cols];
    for (i, &col) in pivots.iter().enumerate() {
        x[col] = m[i][cols].clone();
    }
    Ok(Some(x))
}
