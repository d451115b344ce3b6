//! Linear algebra over `Z/p^e Z`: solving through the Smith normal form and
//! an incremental echelon basis (Howell form) for span membership.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use super::matrix::IntMatrix;
use super::primes::PrimePowerModulus;
use super::snf::smith_normal_form;
use crate::error::{Error, Result};

/// Some `x` with `A x ≡ b (mod q)`, entries in `[0, q)`, or `None`.
///
/// With `M A N = S`, the system becomes `S x' ≡ M b` for `x = N x'`, which
/// splits into independent congruences `s_i x'_i ≡ c_i`.
pub fn solve_mod_prime_power(
    a: &IntMatrix,
    b: &[BigInt],
    q: PrimePowerModulus,
) -> Result<Option<Vec<u64>>> {
    if b.len() != a.rows() {
        return Err(Error::DimensionMismatch {
            expected: a.rows(),
            found: b.len(),
        });
    }
    let snf = smith_normal_form(a);
    let c = snf.left.mul_vec(b)?;
    let diag = snf.invariant_factors();
    let mut x_prime = vec![BigInt::zero(); a.cols()];
    for (i, ci) in c.iter().enumerate() {
        let ci = q.reduce(ci);
        let si = diag.get(i).map_or(0, |d| q.reduce(d));
        if si == 0 {
            if ci != 0 {
                return Ok(None);
            }
            continue;
        }
        let g = si.gcd(&q.q);
        if ci % g != 0 {
            return Ok(None);
        }
        let sub = PrimePowerModulus::new(q.q / g).ok();
        x_prime[i] = BigInt::from(match sub {
            // q / g == 1: any value works
            None => 0,
            Some(m) => m.mul(ci / g, m.inverse((si / g) % m.q).expect("unit after dividing by gcd")),
        });
    }
    let x = snf.right.mul_vec(&x_prime)?;
    Ok(Some(x.iter().map(|v| q.reduce(v)).collect()))
}

/// Incrementally maintained Howell-form basis of a submodule of `(Z/qZ)^cols`.
///
/// Rows are kept in echelon form, one per pivot column, with pivot a power of
/// `p`. Whenever a row with pivot `p^v` is added, its multiple by `p^(e-v)`
/// (which vanishes at the pivot) is inserted as well, so reduction decides
/// membership exactly.
#[derive(Debug, Clone)]
pub struct ModuleBasis {
    q: PrimePowerModulus,
    cols: usize,
    rows: BTreeMap<usize, (u32, Vec<u64>)>,
}

impl ModuleBasis {
    pub fn new(q: PrimePowerModulus, cols: usize) -> Self {
        ModuleBasis {
            q,
            cols,
            rows: BTreeMap::new(),
        }
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Number of echelon rows (at most `exp * cols`).
    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Reduces `w` in place; returns the first column that could not be
    /// cleared, or `None` when `w` reduced to zero.
    fn reduce(&self, w: &mut [u64]) -> Option<usize> {
        let q = self.q;
        for col in 0..self.cols {
            if w[col] == 0 {
                continue;
            }
            let Some((v, row)) = self.rows.get(&col) else {
                return Some(col);
            };
            if q.valuation(w[col]) < *v {
                return Some(col);
            }
            let f = w[col] / q.pow_p(*v);
            for j in col..self.cols {
                w[j] = q.sub(w[j], q.mul(f, row[j]));
            }
        }
        None
    }

    pub fn contains(&self, w: &[u64]) -> bool {
        let mut w: Vec<u64> = w.iter().map(|&x| x % self.q.q).collect();
        self.reduce(&mut w).is_none()
    }

    /// Adds `w` to the spanning set; returns `false` if it was already in the span.
    pub fn insert(&mut self, w: &[u64]) -> bool {
        assert_eq!(w.len(), self.cols, "row length must match basis width");
        let w: Vec<u64> = w.iter().map(|&x| x % self.q.q).collect();
        let mut pending = vec![w];
        let mut grew = false;
        while let Some(mut w) = pending.pop() {
            let Some(col) = self.reduce(&mut w) else {
                continue;
            };
            grew = true;
            let q = self.q;
            let v = q.valuation(w[col]);
            let unit = w[col] / q.pow_p(v);
            let inv = q.inverse(unit).expect("unit part is invertible");
            for x in w.iter_mut() {
                *x = q.mul(*x, inv);
            }
            if let Some((old_v, old)) = self.rows.remove(&col) {
                // old = p^(old_v - v) * w + d with d vanishing at `col`
                let f = q.pow_p(old_v - v);
                let d: Vec<u64> = old
                    .iter()
                    .zip(&w)
                    .map(|(&o, &x)| q.sub(o, q.mul(f, x)))
                    .collect();
                pending.push(d);
            }
            let ann = q.pow_p(q.exp - v);
            let killed: Vec<u64> = w.iter().map(|&x| q.mul(ann, x)).collect();
            self.rows.insert(col, (v, w));
            pending.push(killed);
        }
        grew
    }
}

/// Greedy keep-first selection: row `i` is kept iff it is not in the
/// `Z/qZ`-span of the rows kept before it. Returns kept indices in order.
pub fn modq_row_basis(rows: &[Vec<u64>], q: PrimePowerModulus) -> Vec<usize> {
    let Some(first) = rows.first() else {
        return Vec::new();
    };
    let mut basis = ModuleBasis::new(q, first.len());
    rows.iter()
        .enumerate()
        .filter_map(|(i, r)| basis.insert(r).then_some(i))
        .collect()
}
