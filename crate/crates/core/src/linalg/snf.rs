//! Smith normal form over the integers with unimodular transforms.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::matrix::IntMatrix;

/// `left * A * right = diagonal`, with `left_inv`/`right_inv` the integer
/// inverses of the transforms.
#[derive(Debug, Clone)]
pub struct SnfResult {
    pub diagonal: IntMatrix,
    pub left: IntMatrix,
    pub left_inv: IntMatrix,
    pub right: IntMatrix,
    pub right_inv: IntMatrix,
}

impl SnfResult {
    /// Number of nonzero diagonal entries.
    pub fn rank(&self) -> usize {
        self.diagonal
            .diagonal()
            .iter()
            .take_while(|d| !d.is_zero())
            .count()
    }

    pub fn invariant_factors(&self) -> Vec<BigInt> {
        self.diagonal.diagonal()
    }
}

struct SnfCalc {
    s: IntMatrix,
    left: IntMatrix,
    left_inv: IntMatrix,
    right: IntMatrix,
    right_inv: IntMatrix,
}

impl SnfCalc {
    fn swap_rows(&mut self, a: usize, b: usize) {
        self.s.swap_rows(a, b);
        self.left.swap_rows(a, b);
        self.left_inv.swap_cols(a, b);
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        self.s.swap_cols(a, b);
        self.right.swap_cols(a, b);
        self.right_inv.swap_rows(a, b);
    }

    /// `row[dst] += f * row[src]`
    fn add_row(&mut self, dst: usize, src: usize, f: &BigInt) {
        self.s.add_row_multiple(dst, src, f);
        self.left.add_row_multiple(dst, src, f);
        self.left_inv.add_col_multiple(src, dst, &-f);
    }

    /// `col[dst] += f * col[src]`
    fn add_col(&mut self, dst: usize, src: usize, f: &BigInt) {
        self.s.add_col_multiple(dst, src, f);
        self.right.add_col_multiple(dst, src, f);
        self.right_inv.add_row_multiple(src, dst, &-f);
    }

    fn negate_row(&mut self, i: usize) {
        self.s.negate_row(i);
        self.left.negate_row(i);
        self.left_inv.negate_col(i);
    }

    /// Smallest nonzero absolute value in the trailing block, ties by lowest (row, col).
    fn pivot(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in t..self.s.rows() {
            for j in t..self.s.cols() {
                let v = &self.s[(i, j)];
                if v.is_zero() {
                    continue;
                }
                match best {
                    Some((bi, bj)) if self.s[(bi, bj)].abs() <= v.abs() => {}
                    _ => best = Some((i, j)),
                }
            }
        }
        best
    }

    fn run(&mut self) {
        let (m, n) = (self.s.rows(), self.s.cols());
        for t in 0..m.min(n) {
            loop {
                let Some((pi, pj)) = self.pivot(t) else {
                    return;
                };
                self.swap_rows(t, pi);
                self.swap_cols(t, pj);

                let mut clean = true;
                for i in t + 1..m {
                    if self.s[(i, t)].is_zero() {
                        continue;
                    }
                    let q = self.s[(i, t)].div_floor(&self.s[(t, t)]);
                    self.add_row(i, t, &-q);
                    if !self.s[(i, t)].is_zero() {
                        clean = false;
                    }
                }
                for j in t + 1..n {
                    if self.s[(t, j)].is_zero() {
                        continue;
                    }
                    let q = self.s[(t, j)].div_floor(&self.s[(t, t)]);
                    self.add_col(j, t, &-q);
                    if !self.s[(t, j)].is_zero() {
                        clean = false;
                    }
                }
                if !clean {
                    continue;
                }
                // divisibility: fold an offending row into the pivot row and retry
                let offending = (t + 1..m).find(|&i| {
                    (t + 1..n).any(|j| !self.s[(i, j)].is_multiple_of(&self.s[(t, t)]))
                });
                if let Some(i) = offending {
                    self.add_row(t, i, &BigInt::from(1));
                    continue;
                }
                if self.s[(t, t)].is_negative() {
                    self.negate_row(t);
                }
                break;
            }
        }
    }
}

/// Computes the Smith normal form of `a`. Deterministic for a fixed input.
pub fn smith_normal_form(a: &IntMatrix) -> SnfResult {
    let mut calc = SnfCalc {
        s: a.clone(),
        left: IntMatrix::identity(a.rows()),
        left_inv: IntMatrix::identity(a.rows()),
        right: IntMatrix::identity(a.cols()),
        right_inv: IntMatrix::identity(a.cols()),
    };
    calc.run();
    SnfResult {
        diagonal: calc.s,
        left: calc.left,
        left_inv: calc.left_inv,
        right: calc.right,
        right_inv: calc.right_inv,
    }
}
