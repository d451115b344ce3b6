//! Integer span membership through the Smith normal form, and the prime-power
//! moduli that separate a vector from an integer lattice.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::IntMatrix;
use super::primes::{self, PrimePowerModulus};
use super::snf::{smith_normal_form, SnfResult};
use crate::error::{Error, Result};

fn check_len(rows: &IntMatrix, u: &[BigInt]) -> Result<()> {
    if u.len() != rows.cols() {
        return Err(Error::DimensionMismatch {
            expected: rows.cols(),
            found: u.len(),
        });
    }
    Ok(())
}

/// `u * right`, the target in the diagonalized coordinates.
fn transformed_target(snf: &SnfResult, u: &[BigInt]) -> Vec<BigInt> {
    snf.right.left_mul_vec(u).expect("dimensions checked")
}

/// Solves `y * rows = u` over the integers, or `None` when `u` is outside the
/// integer row span. Free coordinates are set to zero and the result is then
/// shortened in L1 norm against the left kernel.
pub fn integer_span_solution(rows: &IntMatrix, u: &[BigInt]) -> Result<Option<Vec<BigInt>>> {
    check_len(rows, u)?;
    let snf = smith_normal_form(rows);
    let target = transformed_target(&snf, u);
    let diag = snf.invariant_factors();
    let mut y_prime = vec![BigInt::zero(); rows.rows()];
    for (j, t) in target.iter().enumerate() {
        match diag.get(j) {
            Some(d) if !d.is_zero() => {
                let (quot, rem) = t.div_rem(d);
                if !rem.is_zero() {
                    return Ok(None);
                }
                y_prime[j] = quot;
            }
            _ => {
                if !t.is_zero() {
                    return Ok(None);
                }
            }
        }
    }
    let mut y = snf.left.left_mul_vec(&y_prime)?;
    let kernel: Vec<Vec<BigInt>> = (snf.rank()..rows.rows())
        .map(|i| snf.left.row(i).to_vec())
        .collect();
    shorten(&mut y, &kernel);
    Ok(Some(y))
}

fn l1(v: &[BigInt]) -> BigInt {
    v.iter().map(|x| x.abs()).sum()
}

/// Greedy L1 descent: add or subtract kernel vectors while that strictly
/// shrinks the coefficient vector.
fn shorten(y: &mut [BigInt], kernel: &[Vec<BigInt>]) {
    if kernel.is_empty() {
        return;
    }
    let mut best = l1(y);
    loop {
        let mut improved = false;
        for k in kernel {
            for sign in [1i32, -1] {
                let cand: Vec<BigInt> = y.iter().zip(k).map(|(a, b)| a + b * sign).collect();
                let norm = l1(&cand);
                if norm < best {
                    best = norm;
                    y.clone_from_slice(&cand);
                    improved = true;
                }
            }
        }
        if !improved {
            return;
        }
    }
}

fn extend_rows(rows: &IntMatrix) -> IntMatrix {
    IntMatrix::from_rows(
        rows.to_rows()
            .into_iter()
            .map(|r| std::iter::once(BigInt::one()).chain(r).collect())
            .collect(),
    )
    .expect("nonempty")
}

fn extend(u: &[BigInt]) -> Vec<BigInt> {
    std::iter::once(BigInt::one()).chain(u.iter().cloned()).collect()
}

/// Integer coefficients `g` with `sum(g) = 1` and `sum(g_i * row_i) = u`, if any.
pub fn integer_affine_member(rows: &IntMatrix, u: &[BigInt]) -> Result<Option<Vec<BigInt>>> {
    check_len(rows, u)?;
    integer_span_solution(&extend_rows(rows), &extend(u))
}

/// Same as [`integer_affine_member`] but over an explicit list of rows, which
/// may be empty (no affine combination exists then).
pub fn integer_affine_member_rows(rows: &[Vec<BigInt>], u: &[BigInt]) -> Result<Option<Vec<BigInt>>> {
    if rows.is_empty() {
        return Ok(None);
    }
    integer_affine_member(&IntMatrix::from_rows(rows.to_vec())?, u)
}

/// Smallest prime power `q` under which `u` leaves the row span of `rows` modulo `q`.
///
/// Candidates come from the diagonalized system: a coordinate with zero
/// invariant factor and nonzero target admits any prime power not dividing
/// the target, and a coordinate with nonzero factor `d` not dividing the
/// target `t` admits `p^(v_p(t)+1)` for each prime `p` where that power
/// still divides `d`. Fails when `u` is in the integer span.
pub fn find_separating_prime_power(rows: &IntMatrix, u: &[BigInt]) -> Result<PrimePowerModulus> {
    check_len(rows, u)?;
    let snf = smith_normal_form(rows);
    let target = transformed_target(&snf, u);
    let diag = snf.invariant_factors();
    let mut best: Option<PrimePowerModulus> = None;
    let mut consider = |cand: PrimePowerModulus| {
        if best.map_or(true, |b| cand.q < b.q) {
            best = Some(cand);
        }
    };
    for (j, t) in target.iter().enumerate() {
        if t.is_zero() {
            continue;
        }
        match diag.get(j) {
            Some(d) if !d.is_zero() => {
                if t.is_multiple_of(d) {
                    continue;
                }
                for (p, e_d) in primes::factorize(d) {
                    let e_t = primes::valuation(t, p).expect("t nonzero");
                    if e_t < e_d {
                        consider(PrimePowerModulus::from_parts(p, e_t + 1)?);
                    }
                }
            }
            _ => consider(primes::smallest_non_dividing_prime_power(t)),
        }
    }
    best.ok_or_else(|| Error::Precondition("vector lies in the integer span of the rows".into()))
}

/// Separating prime power for the affine hull: rows and target extended by a
/// leading 1. An empty row set is treated as a single zero row.
pub fn separating_prime_power_affine(rows: &[Vec<BigInt>], u: &[BigInt]) -> Result<PrimePowerModulus> {
    let ext: Vec<Vec<BigInt>> = if rows.is_empty() {
        vec![vec![BigInt::zero(); u.len() + 1]]
    } else {
        rows.iter().map(|r| extend(r)).collect()
    };
    find_separating_prime_power(&IntMatrix::from_rows(ext)?, &extend(u))
}
