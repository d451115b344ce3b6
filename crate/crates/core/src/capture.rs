//! Capturing polynomials and balancedness.
//!
//! A polynomial captures a non-member `u` of `R` when it vanishes on every
//! member of `R` and not at `u`. A relation is balanced exactly when every
//! non-member is captured by an affine polynomial over some `Z/qZ`; otherwise
//! some non-member is an integer affine combination of members, which is
//! reported as an alternating sequence.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{self, IntMatrix, PrimePowerModulus};
use crate::poly::{Monomial, MultilinearPolynomial, Ring};
use crate::relation::BooleanRelation;
use crate::tuple::{self, Tuple};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CaptureEntry {
    #[serde(serialize_with = "tuple::serialize_one")]
    pub target: Tuple,
    pub polynomial: MultilinearPolynomial,
}

/// One capturing polynomial per non-member, in lexicographic order of targets.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CaptureCertificate {
    pub relation: String,
    pub entries: Vec<CaptureEntry>,
}

impl CaptureCertificate {
    pub fn get(&self, target: &[u8]) -> Option<&MultilinearPolynomial> {
        self.entries
            .iter()
            .find(|e| e.target == target)
            .map(|e| &e.polynomial)
    }

    /// Largest exponent `e` among the moduli `p^e` used (1 when none are modular).
    pub fn max_modulus_exponent(&self) -> u32 {
        self.entries
            .iter()
            .filter_map(|e| match e.polynomial.ring() {
                Ring::Mod(q) => Some(q.exp),
                Ring::Rationals => None,
            })
            .max()
            .unwrap_or(1)
    }

    pub fn moduli(&self) -> Vec<u64> {
        self.entries
            .iter()
            .filter_map(|e| match e.polynomial.ring() {
                Ring::Mod(q) => Some(q.q),
                Ring::Rationals => None,
            })
            .collect()
    }
}

/// A non-member written as `t1 - t2 + t3 - ... + tm` with every `ti` a member.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct UnbalancedWitness {
    pub relation: String,
    #[serde(serialize_with = "tuple::serialize_one")]
    pub target: Tuple,
    /// Integer coefficients (summing to 1) on `tuples`.
    pub coefficients: Vec<i64>,
    #[serde(serialize_with = "tuple::serialize_many")]
    pub tuples: Vec<Tuple>,
    #[serde(serialize_with = "tuple::serialize_many")]
    pub sequence: Vec<Tuple>,
}

impl UnbalancedWitness {
    /// Coordinatewise alternating sum of `sequence`.
    pub fn alternating_sum(&self) -> Vec<i64> {
        alternating_sum(&self.sequence)
    }
}

pub fn alternating_sum(sequence: &[Tuple]) -> Vec<i64> {
    let k = sequence.first().map_or(0, |t| t.len());
    let mut sum = vec![0i64; k];
    for (i, t) in sequence.iter().enumerate() {
        let sign = if i % 2 == 0 { 1 } else { -1 };
        for (s, &b) in sum.iter_mut().zip(t) {
            *s += sign * b as i64;
        }
    }
    sum
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum BalanceVerdict {
    Balanced(CaptureCertificate),
    Unbalanced(UnbalancedWitness),
}

impl BalanceVerdict {
    pub fn is_balanced(&self) -> bool {
        matches!(self, BalanceVerdict::Balanced(_))
    }

    pub fn witness(&self) -> Option<&UnbalancedWitness> {
        match self {
            BalanceVerdict::Unbalanced(w) => Some(w),
            BalanceVerdict::Balanced(_) => None,
        }
    }

    pub fn certificate(&self) -> Option<&CaptureCertificate> {
        match self {
            BalanceVerdict::Balanced(c) => Some(c),
            BalanceVerdict::Unbalanced(_) => None,
        }
    }
}

fn int_rows(tuples: &[Tuple]) -> Vec<Vec<BigInt>> {
    tuples
        .iter()
        .map(|t| t.iter().map(|&b| BigInt::from(b)).collect())
        .collect()
}

fn int_vec(t: &[u8]) -> Vec<BigInt> {
    t.iter().map(|&b| BigInt::from(b)).collect()
}

/// Expands integer coefficients (summing to 1) into an alternating sequence:
/// each tuple repeated `|g_i|` times, positives and negatives interleaved in
/// index order.
pub fn witness_to_alternating(coefficients: &[BigInt], tuples: &[Tuple]) -> Result<Vec<Tuple>> {
    if coefficients.len() != tuples.len() {
        return Err(Error::DimensionMismatch {
            expected: tuples.len(),
            found: coefficients.len(),
        });
    }
    let total: BigInt = coefficients.iter().sum();
    if !total.is_one() {
        return Err(Error::Precondition(format!("coefficients sum to {total}, not 1")));
    }
    let mut pos = Vec::new();
    let mut neg = Vec::new();
    for (g, t) in coefficients.iter().zip(tuples) {
        let n = g.magnitude().to_usize().expect("desk-scale coefficient");
        let side = if g.sign() == num_bigint::Sign::Minus { &mut neg } else { &mut pos };
        side.extend(std::iter::repeat(t.clone()).take(n));
    }
    debug_assert_eq!(pos.len(), neg.len() + 1);
    let mut seq = Vec::with_capacity(pos.len() + neg.len());
    let mut negs = neg.into_iter();
    for p in pos {
        seq.push(p);
        if let Some(n) = negs.next() {
            seq.push(n);
        }
    }
    Ok(seq)
}

/// Affine capture of `u` over `Z/qZ`: coefficients `a_0..a_k` with
/// `a_0 + sum a_i r_i ≡ 0` on members and `≡ p^j` at `u`, smallest `j` first.
fn affine_capture_mod(members: &[Tuple], u: &[u8], q: PrimePowerModulus) -> Option<MultilinearPolynomial> {
    let ext = |t: &[u8]| -> Vec<BigInt> {
        std::iter::once(BigInt::one()).chain(t.iter().map(|&b| BigInt::from(b))).collect()
    };
    let mut rows: Vec<Vec<BigInt>> = members.iter().map(|t| ext(t)).collect();
    rows.push(ext(u));
    let a = IntMatrix::from_rows(rows).expect("nonempty rows");
    for j in 0..q.exp {
        let mut b = vec![BigInt::zero(); members.len()];
        b.push(BigInt::from(q.pow_p(j)));
        if let Some(x) = linalg::solve_mod_prime_power(&a, &b, q).expect("dimensions agree") {
            let coeffs: Vec<BigRational> = x
                .iter()
                .map(|&v| BigRational::from_integer(BigInt::from(v)))
                .collect();
            return Some(MultilinearPolynomial::affine(Ring::Mod(q), &coeffs));
        }
    }
    None
}

/// Decides whether `rel` is balanced.
///
/// Non-members are scanned in lexicographic order; the first one that is an
/// integer affine combination of members yields the witness. Otherwise every
/// non-member gets an affine capturing polynomial modulo the smallest
/// separating prime power.
pub fn decide_balanced(rel: &BooleanRelation) -> BalanceVerdict {
    let members = rel.member_tuples();
    let member_rows = int_rows(&members);
    let non_members = rel.non_member_tuples();
    for u in &non_members {
        let found = linalg::span::integer_affine_member_rows(&member_rows, &int_vec(u))
            .expect("dimensions agree");
        if let Some(g) = found {
            let (coefficients, tuples): (Vec<BigInt>, Vec<Tuple>) = g
                .into_iter()
                .zip(members.iter().cloned())
                .filter(|(c, _)| !c.is_zero())
                .unzip();
            let sequence = witness_to_alternating(&coefficients, &tuples).expect("affine coefficients sum to 1");
            return BalanceVerdict::Unbalanced(UnbalancedWitness {
                relation: rel.name().to_string(),
                target: u.clone(),
                coefficients: coefficients
                    .iter()
                    .map(|c| c.to_i64().expect("desk-scale coefficient"))
                    .collect(),
                tuples,
                sequence,
            });
        }
    }
    let entries = non_members
        .iter()
        .map(|u| {
            let q = linalg::span::separating_prime_power_affine(&member_rows, &int_vec(u))
                .expect("non-member outside the integer affine hull");
            let polynomial = affine_capture_mod(&members, u, q).expect("separating modulus admits a capture");
            CaptureEntry {
                target: u.clone(),
                polynomial,
            }
        })
        .collect();
    BalanceVerdict::Balanced(CaptureCertificate {
        relation: rel.name().to_string(),
        entries,
    })
}

/// Evaluates `p` at all `2^k` points: zero on every member, nonzero at `u`.
pub fn verify_capture(rel: &BooleanRelation, u: &[u8], p: &MultilinearPolynomial) -> bool {
    if u.len() != rel.arity() || p.arity() > rel.arity() {
        return false;
    }
    if p.eval(u).is_zero() {
        return false;
    }
    rel.member_tuples().iter().all(|r| p.eval(r).is_zero())
}

fn check_target(rel: &BooleanRelation, u: &[u8]) -> Result<()> {
    if u.len() != rel.arity() {
        return Err(Error::DimensionMismatch {
            expected: rel.arity(),
            found: u.len(),
        });
    }
    if u.iter().any(|&b| b > 1) {
        return Err(Error::Precondition("target must be a 0/1 tuple".into()));
    }
    if rel.contains(u) {
        return Err(Error::Precondition(format!(
            "{} is a member of {}",
            tuple::format(u),
            rel.name()
        )));
    }
    Ok(())
}

/// Capturing polynomial of degree at most `k - 1` over the rationals, for
/// relations with at least two non-members.
///
/// With `w` the lexicographically smallest other non-member: if `u` and `w`
/// differ everywhere, `prod_{i<k} (i - sum_j r_j(x_j))` with `r_j` sending
/// `u_j` to 0 and `w_j` to 1 vanishes everywhere except at `u` and `w`.
/// Otherwise fix the first shared coordinate `i`, recurse on the relation
/// restricted to `x_i = u_i`, and multiply by `1 - x_i - u_i`.
pub fn degree_km1_capture(rel: &BooleanRelation, u: &[u8]) -> Result<MultilinearPolynomial> {
    check_target(rel, u)?;
    if rel.non_member_count() < 2 {
        return Err(Error::Precondition(format!(
            "{} has fewer than two non-members",
            rel.name()
        )));
    }
    Ok(km1(rel, u))
}

fn km1(rel: &BooleanRelation, u: &[u8]) -> MultilinearPolynomial {
    let k = rel.arity();
    let one = BigRational::one;
    if k == 1 {
        return MultilinearPolynomial::constant(Ring::Rationals, 1, one());
    }
    let w = rel
        .non_member_tuples()
        .into_iter()
        .find(|t| t != u)
        .expect("second non-member exists");
    match (0..k).find(|&i| u[i] == w[i]) {
        None => {
            // s = sum_j r_j(x_j) as an affine polynomial
            let mut s = vec![BigRational::zero(); k + 1];
            for j in 0..k {
                if u[j] == 0 {
                    s[j + 1] = one();
                } else {
                    s[0] += one();
                    s[j + 1] = -one();
                }
            }
            let s = MultilinearPolynomial::affine(Ring::Rationals, &s);
            (1..k).fold(MultilinearPolynomial::constant(Ring::Rationals, k, one()), |acc, i| {
                let factor = MultilinearPolynomial::constant(Ring::Rationals, k, crate::poly::rat(i as i64))
                    .add(&s.scale(&-one()));
                acc.mul(&factor)
            })
        }
        Some(i) => {
            let sub = rel.restrict(i, u[i]).expect("arity at least 2");
            let mut u_sub = u.to_vec();
            u_sub.remove(i);
            let inner = km1(&sub, &u_sub).lift(i + 1);
            let factor = MultilinearPolynomial::from_terms(
                Ring::Rationals,
                k,
                [
                    (Monomial::one(), one() - crate::poly::rat(u[i] as i64)),
                    (Monomial::var(i + 1), -one()),
                ],
            );
            factor.mul(&inner)
        }
    }
}

/// All monomials of degree at most `d` in `k` variables, in column order.
pub fn monomials_up_to(k: usize, d: usize) -> Vec<Monomial> {
    let mut out: Vec<Monomial> = (0..1usize << k)
        .filter(|m| m.count_ones() as usize <= d)
        .map(|m| Monomial::from_vars((0..k).filter(|i| m >> i & 1 == 1).map(|i| i + 1)))
        .collect();
    out.sort();
    out
}

/// Lowest-degree capturing polynomial over the rationals, normalized to
/// `p(u) = 1`, or `None` if none exists up to degree `d_max`.
pub fn min_degree_capture(rel: &BooleanRelation, u: &[u8], d_max: usize) -> Result<Option<MultilinearPolynomial>> {
    min_degree_capture_in(Ring::Rationals, rel, u, d_max)
}

/// As [`min_degree_capture`], over an explicit ring. Modulo `p^e` the value at
/// `u` is allowed to be any of `1, p, ..., p^(e-1)` (every nonzero residue is a
/// unit multiple of one of these).
pub fn min_degree_capture_in(
    ring: Ring,
    rel: &BooleanRelation,
    u: &[u8],
    d_max: usize,
) -> Result<Option<MultilinearPolynomial>> {
    check_target(rel, u)?;
    let k = rel.arity();
    let mut points = rel.member_tuples();
    points.push(u.to_vec());
    for d in 0..=d_max.min(k) {
        let monos = monomials_up_to(k, d);
        let indicator = |t: &[u8], m: &Monomial| if m.eval(t) { 1i64 } else { 0 };
        let build = |coeffs: Vec<BigRational>| {
            MultilinearPolynomial::from_terms(ring, k, monos.iter().cloned().zip(coeffs))
        };
        match ring {
            Ring::Rationals => {
                let a: Vec<Vec<BigRational>> = points
                    .iter()
                    .map(|t| monos.iter().map(|m| crate::poly::rat(indicator(t, m))).collect())
                    .collect();
                let mut b = vec![BigRational::zero(); points.len() - 1];
                b.push(BigRational::one());
                if let Some(x) = linalg::solve_rational(&a, &b)? {
                    return Ok(Some(build(x)));
                }
            }
            Ring::Mod(q) => {
                let a = IntMatrix::from_rows(
                    points
                        .iter()
                        .map(|t| monos.iter().map(|m| BigInt::from(indicator(t, m))).collect())
                        .collect(),
                )?;
                for j in 0..q.exp {
                    let mut b = vec![BigInt::zero(); points.len() - 1];
                    b.push(BigInt::from(q.pow_p(j)));
                    if let Some(x) = linalg::solve_mod_prime_power(&a, &b, q)? {
                        return Ok(Some(build(
                            x.into_iter()
                                .map(|v| BigRational::from_integer(BigInt::from(v)))
                                .collect(),
                        )));
                    }
                }
            }
        }
    }
    Ok(None)
}
