//! Multilinear polynomials over the rationals or `Z/qZ`.
//!
//! Variables are numbered from 1. Products collapse `x^2 = x`, which is
//! exact on Boolean inputs.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::linalg::PrimePowerModulus;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Ring {
    Rationals,
    Mod(PrimePowerModulus),
}

impl Ring {
    /// Canonical form of a value: unchanged over the rationals, the residue in
    /// `[0, q)` modulo `q` (values must be integral there).
    pub fn normalize(&self, v: &BigRational) -> BigRational {
        match self {
            Ring::Rationals => v.clone(),
            Ring::Mod(q) => {
                assert!(v.is_integer(), "modular coefficient must be integral");
                BigRational::from_integer(BigInt::from(q.reduce(&v.to_integer())))
            }
        }
    }

    pub fn is_zero(&self, v: &BigRational) -> bool {
        self.normalize(v).is_zero()
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ring::Rationals => write!(f, "Q"),
            Ring::Mod(q) => write!(f, "Z/{}", q.q),
        }
    }
}

impl Serialize for Ring {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// A set of variables, ordered by size first and then lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial(Vec<usize>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(i: usize) -> Self {
        Monomial(vec![i])
    }

    pub fn from_vars(vars: impl IntoIterator<Item = usize>) -> Self {
        let mut v: Vec<usize> = vars.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        Monomial(v)
    }

    pub fn vars(&self) -> &[usize] {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn times(&self, other: &Monomial) -> Monomial {
        Monomial::from_vars(self.0.iter().chain(&other.0).copied())
    }

    pub fn eval(&self, point: &[u8]) -> bool {
        self.0.iter().all(|&i| point[i - 1] == 1)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.0.iter().map(|i| format!("x{i}")).collect();
        write!(f, "{}", parts.join("*"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultilinearPolynomial {
    ring: Ring,
    arity: usize,
    coeffs: BTreeMap<Monomial, BigRational>,
}

impl MultilinearPolynomial {
    pub fn zero(ring: Ring, arity: usize) -> Self {
        MultilinearPolynomial {
            ring,
            arity,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn constant(ring: Ring, arity: usize, c: BigRational) -> Self {
        let mut p = Self::zero(ring, arity);
        p.add_term(Monomial::one(), c);
        p
    }

    pub fn from_terms(
        ring: Ring,
        arity: usize,
        terms: impl IntoIterator<Item = (Monomial, BigRational)>,
    ) -> Self {
        let mut p = Self::zero(ring, arity);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    /// Affine form `c_0 + c_1 x_1 + ... + c_k x_k`.
    pub fn affine(ring: Ring, coeffs: &[BigRational]) -> Self {
        let arity = coeffs.len() - 1;
        Self::from_terms(
            ring,
            arity,
            coeffs.iter().enumerate().map(|(i, c)| {
                let m = if i == 0 { Monomial::one() } else { Monomial::var(i) };
                (m, c.clone())
            }),
        )
    }

    pub fn add_term(&mut self, m: Monomial, c: BigRational) {
        debug_assert!(m.vars().iter().all(|&i| 1 <= i && i <= self.arity));
        let entry = self.coeffs.entry(m.clone()).or_insert_with(BigRational::zero);
        *entry = self.ring.normalize(&(&*entry + c));
        if entry.is_zero() {
            self.coeffs.remove(&m);
        }
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.coeffs.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> BigRational {
        self.coeffs.get(m).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Largest monomial size with a nonzero coefficient; 0 for constants and zero.
    pub fn degree(&self) -> usize {
        self.coeffs.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.ring, other.ring);
        let mut out = self.clone();
        out.arity = self.arity.max(other.arity);
        for (m, c) in &other.coeffs {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self::from_terms(
            self.ring,
            self.arity,
            self.coeffs.iter().map(|(m, v)| (m.clone(), v * c)),
        )
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.ring, other.ring);
        let mut out = Self::zero(self.ring, self.arity.max(other.arity));
        for (ma, ca) in &self.coeffs {
            for (mb, cb) in &other.coeffs {
                out.add_term(ma.times(mb), ca * cb);
            }
        }
        out
    }

    /// Value at a 0/1 point, normalized in the ring.
    pub fn eval(&self, point: &[u8]) -> BigRational {
        assert!(point.len() >= self.arity, "point shorter than arity");
        let sum = self
            .coeffs
            .iter()
            .filter(|(m, _)| m.eval(point))
            .fold(BigRational::zero(), |acc, (_, c)| acc + c);
        self.ring.normalize(&sum)
    }

    /// Renames variable `i` to `vars[i - 1]` in a space of `num_vars`
    /// variables; repeated targets collapse through `x^2 = x`.
    pub fn substitute(&self, vars: &[usize], num_vars: usize) -> Self {
        assert!(vars.len() >= self.arity);
        Self::from_terms(
            self.ring,
            num_vars,
            self.coeffs
                .iter()
                .map(|(m, c)| (Monomial::from_vars(m.vars().iter().map(|&i| vars[i - 1])), c.clone())),
        )
    }

    /// Inserts a fresh variable at position `at` (1-based), shifting later ones up.
    pub fn lift(&self, at: usize) -> Self {
        Self::from_terms(
            self.ring,
            self.arity + 1,
            self.coeffs.iter().map(|(m, c)| {
                let vars = m.vars().iter().map(|&i| if i >= at { i + 1 } else { i });
                (Monomial::from_vars(vars), c.clone())
            }),
        )
    }
}

fn fmt_coeff(c: &BigRational) -> String {
    if c.is_integer() {
        c.to_integer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

impl fmt::Display for MultilinearPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        // constant last, as in `x1 + x2 + x3 - 1`
        let mut ordered: Vec<(&Monomial, &BigRational)> =
            self.coeffs.iter().filter(|(m, _)| m.degree() > 0).collect();
        ordered.extend(self.coeffs.iter().filter(|(m, _)| m.degree() == 0));
        for (i, (m, c)) in ordered.into_iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if m.degree() == 0 {
                write!(f, "{}", fmt_coeff(&mag))?;
            } else if mag.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{}*{m}", fmt_coeff(&mag))?;
            }
        }
        Ok(())
    }
}

#[derive(Serialize)]
struct TermOut {
    vars: Vec<usize>,
    coeff: String,
}

impl Serialize for MultilinearPolynomial {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let terms: Vec<TermOut> = self
            .coeffs
            .iter()
            .map(|(m, c)| TermOut {
                vars: m.vars().to_vec(),
                coeff: fmt_coeff(c),
            })
            .collect();
        let mut st = s.serialize_struct("MultilinearPolynomial", 5)?;
        st.serialize_field("ring", &self.ring)?;
        st.serialize_field("arity", &self.arity)?;
        st.serialize_field("degree", &self.degree())?;
        st.serialize_field("text", &self.to_string())?;
        st.serialize_field("terms", &terms)?;
        st.end()
    }
}

pub fn rat(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}
