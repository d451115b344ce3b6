//! Prime powers and trial-division factoring for desk-scale integers.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

/// `q = p^exp` with `p` prime and `exp >= 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct PrimePowerModulus {
    pub p: u64,
    pub exp: u32,
    pub q: u64,
}

impl PrimePowerModulus {
    pub fn new(q: u64) -> Result<Self> {
        if q < 2 {
            return Err(Error::NotPrimePower(q));
        }
        let p = smallest_prime_factor(q);
        let mut rest = q;
        let mut exp = 0;
        while rest % p == 0 {
            rest /= p;
            exp += 1;
        }
        if rest != 1 {
            return Err(Error::NotPrimePower(q));
        }
        Ok(PrimePowerModulus { p, exp, q })
    }

    pub fn from_parts(p: u64, exp: u32) -> Result<Self> {
        if !is_prime(p) || exp == 0 {
            return Err(Error::NotPrimePower(p));
        }
        let q = p
            .checked_pow(exp)
            .ok_or_else(|| Error::Precondition(format!("{p}^{exp} overflows u64")))?;
        Ok(PrimePowerModulus { p, exp, q })
    }

    /// Canonical representative in `[0, q)`.
    pub fn reduce(&self, v: &BigInt) -> u64 {
        v.mod_floor(&BigInt::from(self.q))
            .to_u64()
            .expect("residue below q fits in u64")
    }

    pub fn reduce_i64(&self, v: i64) -> u64 {
        v.rem_euclid(self.q as i64) as u64
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        ((a as u128 + b as u128) % self.q as u128) as u64
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        self.add(a, self.q - b % self.q)
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.q as u128) as u64
    }

    /// Exponent of `p` in a nonzero residue (always below `exp`).
    pub fn valuation(&self, mut a: u64) -> u32 {
        debug_assert!(a % self.q != 0);
        let mut v = 0;
        while a % self.p == 0 {
            a /= self.p;
            v += 1;
        }
        v
    }

    /// Inverse of a unit modulo `q`.
    pub fn inverse(&self, a: u64) -> Option<u64> {
        let g = BigInt::from(a).extended_gcd(&BigInt::from(self.q));
        if !g.gcd.is_one() {
            return None;
        }
        Some(self.reduce(&g.x))
    }

    pub fn pow_p(&self, e: u32) -> u64 {
        self.p.pow(e)
    }
}

impl fmt::Display for PrimePowerModulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.q)
    }
}

fn smallest_prime_factor(n: u64) -> u64 {
    if n % 2 == 0 {
        return 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n % d == 0 {
            return d;
        }
        d += 2;
    }
    n
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && smallest_prime_factor(n) == n
}

/// Prime factorization of `|n|` by trial division; empty for 0 and ±1.
pub fn factorize(n: &BigInt) -> Vec<(u64, u32)> {
    let mut n = n.abs();
    let mut out = Vec::new();
    if n.is_zero() {
        return out;
    }
    let mut d: u64 = 2;
    while BigInt::from(d) * BigInt::from(d) <= n {
        let bd = BigInt::from(d);
        let mut e = 0;
        while n.is_multiple_of(&bd) {
            n /= &bd;
            e += 1;
        }
        if e > 0 {
            out.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > BigInt::one() {
        out.push((n.to_u64().expect("desk-scale factor"), 1));
    }
    out
}

/// Exponent of prime `p` in `n`; `None` when `n == 0`.
pub fn valuation(n: &BigInt, p: u64) -> Option<u32> {
    if n.is_zero() {
        return None;
    }
    let bp = BigInt::from(p);
    let mut n = n.abs();
    let mut e = 0;
    while n.is_multiple_of(&bp) {
        n /= &bp;
        e += 1;
    }
    Some(e)
}

/// Prime powers `2, 3, 4, 5, 7, 8, 9, ...` up to `limit` inclusive.
pub fn prime_powers_up_to(limit: u64) -> Vec<PrimePowerModulus> {
    (2..=limit).filter_map(|q| PrimePowerModulus::new(q).ok()).collect()
}

/// Smallest prime power that does not divide the nonzero integer `n`.
pub fn smallest_non_dividing_prime_power(n: &BigInt) -> PrimePowerModulus {
    debug_assert!(!n.is_zero());
    let mut q = 2u64;
    loop {
        if let Ok(m) = PrimePowerModulus::new(q) {
            if !n.is_multiple_of(&BigInt::from(q)) {
                return m;
            }
        }
        q += 1;
    }
}
