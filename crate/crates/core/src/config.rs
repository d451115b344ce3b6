//! Working limits for the exact pipelines.
//!
//! Every enumeration in this crate is exponential in some arity or variable
//! count, so the caps live in one place. `Limits::from_env` reads the
//! `CSPK_MAX_ARITY` and `CSPK_ORACLE_BUDGET` overrides.

use crate::error::{Error, Result};

/// Absolute ceiling on relation arity; bit sets hold `2^arity` entries.
pub const HARD_MAX_ARITY: usize = 16;

pub const DEFAULT_MAX_ARITY: usize = 8;

/// Cone-definition searches enumerate `(2m+2)^n` tuples; beyond this source
/// arity the search reports a capped result instead.
pub const DEFAULT_CONE_SOURCE_ARITY: usize = 6;

pub const DEFAULT_EQUIVALENCE_BUDGET: u64 = 1 << 20;
pub const DEFAULT_SATISFIABILITY_BUDGET: u64 = 1 << 24;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub max_arity: usize,
    pub cone_source_arity: usize,
    pub equivalence_budget: u64,
    pub satisfiability_budget: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_arity: DEFAULT_MAX_ARITY,
            cone_source_arity: DEFAULT_CONE_SOURCE_ARITY,
            equivalence_budget: DEFAULT_EQUIVALENCE_BUDGET,
            satisfiability_budget: DEFAULT_SATISFIABILITY_BUDGET,
        }
    }
}

impl Limits {
    pub fn from_env() -> Result<Self> {
        let mut limits = Limits::default();
        if let Ok(raw) = std::env::var("CSPK_MAX_ARITY") {
            let arity: usize = raw
                .trim()
                .parse()
                .map_err(|_| Error::Precondition(format!("CSPK_MAX_ARITY is not an integer: {raw}")))?;
            if arity == 0 || arity > HARD_MAX_ARITY {
                return Err(Error::ArityOutOfRange {
                    arity,
                    max: HARD_MAX_ARITY,
                });
            }
            limits.max_arity = arity;
        }
        if let Ok(raw) = std::env::var("CSPK_ORACLE_BUDGET") {
            let budget: u64 = raw.trim().parse().map_err(|_| {
                Error::Precondition(format!("CSPK_ORACLE_BUDGET is not an integer: {raw}"))
            })?;
            limits.equivalence_budget = budget;
            limits.satisfiability_budget = budget;
        }
        Ok(limits)
    }
}
