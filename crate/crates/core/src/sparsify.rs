//! Constraint-subset kernels.
//!
//! For every non-member `u` of a relation, a capturing polynomial `p_u` is
//! instantiated on each constraint, giving one equation per constraint over
//! the instance's monomials. A constraint is kept when its equation is not
//! implied by the equations kept before it (for some `u`). Any assignment
//! satisfying the kept constraints satisfies every kept equation, hence all
//! equations, hence every constraint.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::ToPrimitive;
use serde::Serialize;

use crate::capture::{self, BalanceVerdict, CaptureEntry};
use crate::error::{Error, Result};
use crate::instance::CspInstance;
use crate::linalg::{self, SparseRow};
use crate::poly::{Monomial, MultilinearPolynomial, Ring};
use crate::relation::{BooleanRelation, ConstraintLanguage};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "strategy", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Strategy {
    /// Every tuple is a member; the constraints never fail.
    DropFull,
    /// Affine captures modulo the listed prime powers (one per non-member).
    Degree1 { moduli: Vec<u64> },
    /// Rational captures of degree at most `arity - 1`.
    DegreeKm1,
    /// Exactly one non-member: only exact duplicates are removed.
    DedupOnly,
}

/// Strategy plus the capturing polynomials it will instantiate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationPlan {
    pub strategy: Strategy,
    pub captures: Vec<CaptureEntry>,
}

pub fn plan_relation(rel: &BooleanRelation) -> RelationPlan {
    if rel.is_full() {
        return RelationPlan {
            strategy: Strategy::DropFull,
            captures: Vec::new(),
        };
    }
    if let BalanceVerdict::Balanced(cert) = capture::decide_balanced(rel) {
        return RelationPlan {
            strategy: Strategy::Degree1 { moduli: cert.moduli() },
            captures: cert.entries,
        };
    }
    if rel.non_member_count() >= 2 {
        let captures = rel
            .non_member_tuples()
            .into_iter()
            .map(|u| {
                let polynomial = capture::degree_km1_capture(rel, &u).expect("two non-members");
                CaptureEntry { target: u, polynomial }
            })
            .collect();
        return RelationPlan {
            strategy: Strategy::DegreeKm1,
            captures,
        };
    }
    RelationPlan {
        strategy: Strategy::DedupOnly,
        captures: Vec::new(),
    }
}

pub fn plan_strategy(rel: &BooleanRelation) -> Strategy {
    plan_relation(rel).strategy
}

/// Keeps the constraints (given as position and variable tuple, in input
/// order) whose instantiated equation is independent of the earlier kept
/// ones for at least one capture. Returns kept positions in increasing order.
pub fn reduce_relation_constraints(
    rel: &BooleanRelation,
    constraints: &[(usize, &[usize])],
    num_vars: usize,
    captures: &[CaptureEntry],
) -> Result<Vec<usize>> {
    let mut kept = BTreeSet::new();
    for entry in captures {
        let p = &entry.polynomial;
        if p.arity() > rel.arity() || entry.target.len() != rel.arity() {
            return Err(Error::Precondition(format!(
                "capture for {} has arity {}",
                rel.name(),
                p.arity()
            )));
        }
        let rows: Vec<MultilinearPolynomial> = constraints
            .iter()
            .map(|(_, vars)| p.substitute(vars, num_vars))
            .collect();
        for i in keep_independent(p.ring(), &rows) {
            kept.insert(constraints[i].0);
        }
    }
    Ok(kept.into_iter().collect())
}

/// Greedy keep-first row basis over the ring of the polynomials.
fn keep_independent(ring: Ring, rows: &[MultilinearPolynomial]) -> Vec<usize> {
    // columns: the monomials that occur, in degree-then-lex order
    let columns: BTreeMap<&Monomial, usize> = rows
        .iter()
        .flat_map(|p| p.terms().map(|(m, _)| m))
        .collect::<BTreeSet<_>>()
        .into_iter()
        .enumerate()
        .map(|(i, m)| (m, i))
        .collect();
    match ring {
        Ring::Rationals => {
            let sparse: Vec<SparseRow> = rows
                .iter()
                .map(|p| p.terms().map(|(m, c)| (columns[m], c.clone())).collect())
                .collect();
            linalg::rational_row_basis(&sparse)
        }
        Ring::Mod(q) => {
            let dense: Vec<Vec<u64>> = rows
                .iter()
                .map(|p| {
                    let mut v = vec![0u64; columns.len()];
                    for (m, c) in p.terms() {
                        v[columns[m]] = c.to_integer().to_u64().expect("canonical residue");
                    }
                    v
                })
                .collect();
            linalg::modq_row_basis(&dense, q)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RelationKernel {
    pub relation: String,
    #[serde(flatten)]
    pub strategy: Strategy,
    pub input_constraints: usize,
    pub kept_constraints: usize,
    /// Guaranteed upper bound on `kept_constraints` for this variable count.
    pub size_bound: u64,
    pub captures: Vec<CaptureEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KernelReport {
    pub num_vars: usize,
    pub input_constraints: usize,
    /// Positions (counting from 0) of the kept input constraints.
    pub kept: Vec<usize>,
    pub size_bound: u64,
    pub relations: Vec<RelationKernel>,
    pub notes: Vec<String>,
}

/// Bound on kept constraints of one relation with `n` variables.
pub fn strategy_bound(rel: &BooleanRelation, plan: &RelationPlan, n: usize) -> u64 {
    let n = n as u64;
    let k = rel.arity() as u32;
    match &plan.strategy {
        Strategy::DropFull => 0,
        // each modulus p^e admits at most e * (n + 1) independent affine rows
        Strategy::Degree1 { .. } => plan
            .captures
            .iter()
            .map(|c| match c.polynomial.ring() {
                Ring::Mod(q) => q.exp as u64 * (n + 1),
                Ring::Rationals => n + 1,
            })
            .sum(),
        Strategy::DegreeKm1 => (rel.non_member_count() as u64).saturating_mul(n.saturating_pow(k - 1).saturating_add(1)),
        Strategy::DedupOnly => n.saturating_pow(k),
    }
}

/// Sparsifies `inst`, returning the kernel (a subsequence of the input
/// constraints) and a report of what was done.
pub fn sparsify_instance(lang: &ConstraintLanguage, inst: &CspInstance) -> Result<(CspInstance, KernelReport)> {
    inst.validate(lang)?;
    let mut kept = BTreeSet::new();
    let mut relations = Vec::new();
    let first = inst.first_occurrences();
    for rel in lang.relations() {
        let positions: Vec<(usize, &[usize])> = inst
            .constraints
            .iter()
            .enumerate()
            .filter(|(_, c)| c.relation == rel.name())
            .map(|(i, c)| (i, c.vars.as_slice()))
            .collect();
        let plan = plan_relation(rel);
        let kept_here: Vec<usize> = match plan.strategy {
            Strategy::DropFull => Vec::new(),
            Strategy::DedupOnly => first
                .iter()
                .copied()
                .filter(|&i| inst.constraints[i].relation == rel.name())
                .collect(),
            _ => reduce_relation_constraints(rel, &positions, inst.num_vars, &plan.captures)?,
        };
        relations.push(RelationKernel {
            relation: rel.name().to_string(),
            input_constraints: positions.len(),
            kept_constraints: kept_here.len(),
            size_bound: strategy_bound(rel, &plan, inst.num_vars),
            strategy: plan.strategy,
            captures: plan.captures,
        });
        kept.extend(kept_here);
    }
    let kept: Vec<usize> = kept.into_iter().collect();
    let mut notes = Vec::new();
    let k_max = lang.max_arity();
    for (rel, rk) in lang.relations().iter().zip(&relations) {
        if rel.arity() < k_max && matches!(rk.strategy, Strategy::Degree1 { .. } | Strategy::DegreeKm1) {
            notes.push(format!(
                "{} has arity below {k_max} and is reduced by its own captures, not only deduplicated",
                rel.name()
            ));
        }
    }
    let report = KernelReport {
        num_vars: inst.num_vars,
        input_constraints: inst.len(),
        size_bound: relations.iter().map(|r| r.size_bound).fold(0, u64::saturating_add),
        kept: kept.clone(),
        relations,
        notes,
    };
    Ok((inst.subset(&kept), report))
}
