//! Brute-force ground truth.
//!
//! Nothing here goes through the algebraic code: relations are re-tabulated
//! from their member lists and instances are evaluated assignment by
//! assignment. The property suites lean on this module to check the
//! capture and sparsification pipelines.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::config::Limits;
use crate::error::{Error, Result};
use crate::instance::CspInstance;
use crate::relation::{BooleanRelation, ConstraintLanguage};
use crate::tuple::{self, Tuple};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SatisfiabilityResult {
    pub satisfiable: bool,
    /// Lexicographically first satisfying assignment, variable 1 first.
    #[serde(serialize_with = "serialize_assignment")]
    pub witness: Option<Tuple>,
    pub assignments_checked: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EquivalenceVerdict {
    pub equivalent: bool,
    /// Smallest assignment satisfying exactly one of the two instances.
    #[serde(serialize_with = "serialize_assignment")]
    pub counterexample: Option<Tuple>,
    pub assignments_checked: u64,
}

fn serialize_assignment<S: serde::Serializer>(t: &Option<Tuple>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match t {
        Some(t) => s.serialize_str(&tuple::format(t)),
        None => s.serialize_none(),
    }
}

/// An instance compiled to lookup tables over packed assignments.
struct Evaluator {
    num_vars: usize,
    // (membership table, variable shifts)
    constraints: Vec<(Vec<bool>, Vec<u32>)>,
}

impl Evaluator {
    fn new(lang: &ConstraintLanguage, inst: &CspInstance) -> Result<Self> {
        inst.validate(lang)?;
        let mut tables: BTreeMap<&str, Vec<bool>> = BTreeMap::new();
        for rel in lang.relations() {
            tables.insert(rel.name(), tabulate(rel));
        }
        let n = inst.num_vars;
        let constraints = inst
            .constraints
            .iter()
            .map(|c| {
                let shifts = c.vars.iter().map(|&v| (n - v) as u32).collect();
                (tables[c.relation.as_str()].clone(), shifts)
            })
            .collect();
        Ok(Evaluator {
            num_vars: n,
            constraints,
        })
    }

    /// Bit `n - v` of `assignment` is the value of variable `v`.
    fn satisfies(&self, assignment: u64) -> bool {
        self.constraints.iter().all(|(table, shifts)| {
            let index = shifts
                .iter()
                .fold(0usize, |acc, &s| (acc << 1) | ((assignment >> s) & 1) as usize);
            table[index]
        })
    }

    fn unpack(&self, assignment: u64) -> Tuple {
        (1..=self.num_vars)
            .map(|v| ((assignment >> (self.num_vars - v)) & 1) as u8)
            .collect()
    }
}

fn tabulate(rel: &BooleanRelation) -> Vec<bool> {
    let mut table = vec![false; 1 << rel.arity()];
    for t in rel.member_tuples() {
        let index = t.iter().fold(0usize, |acc, &b| (acc << 1) | b as usize);
        table[index] = true;
    }
    table
}

fn assignment_count(num_vars: usize, budget: u64) -> Result<u64> {
    let needed = 1u128 << num_vars.min(127);
    if num_vars >= 64 || needed > budget as u128 {
        return Err(Error::BudgetExceeded { needed, budget });
    }
    Ok(needed as u64)
}

pub fn brute_force_satisfiable(
    lang: &ConstraintLanguage,
    inst: &CspInstance,
    limits: &Limits,
) -> Result<SatisfiabilityResult> {
    let eval = Evaluator::new(lang, inst)?;
    let total = assignment_count(inst.num_vars, limits.satisfiability_budget)?;
    for a in 0..total {
        if eval.satisfies(a) {
            return Ok(SatisfiabilityResult {
                satisfiable: true,
                witness: Some(eval.unpack(a)),
                assignments_checked: a + 1,
            });
        }
    }
    Ok(SatisfiabilityResult {
        satisfiable: false,
        witness: None,
        assignments_checked: total,
    })
}

/// Checks that every assignment satisfies `original` exactly when it
/// satisfies `kernel`.
pub fn check_equivalence(
    lang: &ConstraintLanguage,
    original: &CspInstance,
    kernel: &CspInstance,
    limits: &Limits,
) -> Result<EquivalenceVerdict> {
    if original.num_vars != kernel.num_vars {
        return Err(Error::DimensionMismatch {
            expected: original.num_vars,
            found: kernel.num_vars,
        });
    }
    let left = Evaluator::new(lang, original)?;
    let right = Evaluator::new(lang, kernel)?;
    let total = assignment_count(original.num_vars, limits.equivalence_budget)?;
    for a in 0..total {
        if left.satisfies(a) != right.satisfies(a) {
            return Ok(EquivalenceVerdict {
                equivalent: false,
                counterexample: Some(left.unpack(a)),
                assignments_checked: a + 1,
            });
        }
    }
    Ok(EquivalenceVerdict {
        equivalent: true,
        counterexample: None,
        assignments_checked: total,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AlternatingWitness {
    #[serde(serialize_with = "tuple::serialize_many")]
    pub sequence: Vec<Tuple>,
    #[serde(serialize_with = "tuple::serialize_one")]
    pub sum: Tuple,
}

/// All sums of `count` members (as a multiset), each with one decomposition.
fn member_sums(members: &[Tuple], count: usize) -> BTreeMap<Vec<i32>, Vec<usize>> {
    let k = members.first().map_or(0, |t| t.len());
    let mut sums = BTreeMap::new();
    sums.insert(vec![0i32; k], Vec::new());
    for _ in 0..count {
        let mut next = BTreeMap::new();
        for (sum, picks) in &sums {
            let last = picks.last().copied().unwrap_or(0);
            for (i, t) in members.iter().enumerate().skip(last) {
                let s: Vec<i32> = sum.iter().zip(t).map(|(&a, &b)| a + b as i32).collect();
                next.entry(s).or_insert_with(|| {
                    let mut p = picks.clone();
                    p.push(i);
                    p
                });
            }
        }
        sums = next;
    }
    sums
}

/// Looks for members `t1..tm` (odd `m <= m_max`) with `t1 - t2 + ... + tm`
/// a 0/1 non-member. The smallest such `m` is reported.
///
/// Splits each sequence into its added and subtracted halves and matches the
/// two sets of half-sums, which covers all `|R|^m` sequences.
pub fn bounded_alternating_search(rel: &BooleanRelation, m_max: usize) -> Result<Option<AlternatingWitness>> {
    if m_max % 2 == 0 {
        return Err(Error::Precondition(format!("m_max must be odd, got {m_max}")));
    }
    let members = rel.member_tuples();
    if members.is_empty() {
        return Ok(None);
    }
    let table = tabulate(rel);
    let k = rel.arity();
    let non_members: Vec<Vec<i32>> = (0..1usize << k)
        .filter(|&i| !table[i])
        .map(|i| (0..k).map(|j| ((i >> (k - 1 - j)) & 1) as i32).collect())
        .collect();
    for m in (1..=m_max).step_by(2) {
        let plus = member_sums(&members, m.div_ceil(2));
        let minus = member_sums(&members, m / 2);
        for v in &non_members {
            for (b, minus_picks) in &minus {
                let a: Vec<i32> = v.iter().zip(b).map(|(x, y)| x + y).collect();
                if let Some(plus_picks) = plus.get(&a) {
                    let mut sequence = Vec::with_capacity(m);
                    for i in 0..m {
                        let pick = if i % 2 == 0 { plus_picks[i / 2] } else { minus_picks[i / 2] };
                        sequence.push(members[pick].clone());
                    }
                    let sum = v.iter().map(|&x| x as u8).collect();
                    return Ok(Some(AlternatingWitness { sequence, sum }));
                }
            }
        }
    }
    Ok(None)
}
