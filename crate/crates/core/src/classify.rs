//! Language-level classification: tractability, balancedness, cone-definable
//! OR arity, and the resulting kernel size exponents.

use serde::Serialize;

use crate::capture::{self, BalanceVerdict};
use crate::cone::{self, ConeDefinition, Exactness, RelationOrArity};
use crate::config::Limits;
use crate::relation::{self, BooleanRelation, ConstraintLanguage, SchaeferReport};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RelationAnalysis {
    pub relation: String,
    pub arity: usize,
    pub size: usize,
    pub symmetric: bool,
    /// Weights of members; the exact defining set when `symmetric`.
    pub satisfying_weights: Vec<usize>,
    pub balance: BalanceVerdict,
    pub or_arity: RelationOrArity,
}

pub fn analyze_relation(rel: &BooleanRelation, limits: &Limits) -> RelationAnalysis {
    let spectrum = relation::weight_spectrum(rel);
    RelationAnalysis {
        relation: rel.name().to_string(),
        arity: rel.arity(),
        size: rel.len(),
        symmetric: spectrum.is_symmetric,
        satisfying_weights: spectrum.satisfying_weights,
        balance: capture::decide_balanced(rel),
        or_arity: cone::relation_or_arity(rel, limits),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct UpperBound {
    /// Kernels have `O(n^exponent)` constraints.
    pub exponent: usize,
    pub method: &'static str,
}

/// A conditional lower bound, stated as text together with the cone-definition
/// that makes its hypothesis checkable. The complexity-theoretic implication
/// itself is not verified.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LowerBound {
    pub basis: &'static str,
    pub exponent: usize,
    pub relation: String,
    pub statement: String,
    pub certificate: ConeDefinition,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Optimality {
    Tight,
    Unknown,
    NotApplicable,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassificationReport {
    pub tractable: bool,
    pub balanced: bool,
    pub symmetric: bool,
    pub max_arity: usize,
    pub max_or_arity: usize,
    pub or_arity_exactness: Exactness,
    pub upper_bound: UpperBound,
    pub lower_bounds: Vec<LowerBound>,
    pub optimality: Optimality,
    pub relations: Vec<RelationAnalysis>,
    pub schaefer: SchaeferReport,
    pub notes: Vec<String>,
}

fn no_kernel_text(k: usize) -> String {
    let size = if k == 1 { "n^(1-e)".to_string() } else { format!("n^({k}-e)") };
    format!("no kernel with O({size}) constraints for any e > 0, unless NP is contained in coNP/poly")
}

pub fn classify_language(lang: &ConstraintLanguage, limits: &Limits) -> ClassificationReport {
    let relations: Vec<RelationAnalysis> = lang.relations().iter().map(|r| analyze_relation(r, limits)).collect();
    let schaefer = relation::schaefer_report(lang);
    let tractable = schaefer.tractable;
    let balanced = relations.iter().all(|r| r.balance.is_balanced());
    let symmetric = relations.iter().all(|r| r.symmetric);
    let k_max = lang.max_arity();
    let top_has_one_gap = lang
        .relations()
        .iter()
        .any(|r| r.arity() == k_max && r.non_member_count() == 1);

    let upper_bound = if balanced {
        UpperBound {
            exponent: 1,
            method: "affine captures modulo prime powers",
        }
    } else if !top_has_one_gap && k_max >= 2 {
        UpperBound {
            exponent: k_max - 1,
            method: "rational captures of degree arity - 1",
        }
    } else {
        UpperBound {
            exponent: k_max,
            method: "duplicate removal",
        }
    };

    let max_or_arity = relations.iter().map(|r| r.or_arity.max_or_arity).max().unwrap_or(0);
    let or_arity_exactness = if relations.iter().all(|r| r.or_arity.exactness == Exactness::Exact) {
        Exactness::Exact
    } else {
        Exactness::LowerBound
    };

    let mut lower_bounds = Vec::new();
    let mut notes = Vec::new();
    if tractable {
        notes.push("language is tractable; lower bounds do not apply".to_string());
    } else {
        for (rel, analysis) in lang.relations().iter().zip(&relations) {
            if rel.non_member_count() == 1 {
                lower_bounds.push(LowerBound {
                    basis: "one-falsifying-tuple",
                    exponent: rel.arity(),
                    relation: rel.name().to_string(),
                    statement: format!(
                        "{} misses exactly one tuple and defines {}-OR: {}",
                        rel.name(),
                        rel.arity(),
                        no_kernel_text(rel.arity())
                    ),
                    certificate: cone::one_unsat_or_definition(rel).expect("one non-member"),
                });
            }
            if analysis.symmetric && !analysis.balance.is_balanced() {
                if let Ok(def) = cone::symmetric_two_or_definition(rel) {
                    lower_bounds.push(LowerBound {
                        basis: "symmetric-unbalanced",
                        exponent: 2,
                        relation: rel.name().to_string(),
                        statement: format!(
                            "{} is symmetric and unbalanced, so it defines 2-OR: {}",
                            rel.name(),
                            no_kernel_text(2)
                        ),
                        certificate: def,
                    });
                }
            }
        }
        if let Some(best) = relations
            .iter()
            .filter(|r| r.or_arity.definition.is_some())
            .max_by_key(|r| r.or_arity.max_or_arity)
        {
            let k = best.or_arity.max_or_arity;
            let low_arity = k_max <= 3;
            let statement = if low_arity {
                format!(
                    "{} defines {k}-OR and every relation has arity at most 3: kernels with O(n^{k}) constraints exist and there is {}",
                    best.relation,
                    no_kernel_text(k)
                )
            } else {
                format!("{} defines {k}-OR: {}", best.relation, no_kernel_text(k))
            };
            lower_bounds.push(LowerBound {
                basis: if low_arity {
                    "low-arity-or-characterization"
                } else {
                    "cone-defined-or"
                },
                exponent: k,
                relation: best.relation.clone(),
                statement,
                certificate: best.or_arity.definition.clone().expect("filtered"),
            });
        }
        if k_max >= 4 {
            notes.push(
                "relations of arity 4 or more: the largest definable OR bounds the exponent from below but need not match it"
                    .to_string(),
            );
        }
    }
    if or_arity_exactness == Exactness::LowerBound {
        notes.push("OR-arity search was capped for some relation; the reported value is a lower bound".to_string());
    }

    let lower = lower_bounds.iter().map(|l| l.exponent).max();
    let optimality = match lower {
        _ if tractable => Optimality::NotApplicable,
        Some(l) if l >= upper_bound.exponent => Optimality::Tight,
        _ => Optimality::Unknown,
    };

    ClassificationReport {
        tractable,
        balanced,
        symmetric,
        max_arity: k_max,
        max_or_arity,
        or_arity_exactness,
        upper_bound,
        lower_bounds,
        optimality,
        relations,
        schaefer,
        notes,
    }
}
