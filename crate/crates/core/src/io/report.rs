//! Reports as versioned JSON or plain text.
//!
//! JSON reports are objects with `"schema": 1` and a `"kind"` tag followed by
//! the fields of the report itself. Field order is fixed, so identical inputs
//! give byte-identical output.

use std::fmt::Write as _;

use serde::Serialize;

use crate::capture::{self, BalanceVerdict, CaptureEntry};
use crate::classify::ClassificationReport;
use crate::cone::{self, ConeDefinition, ConeSearch, Exactness};
use crate::config::Limits;
use crate::error::Result;
use crate::oracle::{EquivalenceVerdict, SatisfiabilityResult};
use crate::relation::{BooleanRelation, OperationVerdict};
use crate::sparsify::{KernelReport, Strategy};
use crate::tuple;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Json,
    Text,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ReportBody {
    Classification(ClassificationReport),
    Kernel(KernelReport),
    Capture(CaptureReport),
    Cone(ConeReport),
    Oracle(OracleReport),
}

#[derive(Serialize)]
struct Envelope<'a> {
    schema: u32,
    #[serde(flatten)]
    body: &'a ReportBody,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CaptureReport {
    pub relation: String,
    pub arity: usize,
    pub balance: BalanceVerdict,
    /// Rational captures of degree at most `arity - 1`, one per non-member,
    /// when the relation misses at least two tuples.
    pub degree_km1_captures: Vec<CaptureEntry>,
}

impl CaptureReport {
    pub fn new(rel: &BooleanRelation) -> Result<Self> {
        let mut degree_km1_captures = Vec::new();
        if rel.non_member_count() >= 2 {
            for u in rel.non_member_tuples() {
                let polynomial = capture::degree_km1_capture(rel, &u)?;
                degree_km1_captures.push(CaptureEntry { target: u, polynomial });
            }
        }
        Ok(CaptureReport {
            relation: rel.name().to_string(),
            arity: rel.arity(),
            balance: capture::decide_balanced(rel),
            degree_km1_captures,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ConeOutcome {
    Found,
    NotFound,
    Capped,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConeAttempt {
    pub source: String,
    pub outcome: ConeOutcome,
    pub definition: Option<ConeDefinition>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConeReport {
    pub target: String,
    pub target_arity: usize,
    pub attempts: Vec<ConeAttempt>,
}

impl ConeReport {
    /// Tries to cone-define `target` from each of `sources` in turn.
    pub fn new(target: &BooleanRelation, sources: &[BooleanRelation], limits: &Limits) -> Self {
        let attempts = sources
            .iter()
            .map(|s| {
                let (outcome, definition) = match cone::search_cone_definition(target, s, limits) {
                    ConeSearch::Found(d) => (ConeOutcome::Found, Some(d)),
                    ConeSearch::NotFound => (ConeOutcome::NotFound, None),
                    ConeSearch::Capped => (ConeOutcome::Capped, None),
                };
                ConeAttempt {
                    source: s.name().to_string(),
                    outcome,
                    definition,
                }
            })
            .collect();
        ConeReport {
            target: target.name().to_string(),
            target_arity: target.arity(),
            attempts,
        }
    }

    pub fn any_capped(&self) -> bool {
        self.attempts.iter().any(|a| a.outcome == ConeOutcome::Capped)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OracleReport {
    pub satisfiability: SatisfiabilityResult,
    pub kernel_satisfiability: Option<SatisfiabilityResult>,
    pub equivalence: Option<EquivalenceVerdict>,
}

pub fn render(body: &ReportBody, format: ReportFormat) -> String {
    match format {
        ReportFormat::Json => {
            let envelope = Envelope {
                schema: SCHEMA_VERSION,
                body,
            };
            let mut s = serde_json::to_string_pretty(&envelope).expect("reports serialize");
            s.push('\n');
            s
        }
        ReportFormat::Text => match body {
            ReportBody::Classification(r) => classification_text(r),
            ReportBody::Kernel(r) => kernel_text(r),
            ReportBody::Capture(r) => capture_text(r),
            ReportBody::Cone(r) => cone_text(r),
            ReportBody::Oracle(r) => oracle_text(r),
        },
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn exactness(e: Exactness) -> &'static str {
    match e {
        Exactness::Exact => "exact",
        Exactness::LowerBound => "lower bound",
    }
}

fn balance_text(out: &mut String, indent: &str, v: &BalanceVerdict) {
    match v {
        BalanceVerdict::Balanced(cert) => {
            let _ = writeln!(out, "{indent}balanced; captures:");
            for e in &cert.entries {
                let _ = writeln!(
                    out,
                    "{indent}  {} over {}: {}",
                    tuple::format(&e.target),
                    e.polynomial.ring(),
                    e.polynomial
                );
            }
        }
        BalanceVerdict::Unbalanced(w) => {
            let mut expr = String::new();
            for (i, t) in w.sequence.iter().enumerate() {
                if i > 0 {
                    expr.push_str(if i % 2 == 1 { " - " } else { " + " });
                }
                expr.push_str(&tuple::format(t));
            }
            let _ = writeln!(out, "{indent}unbalanced: {expr} = {}", tuple::format(&w.target));
        }
    }
}

fn classification_text(r: &ClassificationReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "relations: {}, max arity {}", r.relations.len(), r.max_arity);
    let _ = writeln!(out, "tractable: {}", yes_no(r.tractable));
    let _ = writeln!(out, "balanced: {}", yes_no(r.balanced));
    let _ = writeln!(out, "symmetric: {}", yes_no(r.symmetric));
    let _ = writeln!(out, "max OR arity: {} ({})", r.max_or_arity, exactness(r.or_arity_exactness));
    let _ = writeln!(
        out,
        "upper bound: O(n^{}) constraints via {}",
        r.upper_bound.exponent, r.upper_bound.method
    );
    if r.lower_bounds.is_empty() {
        let _ = writeln!(out, "lower bounds: none");
    } else {
        let _ = writeln!(out, "lower bounds:");
        for l in &r.lower_bounds {
            let _ = writeln!(out, "  [{}] exponent {}: {}", l.basis, l.exponent, l.statement);
            let _ = writeln!(out, "    definition from {}: {}", l.relation, l.certificate);
        }
    }
    let _ = writeln!(out, "optimality: {}", serde_json::to_value(r.optimality).unwrap().as_str().unwrap());
    for a in &r.relations {
        let _ = writeln!(
            out,
            "relation {}: arity {}, {} members, symmetric {}, OR arity {} ({})",
            a.relation,
            a.arity,
            a.size,
            yes_no(a.symmetric),
            a.or_arity.max_or_arity,
            exactness(a.or_arity.exactness)
        );
        if let Some(d) = &a.or_arity.definition {
            let _ = writeln!(out, "  OR definition: {d}");
        }
        balance_text(&mut out, "  ", &a.balance);
    }
    for w in &r.schaefer.operations {
        match &w.verdict {
            OperationVerdict::Preserves => {
                let _ = writeln!(out, "operation {}: preserves every relation", w.operation);
            }
            OperationVerdict::Violated { relation, violation } => {
                let inputs: Vec<String> = violation.inputs.iter().map(|t| tuple::format(t)).collect();
                let _ = writeln!(
                    out,
                    "operation {}: violated by {} on {} -> {}",
                    w.operation,
                    relation,
                    inputs.join(", "),
                    tuple::format(&violation.output)
                );
            }
        }
    }
    for n in &r.notes {
        let _ = writeln!(out, "note: {n}");
    }
    out
}

fn kernel_text(r: &KernelReport) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "kept {} of {} constraints over {} variables (bound {})",
        r.kept.len(),
        r.input_constraints,
        r.num_vars,
        r.size_bound
    );
    for k in &r.relations {
        let strategy = match &k.strategy {
            Strategy::DropFull => "dropped (full relation)".to_string(),
            Strategy::Degree1 { moduli } => {
                let m: Vec<String> = moduli.iter().map(|q| q.to_string()).collect();
                format!("affine captures mod {}", m.join(", "))
            }
            Strategy::DegreeKm1 => "rational captures of degree arity - 1".to_string(),
            Strategy::DedupOnly => "duplicate removal".to_string(),
        };
        let _ = writeln!(
            out,
            "relation {}: {} -> {} constraints, {}, bound {}",
            k.relation, k.input_constraints, k.kept_constraints, strategy, k.size_bound
        );
    }
    for n in &r.notes {
        let _ = writeln!(out, "note: {n}");
    }
    out
}

fn capture_text(r: &CaptureReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "relation {} (arity {})", r.relation, r.arity);
    balance_text(&mut out, "", &r.balance);
    if !r.degree_km1_captures.is_empty() {
        let _ = writeln!(out, "degree {} captures over Q:", r.arity - 1);
        for e in &r.degree_km1_captures {
            let _ = writeln!(out, "  {}: {}", tuple::format(&e.target), e.polynomial);
        }
    }
    out
}

fn cone_text(r: &ConeReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "target {} (arity {})", r.target, r.target_arity);
    for a in &r.attempts {
        match (&a.outcome, &a.definition) {
            (ConeOutcome::Found, Some(d)) => {
                let _ = writeln!(out, "from {}: {d}", a.source);
            }
            (ConeOutcome::Capped, _) => {
                let _ = writeln!(out, "from {}: search capped", a.source);
            }
            _ => {
                let _ = writeln!(out, "from {}: not definable", a.source);
            }
        }
    }
    out
}

fn sat_text(out: &mut String, label: &str, s: &SatisfiabilityResult) {
    match &s.witness {
        Some(w) => {
            let _ = writeln!(out, "{label}: satisfiable, first solution {}", tuple::format(w));
        }
        None => {
            let _ = writeln!(out, "{label}: unsatisfiable ({} assignments)", s.assignments_checked);
        }
    }
}

fn oracle_text(r: &OracleReport) -> String {
    let mut out = String::new();
    sat_text(&mut out, "instance", &r.satisfiability);
    if let Some(k) = &r.kernel_satisfiability {
        sat_text(&mut out, "kernel", k);
    }
    if let Some(e) = &r.equivalence {
        match &e.counterexample {
            None => {
                let _ = writeln!(out, "equivalent on all {} assignments", e.assignments_checked);
            }
            Some(c) => {
                let _ = writeln!(out, "not equivalent: assignment {} separates them", tuple::format(c));
            }
        }
    }
    out
}
