//! Cone-definitions: expressing a relation `T` through a relation `U` by
//! filling the coordinates of `U` with constants, variables of `T`, and
//! negated variables, where every variable of `T` must be used.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::capture::{self, BalanceVerdict};
use crate::config::Limits;
use crate::error::{Error, Result};
use crate::relation::{self, BooleanRelation, ConstraintLanguage};
use crate::tuple;

/// One coordinate of a cone-definition; variables are numbered from 1.
///
/// The derived order is the search order `0 < 1 < x1 < ~x1 < x2 < ...`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Symbol {
    Zero,
    One,
    Var(usize, bool),
}

impl Symbol {
    pub fn pos(i: usize) -> Self {
        Symbol::Var(i, false)
    }

    pub fn neg(i: usize) -> Self {
        Symbol::Var(i, true)
    }

    pub fn negate(self) -> Self {
        match self {
            Symbol::Zero => Symbol::One,
            Symbol::One => Symbol::Zero,
            Symbol::Var(i, n) => Symbol::Var(i, !n),
        }
    }

    /// Value under the assignment `x` (indexed from 0 for variable 1).
    pub fn eval(self, x: &[u8]) -> u8 {
        match self {
            Symbol::Zero => 0,
            Symbol::One => 1,
            Symbol::Var(i, false) => x[i - 1],
            Symbol::Var(i, true) => 1 - x[i - 1],
        }
    }

    /// Symbol at a position of the search order.
    fn from_code(c: usize) -> Self {
        match c {
            0 => Symbol::Zero,
            1 => Symbol::One,
            _ => Symbol::Var(c / 2, c % 2 == 1),
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        let bad = || Error::InvalidSymbol(s.to_string());
        match s {
            "0" => Ok(Symbol::Zero),
            "1" => Ok(Symbol::One),
            _ => {
                let (neg, rest) = match s.strip_prefix('~') {
                    Some(r) => (true, r),
                    None => (false, s),
                };
                let i: usize = rest.strip_prefix('x').ok_or_else(bad)?.parse().map_err(|_| bad())?;
                if i == 0 {
                    return Err(bad());
                }
                Ok(Symbol::Var(i, neg))
            }
        }
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Symbol::Zero => write!(f, "0"),
            Symbol::One => write!(f, "1"),
            Symbol::Var(i, false) => write!(f, "x{i}"),
            Symbol::Var(i, true) => write!(f, "~x{i}"),
        }
    }
}

impl Serialize for Symbol {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// `T(x_1..x_m)` holds iff `U(y_1..y_n)` holds, with `y` given by `symbols`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct ConeDefinition {
    pub target_arity: usize,
    pub symbols: Vec<Symbol>,
}

impl ConeDefinition {
    pub fn new(target_arity: usize, symbols: Vec<Symbol>) -> Result<Self> {
        for s in &symbols {
            if let Symbol::Var(i, _) = s {
                if *i == 0 || *i > target_arity {
                    return Err(Error::InvalidSymbol(format!(
                        "{s} refers to a variable outside x1..x{target_arity}"
                    )));
                }
            }
        }
        Ok(ConeDefinition {
            target_arity,
            symbols,
        })
    }

    pub fn source_arity(&self) -> usize {
        self.symbols.len()
    }

    /// Every target variable occurs, plain or negated.
    pub fn uses_every_variable(&self) -> bool {
        (1..=self.target_arity).all(|i| self.symbols.iter().any(|s| matches!(s, Symbol::Var(j, _) if *j == i)))
    }

    /// The source tuple produced by an assignment of the target variables.
    pub fn apply(&self, x: &[u8]) -> Vec<u8> {
        self.symbols.iter().map(|s| s.eval(x)).collect()
    }

    /// Given `self` defining `T` from `U` and `inner` defining `U` from `W`,
    /// the definition of `T` from `W`.
    pub fn compose(&self, inner: &ConeDefinition) -> Result<ConeDefinition> {
        if inner.target_arity != self.source_arity() {
            return Err(Error::DimensionMismatch {
                expected: self.source_arity(),
                found: inner.target_arity,
            });
        }
        let symbols = inner
            .symbols
            .iter()
            .map(|s| match *s {
                Symbol::Var(j, neg) => {
                    let y = self.symbols[j - 1];
                    if neg {
                        y.negate()
                    } else {
                        y
                    }
                }
                c => c,
            })
            .collect();
        ConeDefinition::new(self.target_arity, symbols)
    }
}

impl fmt::Display for ConeDefinition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.symbols.iter().map(|s| s.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// Replays all `2^m` assignments of the target variables.
pub fn check_cone_definition(t: &BooleanRelation, u: &BooleanRelation, def: &ConeDefinition) -> Result<bool> {
    if def.target_arity != t.arity() {
        return Err(Error::DimensionMismatch {
            expected: t.arity(),
            found: def.target_arity,
        });
    }
    if def.source_arity() != u.arity() {
        return Err(Error::DimensionMismatch {
            expected: u.arity(),
            found: def.source_arity(),
        });
    }
    ConeDefinition::new(def.target_arity, def.symbols.clone())?;
    if !def.uses_every_variable() {
        return Ok(false);
    }
    Ok((0..t.universe()).all(|i| {
        let x = tuple::from_index(i, t.arity());
        t.contains_index(i) == u.contains(&def.apply(&x))
    }))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ConeSearch {
    Found(ConeDefinition),
    /// The whole candidate space was enumerated.
    NotFound,
    /// The source arity exceeds the configured cap; nothing was concluded.
    Capped,
}

impl ConeSearch {
    pub fn found(&self) -> Option<&ConeDefinition> {
        match self {
            ConeSearch::Found(d) => Some(d),
            _ => None,
        }
    }
}

struct Search<'a> {
    t: &'a BooleanRelation,
    u: &'a BooleanRelation,
    m: usize,
    n: usize,
    /// source index prefix for every target assignment
    prefix: Vec<Vec<usize>>,
    uses: Vec<usize>,
    unused: usize,
    chosen: Vec<usize>,
}

impl Search<'_> {
    fn descend(&mut self, pos: usize) -> bool {
        if pos == self.n {
            let last = &self.prefix[self.n];
            return (0..1usize << self.m).all(|a| self.t.contains_index(a) == self.u.contains_index(last[a]));
        }
        let remaining = self.n - pos;
        for code in 0..2 * self.m + 2 {
            let sym = Symbol::from_code(code);
            let var = match sym {
                Symbol::Var(i, _) => Some(i),
                _ => None,
            };
            let fresh = var.is_some_and(|i| self.uses[i] == 0);
            // every unused variable still needs a slot
            if self.unused - fresh as usize > remaining - 1 {
                continue;
            }
            for a in 0..1usize << self.m {
                let bit = match sym {
                    Symbol::Zero => 0,
                    Symbol::One => 1,
                    Symbol::Var(i, neg) => ((a >> (self.m - i)) & 1) ^ neg as usize,
                };
                self.prefix[pos + 1][a] = (self.prefix[pos][a] << 1) | bit;
            }
            if let Some(i) = var {
                self.uses[i] += 1;
            }
            self.unused -= fresh as usize;
            self.chosen.push(code);
            if self.descend(pos + 1) {
                return true;
            }
            self.chosen.pop();
            self.unused += fresh as usize;
            if let Some(i) = var {
                self.uses[i] -= 1;
            }
        }
        false
    }
}

/// Lexicographically first cone-definition of `t` from `u` in the symbol
/// order `0 < 1 < x1 < ~x1 < x2 < ...`.
pub fn search_cone_definition(t: &BooleanRelation, u: &BooleanRelation, limits: &Limits) -> ConeSearch {
    let (m, n) = (t.arity(), u.arity());
    if m > n {
        return ConeSearch::NotFound;
    }
    if n > limits.cone_source_arity {
        return ConeSearch::Capped;
    }
    let mut search = Search {
        t,
        u,
        m,
        n,
        prefix: vec![vec![0; 1 << m]; n + 1],
        uses: vec![0; m + 1],
        unused: m,
        chosen: Vec::with_capacity(n),
    };
    if search.descend(0) {
        let symbols = search.chosen.iter().map(|&c| Symbol::from_code(c)).collect();
        ConeSearch::Found(ConeDefinition::new(m, symbols).expect("codes within range"))
    } else {
        ConeSearch::NotFound
    }
}

/// For a relation missing exactly one tuple `u`: `x_i` where `u_i = 0` and
/// `~x_i` where `u_i = 1` defines `k`-OR.
pub fn one_unsat_or_definition(rel: &BooleanRelation) -> Result<ConeDefinition> {
    if rel.non_member_count() != 1 {
        return Err(Error::Precondition(format!(
            "{} has {} non-members, expected exactly one",
            rel.name(),
            rel.non_member_count()
        )));
    }
    let u = &rel.non_member_tuples()[0];
    let symbols = u
        .iter()
        .enumerate()
        .map(|(i, &b)| Symbol::Var(i + 1, b == 1))
        .collect();
    ConeDefinition::new(rel.arity(), symbols)
}

/// Weights `a, b, c` satisfying and `d` unsatisfying with `a - b + c = d`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct WeightQuadruple {
    pub a: usize,
    pub b: usize,
    pub c: usize,
    pub d: usize,
}

/// Definition of 2-OR from a symmetric arity-`k` relation, given a weight
/// quadruple. The smallest of the four numbers picks the tuple shape (ties
/// resolved in the order b, a, c, d).
pub fn two_or_from_quadruple(k: usize, w: WeightQuadruple) -> Result<ConeDefinition> {
    let WeightQuadruple { a, b, c, d } = w;
    if a + c != b + d || [a, b, c, d].iter().any(|&v| v > k) {
        return Err(Error::Precondition(format!("{a} - {b} + {c} != {d} within 0..={k}")));
    }
    let min = a.min(b).min(c).min(d);
    let blocks: [(Symbol, usize); 4] = if b == min {
        [
            (Symbol::neg(1), a - b),
            (Symbol::neg(2), c - b),
            (Symbol::One, b),
            (Symbol::Zero, k - d),
        ]
    } else if a == min {
        [
            (Symbol::neg(1), d - a),
            (Symbol::pos(2), b - a),
            (Symbol::One, a),
            (Symbol::Zero, k - c),
        ]
    } else if c == min {
        [
            (Symbol::neg(1), d - c),
            (Symbol::pos(2), b - c),
            (Symbol::One, c),
            (Symbol::Zero, k - a),
        ]
    } else {
        [
            (Symbol::pos(1), a - d),
            (Symbol::pos(2), c - d),
            (Symbol::One, d),
            (Symbol::Zero, k - b),
        ]
    };
    let symbols = blocks
        .iter()
        .flat_map(|&(s, n)| std::iter::repeat(s).take(n))
        .collect();
    ConeDefinition::new(2, symbols)
}

/// First `(a, b, c)` in ascending order with `a - b + c` an unsatisfying weight.
pub fn scan_quadruple(k: usize, satisfying: &[usize]) -> Option<WeightQuadruple> {
    for &a in satisfying {
        for &b in satisfying {
            for &c in satisfying {
                if a + c < b {
                    continue;
                }
                let d = a + c - b;
                if d <= k && !satisfying.contains(&d) {
                    return Some(WeightQuadruple { a, b, c, d });
                }
            }
        }
    }
    None
}

/// Shortens an alternating weight identity `s1 - s2 + ... + sm = t` (odd
/// `m`, all `si` satisfying, `t` not) until three terms remain or a triple
/// already lands on an unsatisfying weight.
///
/// Each step picks two positive terms and one negative term whose combined
/// value stays inside `0..=k`; such a triple always exists.
pub fn reduce_weight_identity(
    k: usize,
    satisfying: &[usize],
    weights: &[usize],
    t: usize,
) -> Result<WeightQuadruple> {
    if weights.len() % 2 == 0 {
        return Err(Error::Precondition("alternating identity must have odd length".into()));
    }
    let mut pos: Vec<usize> = weights.iter().step_by(2).copied().collect();
    let mut neg: Vec<usize> = weights.iter().skip(1).step_by(2).copied().collect();
    let value = |pos: &[usize], neg: &[usize]| {
        pos.iter().map(|&v| v as i64).sum::<i64>() - neg.iter().map(|&v| v as i64).sum::<i64>()
    };
    if value(&pos, &neg) != t as i64 || satisfying.contains(&t) {
        return Err(Error::Precondition("weights do not form an unsatisfying identity".into()));
    }
    loop {
        if pos.len() == 1 {
            return Err(Error::Precondition("single-term identity cannot reach an unsatisfying weight".into()));
        }
        if pos.len() == 2 {
            return Ok(WeightQuadruple {
                a: pos[0],
                b: neg[0],
                c: pos[1],
                d: t,
            });
        }
        let mut pick = None;
        'outer: for i in 0..pos.len() {
            for j in i + 1..pos.len() {
                for l in 0..neg.len() {
                    let s = pos[i] as i64 - neg[l] as i64 + pos[j] as i64;
                    if (0..=k as i64).contains(&s) {
                        pick = Some((i, j, l, s as usize));
                        break 'outer;
                    }
                }
            }
        }
        let (i, j, l, s) = pick.ok_or_else(|| Error::Precondition("no in-range triple".into()))?;
        if !satisfying.contains(&s) {
            return Ok(WeightQuadruple {
                a: pos[i],
                b: neg[l],
                c: pos[j],
                d: s,
            });
        }
        pos.remove(j);
        pos[i] = s;
        neg.remove(l);
    }
}

fn symmetric_unbalanced(rel: &BooleanRelation) -> Result<(Vec<usize>, capture::UnbalancedWitness)> {
    let spectrum = relation::weight_spectrum(rel);
    if !spectrum.is_symmetric {
        return Err(Error::Precondition(format!("{} is not symmetric", rel.name())));
    }
    match capture::decide_balanced(rel) {
        BalanceVerdict::Unbalanced(w) => Ok((spectrum.satisfying_weights, w)),
        BalanceVerdict::Balanced(_) => Err(Error::Precondition(format!("{} is balanced", rel.name()))),
    }
}

/// 2-OR from a symmetric unbalanced relation: a direct scan for a weight
/// quadruple, falling back to shortening the unbalanced witness.
pub fn symmetric_two_or_definition(rel: &BooleanRelation) -> Result<ConeDefinition> {
    let (satisfying, witness) = symmetric_unbalanced(rel)?;
    let quad = match scan_quadruple(rel.arity(), &satisfying) {
        Some(q) => q,
        None => witness_quadruple(rel.arity(), &satisfying, &witness)?,
    };
    two_or_from_quadruple(rel.arity(), quad)
}

/// The witness-shortening path alone, without the direct scan.
pub fn symmetric_two_or_from_witness(rel: &BooleanRelation) -> Result<ConeDefinition> {
    let (satisfying, witness) = symmetric_unbalanced(rel)?;
    two_or_from_quadruple(rel.arity(), witness_quadruple(rel.arity(), &satisfying, &witness)?)
}

fn witness_quadruple(k: usize, satisfying: &[usize], w: &capture::UnbalancedWitness) -> Result<WeightQuadruple> {
    let weights: Vec<usize> = w.sequence.iter().map(|t| tuple::weight(t)).collect();
    reduce_weight_identity(k, satisfying, &weights, tuple::weight(&w.target))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Exactness {
    Exact,
    LowerBound,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RelationOrArity {
    pub relation: String,
    pub max_or_arity: usize,
    pub exactness: Exactness,
    /// Definition of the largest OR found, when it is at least 1.
    pub definition: Option<ConeDefinition>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrArityReport {
    pub relations: Vec<RelationOrArity>,
    pub max_or_arity: usize,
    pub exactness: Exactness,
}

/// Largest `m` such that `m`-OR is cone-definable from `rel`.
///
/// A relation missing one tuple defines OR of its own arity. Otherwise the
/// search climbs from `m = 1`; definability is downward closed (repeat a
/// variable), so the first failure ends it.
pub fn relation_or_arity(rel: &BooleanRelation, limits: &Limits) -> RelationOrArity {
    let result = |m, exactness, definition| RelationOrArity {
        relation: rel.name().to_string(),
        max_or_arity: m,
        exactness,
        definition,
    };
    if rel.is_empty() || rel.is_full() {
        return result(0, Exactness::Exact, None);
    }
    if rel.non_member_count() == 1 {
        let def = one_unsat_or_definition(rel).expect("one non-member");
        return result(rel.arity(), Exactness::Exact, Some(def));
    }
    let mut best = None;
    for m in 1..=rel.arity() {
        let or = BooleanRelation::k_or(m).expect("arity within bounds");
        match search_cone_definition(&or, rel, limits) {
            ConeSearch::Found(d) => best = Some(d),
            ConeSearch::NotFound => break,
            ConeSearch::Capped => {
                // any proper nonempty relation defines 1-OR
                let m = best.as_ref().map_or(1, |d: &ConeDefinition| d.target_arity);
                let def = best.or_else(|| one_or_definition(rel));
                return result(m, Exactness::LowerBound, def);
            }
        }
    }
    let m = best.as_ref().map_or(0, |d| d.target_arity);
    result(m, Exactness::Exact, best)
}

/// 1-OR from any relation with a member and a non-member: first differing
/// coordinate gets `x1` or `~x1`, the rest is filled from the member.
fn one_or_definition(rel: &BooleanRelation) -> Option<ConeDefinition> {
    let member = rel.member_tuples().into_iter().next()?;
    let non = rel.non_member_tuples().into_iter().next()?;
    // walk from the non-member to the member one coordinate at a time
    let mut cur = non.clone();
    for i in 0..cur.len() {
        if cur[i] == member[i] {
            continue;
        }
        let mut next = cur.clone();
        next[i] = member[i];
        if rel.contains(&next) {
            let symbols = cur
                .iter()
                .enumerate()
                .map(|(j, &b)| {
                    if j == i {
                        Symbol::Var(1, member[i] == 0)
                    } else if b == 1 {
                        Symbol::One
                    } else {
                        Symbol::Zero
                    }
                })
                .collect();
            return ConeDefinition::new(1, symbols).ok();
        }
        cur = next;
    }
    None
}

pub fn max_or_arity(lang: &ConstraintLanguage, limits: &Limits) -> OrArityReport {
    let relations: Vec<RelationOrArity> = lang.relations().iter().map(|r| relation_or_arity(r, limits)).collect();
    let max = relations.iter().map(|r| r.max_or_arity).max().unwrap_or(0);
    let exactness = if relations.iter().all(|r| r.exactness == Exactness::Exact) {
        Exactness::Exact
    } else {
        Exactness::LowerBound
    };
    OrArityReport {
        relations,
        max_or_arity: max,
        exactness,
    }
}
