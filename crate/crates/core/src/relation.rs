//! Boolean relations, constraint languages and the preservation checks that
//! are decided by direct enumeration.
//!
//! Tuples are encoded as integers with coordinate 1 as the most significant
//! bit, so iterating member indices in increasing order visits tuples in
//! lexicographic order.

use std::collections::HashSet;
use std::fmt;

use serde::Serialize;

use crate::config::HARD_MAX_ARITY;
use crate::error::{Error, Result};
use crate::tuple::{self, Tuple};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BooleanRelation {
    name: String,
    arity: usize,
    words: Vec<u64>,
    len: usize,
}

impl fmt::Debug for BooleanRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let members: Vec<String> = self.members().map(|i| tuple::format_index(i, self.arity)).collect();
        f.debug_struct("BooleanRelation")
            .field("name", &self.name)
            .field("arity", &self.arity)
            .field("members", &members)
            .finish()
    }
}

impl BooleanRelation {
    /// Builds a relation from member indices. Duplicates are ignored.
    pub fn from_indices(
        name: impl Into<String>,
        arity: usize,
        members: impl IntoIterator<Item = usize>,
    ) -> Result<Self> {
        let mut rel = Self::empty(name, arity)?;
        let size = 1usize << arity;
        for index in members {
            if index >= size {
                return Err(Error::MemberCount {
                    expected: size,
                    found: index + 1,
                });
            }
            rel.insert(index);
        }
        Ok(rel)
    }

    pub fn from_tuples<T: AsRef<[u8]>>(
        name: impl Into<String>,
        arity: usize,
        tuples: impl IntoIterator<Item = T>,
    ) -> Result<Self> {
        let mut indices = Vec::new();
        for t in tuples {
            let t = t.as_ref();
            if t.len() != arity {
                return Err(Error::DimensionMismatch {
                    expected: arity,
                    found: t.len(),
                });
            }
            if t.iter().any(|&b| b > 1) {
                return Err(Error::Precondition("tuple entries must be 0 or 1".into()));
            }
            indices.push(tuple::index_of(t));
        }
        Self::from_indices(name, arity, indices)
    }

    /// Builds the bit set from an explicit membership vector of length `2^arity`.
    pub fn from_bits(name: impl Into<String>, arity: usize, bits: &[bool]) -> Result<Self> {
        check_arity(arity)?;
        if bits.len() != 1 << arity {
            return Err(Error::MemberCount {
                expected: 1 << arity,
                found: bits.len(),
            });
        }
        Self::from_indices(name, arity, bits.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i))
    }

    pub fn from_predicate(
        name: impl Into<String>,
        arity: usize,
        pred: impl Fn(&[u8]) -> bool,
    ) -> Result<Self> {
        check_arity(arity)?;
        let members: Vec<usize> = (0..1usize << arity)
            .filter(|&i| pred(&tuple::from_index(i, arity)))
            .collect();
        Self::from_indices(name, arity, members)
    }

    pub fn empty(name: impl Into<String>, arity: usize) -> Result<Self> {
        check_arity(arity)?;
        let words = ((1usize << arity) + 63) / 64;
        Ok(BooleanRelation {
            name: name.into(),
            arity,
            words: vec![0; words],
            len: 0,
        })
    }

    pub fn full(name: impl Into<String>, arity: usize) -> Result<Self> {
        Self::from_indices(name, arity, 0..1usize << arity)
    }

    /// The k-ary OR: every tuple except the all-zero one.
    pub fn k_or(k: usize) -> Result<Self> {
        Self::from_indices(format!("OR{k}"), k, 1..1usize << k)
    }

    fn insert(&mut self, index: usize) {
        let (w, b) = (index / 64, index % 64);
        if self.words[w] & (1 << b) == 0 {
            self.words[w] |= 1 << b;
            self.len += 1;
        }
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    /// Number of addressable tuples, `2^arity`.
    pub fn universe(&self) -> usize {
        1 << self.arity
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn is_full(&self) -> bool {
        self.len == self.universe()
    }

    pub fn non_member_count(&self) -> usize {
        self.universe() - self.len
    }

    pub fn contains_index(&self, index: usize) -> bool {
        index < self.universe() && self.words[index / 64] & (1 << (index % 64)) != 0
    }

    pub fn contains(&self, t: &[u8]) -> bool {
        t.len() == self.arity && self.contains_index(tuple::index_of(t))
    }

    /// Member indices in increasing (lexicographic) order.
    pub fn members(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.universe()).filter(move |&i| self.contains_index(i))
    }

    pub fn non_members(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.universe()).filter(move |&i| !self.contains_index(i))
    }

    pub fn member_tuples(&self) -> Vec<Tuple> {
        self.members().map(|i| tuple::from_index(i, self.arity)).collect()
    }

    pub fn non_member_tuples(&self) -> Vec<Tuple> {
        self.non_members().map(|i| tuple::from_index(i, self.arity)).collect()
    }

    /// `{(x without coordinate `coord`) : x in R, x[coord] = value}`; arity drops by one.
    pub fn restrict(&self, coord: usize, value: u8) -> Result<Self> {
        if self.arity < 2 || coord >= self.arity {
            return Err(Error::Precondition(format!(
                "cannot restrict coordinate {} of an arity-{} relation",
                coord + 1,
                self.arity
            )));
        }
        let members = self.member_tuples().into_iter().filter_map(|mut t| {
            if t[coord] == value {
                t.remove(coord);
                Some(tuple::index_of(&t))
            } else {
                None
            }
        });
        let members: Vec<usize> = members.collect();
        Self::from_indices(format!("{}|x{}={}", self.name, coord + 1, value), self.arity - 1, members)
    }
}

fn check_arity(arity: usize) -> Result<()> {
    if arity == 0 || arity > HARD_MAX_ARITY {
        return Err(Error::ArityOutOfRange {
            arity,
            max: HARD_MAX_ARITY,
        });
    }
    Ok(())
}

/// Ordered set of uniquely named relations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstraintLanguage {
    relations: Vec<BooleanRelation>,
}

impl ConstraintLanguage {
    pub fn new(relations: Vec<BooleanRelation>) -> Result<Self> {
        if relations.is_empty() {
            return Err(Error::EmptyLanguage);
        }
        let mut seen = HashSet::new();
        for r in &relations {
            if !seen.insert(r.name()) {
                return Err(Error::DuplicateRelation(r.name().to_string()));
            }
        }
        Ok(ConstraintLanguage { relations })
    }

    pub fn relations(&self) -> &[BooleanRelation] {
        &self.relations
    }

    pub fn get(&self, name: &str) -> Option<&BooleanRelation> {
        self.relations.iter().find(|r| r.name() == name)
    }

    pub fn max_arity(&self) -> usize {
        self.relations.iter().map(|r| r.arity()).max().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.relations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.relations.is_empty()
    }
}

/// A total Boolean operation given by its truth table; the first argument is
/// the most significant bit of the table index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TotalOperation {
    name: &'static str,
    arity: usize,
    table: Vec<u8>,
}

impl TotalOperation {
    pub fn from_fn(name: &'static str, arity: usize, f: impl Fn(&[u8]) -> u8) -> Self {
        let table = (0..1usize << arity)
            .map(|i| f(&tuple::from_index(i, arity)) & 1)
            .collect();
        TotalOperation { name, arity, table }
    }

    pub fn constant(b: u8) -> Self {
        Self::from_fn(if b == 0 { "u0" } else { "u1" }, 1, move |_| b)
    }

    pub fn and() -> Self {
        Self::from_fn("and", 2, |x| x[0] & x[1])
    }

    pub fn or() -> Self {
        Self::from_fn("or", 2, |x| x[0] | x[1])
    }

    /// Ternary exclusive or.
    pub fn minority() -> Self {
        Self::from_fn("minority", 3, |x| x[0] ^ x[1] ^ x[2])
    }

    pub fn majority() -> Self {
        Self::from_fn("majority", 3, |x| (x[0] & x[1]) | (x[0] & x[2]) | (x[1] & x[2]))
    }

    /// The six operations whose preservation makes a language tractable.
    pub fn schaefer_set() -> Vec<TotalOperation> {
        vec![
            Self::constant(0),
            Self::constant(1),
            Self::and(),
            Self::or(),
            Self::minority(),
            Self::majority(),
        ]
    }

    pub fn name(&self) -> &'static str {
        self.name
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn apply(&self, args: &[u8]) -> u8 {
        self.table[tuple::index_of(args)]
    }
}

/// Inputs drawn from a relation whose coordinatewise image falls outside it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TotalViolation {
    #[serde(serialize_with = "tuple::serialize_many")]
    pub inputs: Vec<Tuple>,
    #[serde(serialize_with = "tuple::serialize_one")]
    pub output: Tuple,
}

/// Lexicographically first violating input, if any.
pub fn find_total_violation(rel: &BooleanRelation, op: &TotalOperation) -> Option<TotalViolation> {
    let members: Vec<usize> = rel.members().collect();
    if members.is_empty() {
        return None;
    }
    let k = rel.arity();
    let arity = op.arity();
    let mut picks = vec![0usize; arity];
    let mut args = vec![0u8; arity];
    loop {
        let mut out = 0usize;
        for c in 0..k {
            let shift = k - 1 - c;
            for (a, &p) in args.iter_mut().zip(&picks) {
                *a = ((members[p] >> shift) & 1) as u8;
            }
            out = (out << 1) | op.apply(&args) as usize;
        }
        if !rel.contains_index(out) {
            return Some(TotalViolation {
                inputs: picks.iter().map(|&p| tuple::from_index(members[p], k)).collect(),
                output: tuple::from_index(out, k),
            });
        }
        // odometer, last position fastest
        let mut pos = arity;
        loop {
            if pos == 0 {
                return None;
            }
            pos -= 1;
            picks[pos] += 1;
            if picks[pos] < members.len() {
                break;
            }
            picks[pos] = 0;
        }
    }
}

pub fn preserved_by_total(rel: &BooleanRelation, op: &TotalOperation) -> bool {
    find_total_violation(rel, op).is_none()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum OperationVerdict {
    Preserves,
    Violated {
        relation: String,
        #[serde(flatten)]
        violation: TotalViolation,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OperationWitness {
    pub operation: &'static str,
    #[serde(flatten)]
    pub verdict: OperationVerdict,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SchaeferReport {
    pub tractable: bool,
    pub operations: Vec<OperationWitness>,
}

pub fn schaefer_report(lang: &ConstraintLanguage) -> SchaeferReport {
    let operations: Vec<OperationWitness> = TotalOperation::schaefer_set()
        .iter()
        .map(|op| {
            let verdict = lang
                .relations()
                .iter()
                .find_map(|r| {
                    find_total_violation(r, op).map(|violation| OperationVerdict::Violated {
                        relation: r.name().to_string(),
                        violation,
                    })
                })
                .unwrap_or(OperationVerdict::Preserves);
            OperationWitness {
                operation: op.name(),
                verdict,
            }
        })
        .collect();
    SchaeferReport {
        tractable: operations
            .iter()
            .any(|w| w.verdict == OperationVerdict::Preserves),
        operations,
    }
}

/// Member tuples `t1..tm` whose alternating sum `t1 - t2 + ... + tm` is a
/// 0/1 tuple outside the relation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AlternatingCounterexample {
    #[serde(serialize_with = "tuple::serialize_many")]
    pub sequence: Vec<Tuple>,
    #[serde(serialize_with = "tuple::serialize_one")]
    pub sum: Tuple,
}

/// Checks preservation by the alternating operation of odd arity `m`.
///
/// Sequences are explored depth-first in lexicographic order, so the first
/// counterexample found is the lexicographically smallest. Partial sums that
/// cannot reach a 0/1 vector are pruned, and (depth, partial sum) states that
/// already failed are memoized.
pub fn preserved_by_alternating(
    rel: &BooleanRelation,
    m: usize,
) -> Result<Option<AlternatingCounterexample>> {
    if m % 2 == 0 {
        return Err(Error::Precondition(format!(
            "alternating operation arity must be odd, got {m}"
        )));
    }
    let members = rel.member_tuples();
    if members.is_empty() {
        return Ok(None);
    }
    let mut search = AlternatingSearch {
        rel,
        members: &members,
        m,
        dead: HashSet::new(),
        picks: Vec::with_capacity(m),
    };
    let mut sum = vec![0i32; rel.arity()];
    if search.descend(&mut sum) {
        let sequence = search.picks.iter().map(|&p| members[p].clone()).collect();
        let sum = sum.iter().map(|&v| v as u8).collect();
        return Ok(Some(AlternatingCounterexample { sequence, sum }));
    }
    Ok(None)
}

struct AlternatingSearch<'a> {
    rel: &'a BooleanRelation,
    members: &'a [Tuple],
    m: usize,
    dead: HashSet<(usize, Vec<i32>)>,
    picks: Vec<usize>,
}

impl AlternatingSearch<'_> {
    /// On success `sum` holds the final sum and `picks` the sequence.
    fn descend(&mut self, sum: &mut Vec<i32>) -> bool {
        let depth = self.picks.len();
        if depth == self.m {
            if sum.iter().all(|&v| v == 0 || v == 1) {
                let t: Vec<u8> = sum.iter().map(|&v| v as u8).collect();
                return !self.rel.contains(&t);
            }
            return false;
        }
        // positions depth..m: even positions add, odd subtract
        let remaining_plus = (self.m - depth + 1 - depth % 2) / 2;
        let remaining_minus = self.m - depth - remaining_plus;
        let reachable = sum
            .iter()
            .all(|&v| v + remaining_plus as i32 >= 0 && v - remaining_minus as i32 <= 1);
        if !reachable {
            return false;
        }
        if self.dead.contains(&(depth, sum.clone())) {
            return false;
        }
        let sign = if depth % 2 == 0 { 1 } else { -1 };
        for p in 0..self.members.len() {
            for (s, &b) in sum.iter_mut().zip(&self.members[p]) {
                *s += sign * b as i32;
            }
            self.picks.push(p);
            if self.descend(sum) {
                return true;
            }
            self.picks.pop();
            for (s, &b) in sum.iter_mut().zip(&self.members[p]) {
                *s -= sign * b as i32;
            }
        }
        self.dead.insert((depth, sum.clone()));
        false
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WeightSpectrum {
    pub arity: usize,
    /// Exact set of satisfying weights when symmetric; otherwise the weights
    /// carried by at least one member.
    pub satisfying_weights: Vec<usize>,
    pub is_symmetric: bool,
}

impl WeightSpectrum {
    /// Weights in `0..=arity` that are not satisfying.
    pub fn unsatisfying_weights(&self) -> Vec<usize> {
        (0..=self.arity)
            .filter(|w| !self.satisfying_weights.contains(w))
            .collect()
    }
}

pub fn weight_spectrum(rel: &BooleanRelation) -> WeightSpectrum {
    let k = rel.arity();
    let mut has_member = vec![false; k + 1];
    let mut has_non_member = vec![false; k + 1];
    for i in 0..rel.universe() {
        let w = i.count_ones() as usize;
        if rel.contains_index(i) {
            has_member[w] = true;
        } else {
            has_non_member[w] = true;
        }
    }
    WeightSpectrum {
        arity: k,
        satisfying_weights: (0..=k).filter(|&w| has_member[w]).collect(),
        is_symmetric: (0..=k).all(|w| !(has_member[w] && has_non_member[w])),
    }
}

/// Symmetric relation with the given satisfying weights.
pub fn symmetric_relation(name: impl Into<String>, arity: usize, weights: &[usize]) -> Result<BooleanRelation> {
    check_arity(arity)?;
    BooleanRelation::from_indices(
        name,
        arity,
        (0..1usize << arity).filter(|i| weights.contains(&(i.count_ones() as usize))),
    )
}

/// Frequently used relations.
pub mod catalog {
    use super::*;

    pub fn one_in_three() -> BooleanRelation {
        symmetric_relation("R1IN3", 3, &[1]).expect("arity 3 is valid")
    }

    pub fn nae3() -> BooleanRelation {
        symmetric_relation("NAE3", 3, &[1, 2]).expect("arity 3 is valid")
    }

    pub fn equality() -> BooleanRelation {
        BooleanRelation::from_tuples("EQ", 2, [[0, 0], [1, 1]]).expect("valid tuples")
    }

    /// `{(0,0), (0,1), (1,1)}`, the truth table of `a -> b`.
    pub fn implication() -> BooleanRelation {
        BooleanRelation::from_tuples("IMPL", 2, [[0, 0], [0, 1], [1, 1]]).expect("valid tuples")
    }

    /// `{0,1}^k` minus the single tuple `excluded`.
    pub fn or_variant(excluded: &[u8]) -> BooleanRelation {
        let k = excluded.len();
        let skip = tuple::index_of(excluded);
        BooleanRelation::from_indices(
            format!("OR{}_{}", k, tuple::format(excluded)),
            k,
            (0..1usize << k).filter(|&i| i != skip),
        )
        .expect("valid arity")
    }
}

#[cfg(test)]
mod tests {
    use super::catalog::*;
    use super::*;

    /// Second enumeration order: recursive, first position fastest.
    fn brute_preserved(rel: &BooleanRelation, op: &TotalOperation) -> bool {
        fn rec(rel: &BooleanRelation, op: &TotalOperation, chosen: &mut Vec<Tuple>, members: &[Tuple]) -> bool {
            if chosen.len() == op.arity() {
                let out: Vec<u8> = (0..rel.arity())
                    .map(|c| op.apply(&chosen.iter().map(|t| t[c]).collect::<Vec<_>>()))
                    .collect();
                return rel.contains(&out);
            }
            for t in members.iter().rev() {
                chosen.push(t.clone());
                let ok = rec(rel, op, chosen, members);
                chosen.pop();
                if !ok {
                    return false;
                }
            }
            true
        }
        rec(rel, op, &mut Vec::new(), &rel.member_tuples())
    }

    #[test]
    fn tuple_encoding_is_msb_first() {
        let r = BooleanRelation::from_tuples("R", 3, [[1, 0, 0]]).unwrap();
        assert!(r.contains_index(4));
        assert_eq!(r.member_tuples(), vec![vec![1, 0, 0]]);
    }

    #[test]
    fn implication_preserved_by_and() {
        assert!(preserved_by_total(&implication(), &TotalOperation::and()));
    }

    #[test]
    fn one_in_three_not_preserved_by_majority() {
        let v = find_total_violation(&one_in_three(), &TotalOperation::majority()).unwrap();
        // first triple in lexicographic order whose majority leaves R
        assert_eq!(v.inputs, vec![vec![0, 0, 1], vec![0, 1, 0], vec![1, 0, 0]]);
        assert_eq!(v.output, vec![0, 0, 0]);
    }

    #[test]
    fn full_and_empty_preserved_by_everything() {
        for k in 1..=4 {
            let full = BooleanRelation::full("F", k).unwrap();
            let empty = BooleanRelation::empty("E", k).unwrap();
            for op in TotalOperation::schaefer_set() {
                assert!(preserved_by_total(&full, &op));
                assert!(preserved_by_total(&empty, &op));
            }
            for m in [1, 3, 5] {
                assert!(preserved_by_alternating(&full, m).unwrap().is_none());
                assert!(preserved_by_alternating(&empty, m).unwrap().is_none());
            }
        }
    }

    #[test]
    fn schaefer_examples() {
        let lang = ConstraintLanguage::new(vec![one_in_three()]).unwrap();
        let rep = schaefer_report(&lang);
        assert!(!rep.tractable);
        assert!(rep.operations.iter().all(|w| w.verdict != OperationVerdict::Preserves));

        let lang = ConstraintLanguage::new(vec![nae3()]).unwrap();
        let rep = schaefer_report(&lang);
        assert!(!rep.tractable);
        let and = rep.operations.iter().find(|w| w.operation == "and").unwrap();
        match &and.verdict {
            OperationVerdict::Violated { violation, .. } => {
                assert!(!nae3().contains(&violation.output));
            }
            _ => panic!("and should fail on NAE3"),
        }
        // (1,0,0) and (0,1,0) give (0,0,0)
        let and = TotalOperation::and();
        let out: Vec<u8> = (0..3).map(|c| and.apply(&[[1, 0, 0][c], [0, 1, 0][c]])).collect();
        assert!(!nae3().contains(&out));

        let lang = ConstraintLanguage::new(vec![implication()]).unwrap();
        assert!(schaefer_report(&lang).tractable);
    }

    #[test]
    fn alternating_examples() {
        let or2 = BooleanRelation::k_or(2).unwrap();
        let ce = preserved_by_alternating(&or2, 3).unwrap().unwrap();
        assert_eq!(ce.sequence, vec![vec![0, 1], vec![1, 1], vec![1, 0]]);
        assert_eq!(ce.sum, vec![0, 0]);

        assert!(preserved_by_alternating(&one_in_three(), 3).unwrap().is_none());

        let ce = preserved_by_alternating(&implication(), 3).unwrap().unwrap();
        assert_eq!(ce.sequence, vec![vec![0, 0], vec![0, 1], vec![1, 1]]);
        assert_eq!(ce.sum, vec![1, 0]);

        assert!(preserved_by_alternating(&or2, 2).is_err());
    }

    #[test]
    fn weight_spectrum_examples() {
        let s = weight_spectrum(&nae3());
        assert!(s.is_symmetric);
        assert_eq!(s.satisfying_weights, vec![1, 2]);
        let s = weight_spectrum(&one_in_three());
        assert!(s.is_symmetric);
        assert_eq!(s.satisfying_weights, vec![1]);
        let s = weight_spectrum(&implication());
        assert!(!s.is_symmetric);
    }

    #[test]
    fn total_preservation_matches_second_enumeration() {
        for k in 1..=3 {
            for mask in 0..1u64 << (1 << k) {
                let rel = BooleanRelation::from_indices("R", k, (0..1 << k).filter(|i| mask >> i & 1 == 1)).unwrap();
                for op in TotalOperation::schaefer_set() {
                    assert_eq!(preserved_by_total(&rel, &op), brute_preserved(&rel, &op), "{rel:?} {}", op.name());
                }
            }
        }
    }

    #[test]
    fn restrict_drops_coordinate() {
        let r = BooleanRelation::from_tuples("R", 3, [[1, 0, 1], [0, 1, 1], [1, 1, 0]]).unwrap();
        let r1 = r.restrict(0, 1).unwrap();
        assert_eq!(r1.member_tuples(), vec![vec![0, 1], vec![1, 0]]);
    }

    #[test]
    fn language_rejects_duplicates_and_empty() {
        assert!(matches!(ConstraintLanguage::new(vec![]), Err(Error::EmptyLanguage)));
        assert!(matches!(
            ConstraintLanguage::new(vec![nae3(), nae3()]),
            Err(Error::DuplicateRelation(_))
        ));
    }

    #[test]
    fn arity_bounds() {
        assert!(BooleanRelation::empty("R", 0).is_err());
        assert!(BooleanRelation::empty("R", 17).is_err());
        assert!(BooleanRelation::empty("R", 16).is_ok());
    }
}
