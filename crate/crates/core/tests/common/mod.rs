//! Shared fixtures for the integration tests.

#![allow(dead_code)]

pub mod schema;

use rand::Rng;

use cspk::instance::{Constraint, CspInstance};
use cspk::relation::{catalog, BooleanRelation, ConstraintLanguage};

pub fn language(rels: Vec<BooleanRelation>) -> ConstraintLanguage {
    ConstraintLanguage::new(rels).expect("distinct names")
}

/// The fixed catalog: name plus language.
pub fn catalog_languages() -> Vec<(&'static str, ConstraintLanguage)> {
    let or2_variants = [[0u8, 0], [0, 1], [1, 0], [1, 1]]
        .iter()
        .map(|t| catalog::or_variant(t))
        .collect();
    vec![
        ("1-in-3", language(vec![catalog::one_in_three()])),
        ("NAE-3", language(vec![catalog::nae3()])),
        ("2-OR variants", language(or2_variants)),
        ("equality", language(vec![catalog::equality()])),
        ("implication", language(vec![catalog::implication()])),
    ]
}

pub fn random_relation<R: Rng>(rng: &mut R, name: &str, arity: usize) -> BooleanRelation {
    let members: Vec<usize> = (0..1usize << arity).filter(|_| rng.gen_bool(0.5)).collect();
    BooleanRelation::from_indices(name, arity, members).unwrap()
}

/// One to three relations of arity 1..=max_arity.
pub fn random_language<R: Rng>(rng: &mut R, max_arity: usize) -> ConstraintLanguage {
    let count = rng.gen_range(1..=3);
    let rels = (0..count)
        .map(|i| {
            let arity = rng.gen_range(1..=max_arity);
            random_relation(rng, &format!("R{i}"), arity)
        })
        .collect();
    language(rels)
}

/// `m` constraints with uniformly random relations and variables; variables
/// may repeat inside a constraint and constraints may repeat.
pub fn random_instance<R: Rng>(rng: &mut R, lang: &ConstraintLanguage, n: usize, m: usize) -> CspInstance {
    let rels = lang.relations();
    let constraints = (0..m)
        .map(|_| {
            let r = &rels[rng.gen_range(0..rels.len())];
            let vars = (0..r.arity()).map(|_| rng.gen_range(1..=n)).collect();
            Constraint::new(r.name(), vars)
        })
        .collect();
    CspInstance::new(n, constraints)
}

/// Every ordered tuple of `k` distinct variables from `1..=n`.
pub fn all_distinct_tuples(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn go(n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for v in 1..=n {
            if !cur.contains(&v) {
                cur.push(v);
                go(n, k, cur, out);
                cur.pop();
            }
        }
    }
    go(n, k, &mut cur, &mut out);
    out
}

pub fn dense_instance(rel: &BooleanRelation, n: usize) -> CspInstance {
    let constraints = all_distinct_tuples(n, rel.arity())
        .into_iter()
        .map(|vars| Constraint::new(rel.name(), vars))
        .collect();
    CspInstance::new(n, constraints)
}

/// Every relation of the given arity, in order of member bit patterns.
pub fn all_relations(arity: usize) -> impl Iterator<Item = BooleanRelation> {
    let size = 1usize << arity;
    (0u64..1u64 << size).map(move |bits| {
        BooleanRelation::from_indices(format!("R{bits}"), arity, (0..size).filter(|i| bits >> i & 1 == 1)).unwrap()
    })
}
