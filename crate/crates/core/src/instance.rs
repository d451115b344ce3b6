//! CSP instances: a variable count and an ordered list of constraints.

use std::collections::HashSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::relation::ConstraintLanguage;

/// `relation(x_{vars[0]}, ..., x_{vars[k-1]})` with variables numbered from 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Constraint {
    pub relation: String,
    pub vars: Vec<usize>,
}

impl Constraint {
    pub fn new(relation: impl Into<String>, vars: Vec<usize>) -> Self {
        Constraint {
            relation: relation.into(),
            vars,
        }
    }

    /// Values of the constraint's variables under `assignment` (variable 1 first).
    pub fn project(&self, assignment: &[u8]) -> Vec<u8> {
        self.vars.iter().map(|&v| assignment[v - 1]).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CspInstance {
    pub num_vars: usize,
    pub constraints: Vec<Constraint>,
}

impl CspInstance {
    pub fn new(num_vars: usize, constraints: Vec<Constraint>) -> Self {
        CspInstance {
            num_vars,
            constraints,
        }
    }

    pub fn len(&self) -> usize {
        self.constraints.len()
    }

    pub fn is_empty(&self) -> bool {
        self.constraints.is_empty()
    }

    /// Checks relation names, arities and variable ranges against `lang`.
    pub fn validate(&self, lang: &ConstraintLanguage) -> Result<()> {
        for c in &self.constraints {
            let rel = lang
                .get(&c.relation)
                .ok_or_else(|| Error::UnknownRelation(c.relation.clone()))?;
            if rel.arity() != c.vars.len() {
                return Err(Error::ConstraintArity {
                    relation: c.relation.clone(),
                    expected: rel.arity(),
                    found: c.vars.len(),
                });
            }
            if let Some(&var) = c.vars.iter().find(|&&v| v == 0 || v > self.num_vars) {
                return Err(Error::VariableOutOfRange {
                    var,
                    num_vars: self.num_vars,
                });
            }
        }
        Ok(())
    }

    /// The constraints at `positions` (increasing), same variable count.
    pub fn subset(&self, positions: &[usize]) -> CspInstance {
        CspInstance {
            num_vars: self.num_vars,
            constraints: positions.iter().map(|&i| self.constraints[i].clone()).collect(),
        }
    }

    /// Positions of the first occurrence of every distinct constraint.
    pub fn first_occurrences(&self) -> Vec<usize> {
        let mut seen = HashSet::new();
        (0..self.constraints.len())
            .filter(|&i| seen.insert(&self.constraints[i]))
            .collect()
    }
}
