use std::fmt;

use thiserror::Error;

/// Location-tagged failure while reading a language or instance file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(line: usize, column: usize, message: impl Into<String>) -> Self {
        ParseError {
            line,
            column,
            message: message.into(),
        }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.column, self.message)
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error at {0}")]
    Parse(#[from] ParseError),

    #[error("arity {arity} outside the supported range 1..={max}")]
    ArityOutOfRange { arity: usize, max: usize },

    #[error("member bit set has {found} bits, expected {expected}")]
    MemberCount { expected: usize, found: usize },

    #[error("duplicate relation name `{0}`")]
    DuplicateRelation(String),

    #[error("constraint language has no relations")]
    EmptyLanguage,

    #[error("relation `{0}` is not declared in the language")]
    UnknownRelation(String),

    #[error("relation `{relation}` has arity {expected}, constraint supplies {found} variables")]
    ConstraintArity {
        relation: String,
        expected: usize,
        found: usize,
    },

    #[error("variable {var} outside 1..={num_vars}")]
    VariableOutOfRange { var: usize, num_vars: usize },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("{0} is not a prime power")]
    NotPrimePower(u64),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("budget exceeded: {needed} assignments required, budget is {budget}")]
    BudgetExceeded { needed: u128, budget: u64 },

    #[error("search capped: {0}")]
    Capped(String),

    #[error("invalid symbol in cone definition: {0}")]
    InvalidSymbol(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
