//! Language files:
//!
//! ```text
//! # exactly one true
//! relation R1IN3 3
//! 100
//! 010
//! 001
//! ```
//!
//! A `relation NAME K` directive opens a block; each following line is one
//! member tuple written as K characters 0/1, coordinate 1 first. A blank line
//! closes the block. A block with no tuple lines declares the empty relation.

use std::collections::HashSet;
use std::fmt::Write as _;
use std::path::Path;

use super::{parse_count, tokens};
use crate::config::HARD_MAX_ARITY;
use crate::error::{ParseError, Result};
use crate::relation::{BooleanRelation, ConstraintLanguage};
use crate::tuple;

struct Block {
    name: String,
    arity: usize,
    members: Vec<usize>,
    seen: HashSet<usize>,
}

impl Block {
    fn finish(self) -> BooleanRelation {
        BooleanRelation::from_indices(self.name, self.arity, self.members).expect("indices checked while parsing")
    }
}

pub fn parse_language(text: &str) -> Result<ConstraintLanguage> {
    parse_language_with(text, HARD_MAX_ARITY)
}

/// Like [`parse_language`] but rejects arities above `max_arity`.
pub fn parse_language_with(text: &str, max_arity: usize) -> Result<ConstraintLanguage> {
    let max_arity = max_arity.min(HARD_MAX_ARITY);
    let mut relations = Vec::new();
    let mut names = HashSet::new();
    let mut open: Option<Block> = None;
    let mut line_count = 0;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        line_count = line;
        let toks = tokens(raw);
        if toks.is_empty() {
            // comment-only lines do not close a block
            if raw.trim().is_empty() {
                if let Some(b) = open.take() {
                    relations.push(b.finish());
                }
            }
            continue;
        }
        let (col, first) = toks[0];
        if first == "relation" {
            if let Some(b) = open.take() {
                relations.push(b.finish());
            }
            if toks.len() != 3 {
                let at = toks.get(3).map_or(col, |t| t.0);
                return Err(ParseError::new(line, at, "expected `relation NAME ARITY`").into());
            }
            let (name_col, name) = toks[1];
            let (arity_col, arity_tok) = toks[2];
            let arity = parse_count(line, arity_col, arity_tok, "arity")?;
            if arity == 0 || arity > max_arity {
                return Err(ParseError::new(
                    line,
                    arity_col,
                    format!("arity {arity} outside the supported range 1..={max_arity}"),
                )
                .into());
            }
            if !names.insert(name.to_string()) {
                return Err(ParseError::new(line, name_col, format!("duplicate relation name `{name}`")).into());
            }
            open = Some(Block {
                name: name.to_string(),
                arity,
                members: Vec::new(),
                seen: HashSet::new(),
            });
            continue;
        }
        let Some(block) = open.as_mut() else {
            return Err(ParseError::new(line, col, format!("expected a `relation` directive, found `{first}`")).into());
        };
        if toks.len() > 1 {
            return Err(ParseError::new(line, toks[1].0, "a tuple line holds a single 0/1 string").into());
        }
        let mut index = 0usize;
        let mut len = 0;
        for (offset, c) in first.chars().enumerate() {
            let bit = match c {
                '0' => 0,
                '1' => 1,
                _ => {
                    return Err(ParseError::new(line, col + offset, format!("expected 0 or 1, found `{c}`")).into());
                }
            };
            len += 1;
            if len > block.arity {
                break;
            }
            index = (index << 1) | bit;
        }
        if len != block.arity {
            return Err(ParseError::new(
                line,
                col,
                format!("tuple `{first}` has length {}, relation {} has arity {}", first.chars().count(), block.name, block.arity),
            )
            .into());
        }
        if !block.seen.insert(index) {
            return Err(ParseError::new(line, col, format!("duplicate tuple `{first}` in relation {}", block.name)).into());
        }
        block.members.push(index);
    }
    if let Some(b) = open.take() {
        relations.push(b.finish());
    }
    if relations.is_empty() {
        return Err(ParseError::new(line_count.max(1), 1, "no relations declared").into());
    }
    ConstraintLanguage::new(relations)
}

pub fn load_language(path: impl AsRef<Path>, max_arity: usize) -> Result<ConstraintLanguage> {
    let text = std::fs::read_to_string(path)?;
    parse_language_with(&text, max_arity)
}

/// Members are listed in lexicographic order; blocks are separated by blank lines.
pub fn write_language(lang: &ConstraintLanguage) -> String {
    let mut out = String::new();
    for (i, rel) in lang.relations().iter().enumerate() {
        if i > 0 {
            out.push('\n');
        }
        let _ = writeln!(out, "relation {} {}", rel.name(), rel.arity());
        for m in rel.members() {
            out.push_str(&tuple::format_index(m, rel.arity()));
            out.push('\n');
        }
    }
    out
}
