//! Instance files: a `csp N` header, then one constraint per line as
//! `NAME v1 ... vk` with variables numbered from 1.

use std::fmt::Write as _;
use std::path::Path;

use super::{parse_count, tokens};
use crate::error::{ParseError, Result};
use crate::instance::{Constraint, CspInstance};
use crate::relation::ConstraintLanguage;

pub fn parse_instance(text: &str, lang: &ConstraintLanguage) -> Result<CspInstance> {
    let mut num_vars = None;
    let mut constraints = Vec::new();
    let mut line_count = 0;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        line_count = line;
        let toks = tokens(raw);
        let Some(&(col, first)) = toks.first() else {
            continue;
        };
        let Some(n) = num_vars else {
            if first != "csp" || toks.len() != 2 {
                return Err(ParseError::new(line, col, "expected header `csp N`").into());
            }
            num_vars = Some(parse_count(line, toks[1].0, toks[1].1, "variable count")?);
            continue;
        };
        if first == "csp" {
            return Err(ParseError::new(line, col, "repeated `csp` header").into());
        }
        let rel = lang
            .get(first)
            .ok_or_else(|| ParseError::new(line, col, format!("relation `{first}` is not declared in the language")))?;
        let args = &toks[1..];
        if args.len() != rel.arity() {
            let at = args.get(rel.arity()).map_or(col, |t| t.0);
            return Err(ParseError::new(
                line,
                at,
                format!("relation `{first}` has arity {}, constraint supplies {} variables", rel.arity(), args.len()),
            )
            .into());
        }
        let mut vars = Vec::with_capacity(args.len());
        for &(vcol, tok) in args {
            let v = parse_count(line, vcol, tok, "variable")?;
            if v == 0 || v > n {
                return Err(ParseError::new(line, vcol, format!("variable {v} outside 1..={n}")).into());
            }
            vars.push(v);
        }
        constraints.push(Constraint::new(first, vars));
    }
    match num_vars {
        Some(n) => Ok(CspInstance::new(n, constraints)),
        None => Err(ParseError::new(line_count.max(1), 1, "missing header `csp N`").into()),
    }
}

pub fn load_instance(path: impl AsRef<Path>, lang: &ConstraintLanguage) -> Result<CspInstance> {
    let text = std::fs::read_to_string(path)?;
    parse_instance(&text, lang)
}

/// Constraints are written in instance order.
pub fn write_instance(inst: &CspInstance) -> String {
    let mut out = format!("csp {}\n", inst.num_vars);
    for c in &inst.constraints {
        out.push_str(&c.relation);
        for v in &c.vars {
            let _ = write!(out, " {v}");
        }
        out.push('\n');
    }
    out
}

pub fn save_instance(inst: &CspInstance, path: impl AsRef<Path>) -> Result<()> {
    std::fs::write(path, write_instance(inst))?;
    Ok(())
}
