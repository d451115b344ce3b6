//! Text formats for languages and instances, and report rendering.

mod instance;
mod language;
pub mod report;

pub use instance::{load_instance, parse_instance, save_instance, write_instance};
pub use language::{load_language, parse_language, parse_language_with, write_language};
pub use report::{render, ReportBody, ReportFormat};

use crate::error::ParseError;

/// Whitespace-separated tokens with their 1-based starting columns.
/// Everything from the first `#` on is a comment.
pub(crate) fn tokens(line: &str) -> Vec<(usize, &str)> {
    let content = match line.find('#') {
        Some(i) => &line[..i],
        None => line,
    };
    let mut out = Vec::new();
    let mut start = None;
    for (col, (i, c)) in content.char_indices().enumerate() {
        match (c.is_whitespace(), start) {
            (false, None) => start = Some((col + 1, i)),
            (true, Some((scol, si))) => {
                out.push((scol, &content[si..i]));
                start = None;
            }
            _ => {}
        }
    }
    if let Some((scol, si)) = start {
        out.push((scol, &content[si..]));
    }
    out
}

pub(crate) fn parse_count(line: usize, col: usize, token: &str, what: &str) -> Result<usize, ParseError> {
    if !token.bytes().all(|b| b.is_ascii_digit()) {
        return Err(ParseError::new(line, col, format!("{what} must be a non-negative integer, found `{token}`")));
    }
    token
        .parse()
        .map_err(|_| ParseError::new(line, col, format!("{what} `{token}` is too large")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn token_columns() {
        assert_eq!(tokens("  ab\tc  # d e"), vec![(3, "ab"), (6, "c")]);
        assert_eq!(tokens("# only"), Vec::<(usize, &str)>::new());
        assert_eq!(tokens("é x"), vec![(1, "é"), (3, "x")]);
    }
}
