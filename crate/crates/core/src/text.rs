//! Line-oriented HUBO text format.
//!
//! ```text
//! # comment
//! -1 x1          monomial: signed integer coefficient followed by variables
//! +1 x1 x2 x3
//! 36             bare integer: constant term
//! ```
//!
//! Variables are indexed in order of first appearance. The serializer starts
//! with a zero-coefficient line naming every variable so that the index order
//! survives a round trip.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt::Write;

use crate::error::HuboError;
use crate::polynomial::{is_identifier, Polynomial, PolynomialBuilder};

/// Parses HUBO source text into a canonical polynomial.
pub fn parse_hubo(text: &str) -> Result<Polynomial, HuboError> {
    let mut builder = PolynomialBuilder::new();
    for (line_no, raw) in text.lines().enumerate() {
        let line_no = line_no + 1;
        let body = raw.split('#').next().unwrap_or("");
        let mut tokens = tokens_with_columns(body);
        let Some((col, coeff_tok)) = tokens.next() else {
            continue;
        };
        let coefficient = parse_coefficient(coeff_tok, line_no, col)?;
        let mut names = Vec::new();
        for (col, tok) in tokens {
            if !is_identifier(tok) {
                return Err(HuboError::Syntax {
                    line: line_no,
                    column: col,
                    message: format!("expected a variable name, found `{tok}`"),
                });
            }
            names.push(tok);
        }
        builder.add_term(coefficient, &names)?;
    }
    Ok(builder.build())
}

fn tokens_with_columns(line: &str) -> impl Iterator<Item = (usize, &str)> {
    let mut rest = line;
    let mut offset = 0;
    core::iter::from_fn(move || {
        let trimmed = rest.trim_start();
        offset += rest.len() - trimmed.len();
        if trimmed.is_empty() {
            return None;
        }
        let end = trimmed.find(char::is_whitespace).unwrap_or(trimmed.len());
        let token = &trimmed[..end];
        let column = line[..offset].chars().count() + 1;
        offset += end;
        rest = &trimmed[end..];
        Some((column, token))
    })
}

fn parse_coefficient(tok: &str, line: usize, column: usize) -> Result<i64, HuboError> {
    let digits = tok.strip_prefix(['+', '-']).unwrap_or(tok);
    if !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit()) {
        return tok.parse::<i64>().map_err(|_| HuboError::Syntax {
            line,
            column,
            message: format!("coefficient `{tok}` is out of range"),
        });
    }
    let numeric_like = !digits.is_empty()
        && digits.starts_with(|c: char| c.is_ascii_digit() || c == '.')
        && digits
            .chars()
            .all(|c| c.is_ascii_digit() || matches!(c, '.' | '/' | 'e' | 'E' | '+' | '-'));
    if numeric_like {
        Err(HuboError::NonInteger {
            line,
            column,
            token: tok.to_string(),
        })
    } else {
        Err(HuboError::Syntax {
            line,
            column,
            message: format!("expected a signed integer coefficient, found `{tok}`"),
        })
    }
}

/// Canonical text form: declaration line, terms by (order, variable index), constant.
pub fn to_hubo_string(p: &Polynomial) -> String {
    let mut out = String::new();
    if p.num_vars() > 0 {
        out.push_str("# variables in index order\n0");
        for name in p.names() {
            out.push(' ');
            out.push_str(name);
        }
        out.push('\n');
    }
    for m in p.terms() {
        let _ = write!(out, "{:+}", m.coefficient);
        for v in &m.vars {
            out.push(' ');
            out.push_str(p.name(*v));
        }
        out.push('\n');
    }
    if p.constant() != 0 {
        let _ = writeln!(out, "{:+}", p.constant());
    }
    out
}
