//! Text format for supermatrices and linear systems.
//!
//! ```text
//! # Cramer example over SL(1|1)
//! matrix 1|1
//! row x[1,1] | al[1,1]
//! row be[1,1] | y[1,1]
//! rhs x[1,2] | al[1,2]
//! ```
//!
//! `matrix r|s` declares a square matrix; `matrix r|s x p|q` a rectangular
//! one. Each `row` lists entries separated by `,` or `|`. The optional
//! `rhs` line is a column vector, one entry per row. Generators `x[..]`,
//! `y[..]` are even and `al[..]`, `be[..]` odd; the ring consists of the
//! generators that occur.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::expr::{parse_expression, Expr, Resolver};
use crate::minors::MinorSymbol;
use crate::superscalar::{generator, Ring, RingContext, Scalar};
use crate::supermatrix::{ParitySignature, SuperMatrix};

#[derive(Clone, Debug)]
pub struct LinearSystem {
    pub ring: Ring,
    pub matrix: SuperMatrix<Scalar>,
    pub rhs: Option<Vec<Scalar>>,
}

/// Resolves named generators of a declared ring; minors are rejected.
pub struct RingResolver<'a> {
    pub ring: &'a Ring,
}

impl Resolver for RingResolver<'_> {
    type Value = Scalar;

    fn ctx(&self) -> Ring {
        self.ring.clone()
    }

    fn minor(&self, m: &MinorSymbol) -> Result<Scalar> {
        Err(Error::Invalid(format!("minor {m} inside a matrix entry")))
    }

    fn generator(&self, name: &str) -> Result<Scalar> {
        generator(self.ring, name)
    }
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Syntax { line, column, message: message.into() }
}

/// Shifts an error from a single-entry parse to its place in the file.
fn relocate(e: Error, line: usize, offset: usize) -> Error {
    match e {
        Error::Syntax { line: 1, column, message } => syntax(line, column + offset, message),
        other => other,
    }
}

fn parse_signature(text: &str, line: usize, column: usize) -> Result<ParitySignature> {
    let (e, o) = text.split_once('|').ok_or_else(|| syntax(line, column, "expected r|s"))?;
    let num = |s: &str| s.trim().parse::<usize>().map_err(|_| syntax(line, column, format!("bad size `{s}`")));
    Ok(ParitySignature::new(num(e)?, num(o)?))
}

/// Splits at `,` and `|` outside brackets, returning pieces with their
/// byte offsets.
fn split_entries(text: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (k, ch) in text.char_indices() {
        match ch {
            '[' | '(' => depth += 1,
            ']' | ')' => depth -= 1,
            ',' | '|' if depth == 0 => {
                out.push((start, &text[start..k]));
                start = k + 1;
            }
            _ => {}
        }
    }
    out.push((start, &text[start..]));
    out
}

pub fn parse_system(text: &str) -> Result<LinearSystem> {
    let mut shape: Option<(ParitySignature, ParitySignature, usize)> = None;
    let mut rows: Vec<(usize, usize, &str)> = Vec::new();
    let mut rhs: Option<(usize, usize, &str)> = None;
    for (n, raw) in text.lines().enumerate() {
        let line = n + 1;
        let content = raw.split('#').next().unwrap_or("");
        let trimmed = content.trim_start();
        if trimmed.is_empty() {
            continue;
        }
        let indent = content.len() - trimmed.len();
        let (keyword, rest) = trimmed.split_once(char::is_whitespace).unwrap_or((trimmed, ""));
        let rest_col = indent + keyword.len() + 2;
        match keyword {
            "matrix" => {
                let (rows_sig, cols_sig) = match rest.split_once('x') {
                    Some((a, b)) => (parse_signature(a, line, rest_col)?, parse_signature(b, line, rest_col)?),
                    None => {
                        let sig = parse_signature(rest, line, rest_col)?;
                        (sig, sig)
                    }
                };
                shape = Some((rows_sig, cols_sig, line));
            }
            "row" => rows.push((line, rest_col, rest)),
            "rhs" => rhs = Some((line, rest_col, rest)),
            other => return Err(syntax(line, indent + 1, format!("unknown keyword `{other}`"))),
        }
    }
    let (rows_sig, cols_sig, _) = shape.ok_or_else(|| syntax(1, 1, "missing `matrix` line"))?;
    let read_entries = |line: usize, col: usize, text: &str| -> Result<Vec<Expr>> {
        split_entries(text)
            .into_iter()
            .map(|(offset, piece)| parse_expression(piece).map_err(|e| relocate(e, line, col + offset - 1)))
            .collect()
    };
    if rows.len() != rows_sig.len() {
        return Err(Error::Dimension(format!("expected {} rows, found {}", rows_sig.len(), rows.len())));
    }
    let mut exprs = Vec::new();
    for &(line, col, text) in &rows {
        let row = read_entries(line, col, text)?;
        if row.len() != cols_sig.len() {
            return Err(syntax(line, col, format!("expected {} entries, found {}", cols_sig.len(), row.len())));
        }
        exprs.extend(row);
    }
    let rhs_exprs = match rhs {
        None => None,
        Some((line, col, text)) => {
            let v = read_entries(line, col, text)?;
            if v.len() != rows_sig.len() {
                return Err(syntax(line, col, format!("expected {} entries, found {}", rows_sig.len(), v.len())));
            }
            Some(v)
        }
    };
    let mut even = BTreeSet::new();
    let mut odd = BTreeSet::new();
    for e in exprs.iter().chain(rhs_exprs.iter().flatten()) {
        e.walk(&mut |node| {
            if let Expr::Gen(name) = node {
                if name.starts_with("al") || name.starts_with("be") {
                    odd.insert(name.clone());
                } else {
                    even.insert(name.clone());
                }
            }
        });
    }
    let even: Vec<String> = even.into_iter().collect();
    let odd: Vec<String> = odd.into_iter().collect();
    let ring = RingContext::declare(&even, &odd)?;
    let resolver = RingResolver { ring: &ring };
    let entries = exprs.iter().map(|e| e.evaluate(&resolver)).collect::<Result<Vec<_>>>()?;
    let matrix = SuperMatrix::new(&ring, rows_sig, cols_sig, entries)?;
    let rhs = match rhs_exprs {
        None => None,
        Some(v) => Some(v.iter().map(|e| e.evaluate(&resolver)).collect::<Result<Vec<_>>>()?),
    };
    Ok(LinearSystem { ring, matrix, rhs })
}

#[cfg(test)]
mod tests {
    use super::*;

    const CRAMER: &str = "matrix 1|1\nrow x[1,1] | al[1,1]\nrow be[1,1] | y[1,1]\nrhs x[1,2] | al[1,2]\n";

    #[test]
    fn reads_a_system() {
        let sys = parse_system(CRAMER).unwrap();
        assert_eq!(sys.matrix.row_signature(), ParitySignature::new(1, 1));
        assert_eq!(sys.rhs.as_ref().map(Vec::len), Some(2));
    }

    #[test]
    fn reports_unknown_generator_position() {
        let err = parse_system("matrix 1|1\nrow x[1,1] | al[1,1]\nrow be[1,1] | zz\n").unwrap_err();
        assert_eq!(err.to_string(), "3:15: unknown generator `zz`");
    }
}
