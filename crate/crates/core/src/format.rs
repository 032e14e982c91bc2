//! The matrix text format.
//!
//! ```text
//! # comment lines start with '#'
//! 3
//! 0 1 0
//! -2 0 1
//! 0 -1 0
//! D: 1 2 2
//! ```
//!
//! Line 1 is `n`, followed by `n` rows of `n` integers and an optional
//! symmetrizer line. Blank lines and `#` comments are skipped when parsing.
//! Serialization writes minimal decimal integers separated by single spaces,
//! one trailing newline, and the `D:` line only when the symmetrizer is not
//! the identity.

use crate::error::{Error, Result};
use crate::matrix::ExchangeMatrix;

fn parse_error(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, column, message: message.into() }
}

/// Whitespace-separated tokens with their 1-based starting column.
fn tokens(line: &str) -> impl Iterator<Item = (usize, &str)> {
    line.split_whitespace().map(move |tok| {
        let offset = tok.as_ptr() as usize - line.as_ptr() as usize;
        (line[..offset].chars().count() + 1, tok)
    })
}

fn parse_ints(line_no: usize, line: &str) -> Result<Vec<i64>> {
    tokens(line)
        .map(|(col, tok)| {
            tok.parse::<i64>()
                .map_err(|_| parse_error(line_no, col, format!("expected an integer, found `{tok}`")))
        })
        .collect()
}

pub fn parse_matrix(text: &str) -> Result<ExchangeMatrix> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l))
        .filter(|(_, l)| {
            let t = l.trim_start();
            !t.is_empty() && !t.starts_with('#')
        });

    let (first_no, first) = lines.next().ok_or_else(|| parse_error(1, 1, "empty input"))?;
    let n = match tokens(first).collect::<Vec<_>>().as_slice() {
        [(col, tok)] => tok
            .parse::<usize>()
            .ok()
            .filter(|&n| n > 0)
            .ok_or_else(|| parse_error(first_no, *col, format!("expected a positive size, found `{tok}`")))?,
        _ => return Err(parse_error(first_no, 1, "first line must contain only the size n")),
    };

    let mut rows = Vec::with_capacity(n);
    let mut last_line = first_no;
    for r in 0..n {
        let (no, line) = lines
            .next()
            .ok_or_else(|| parse_error(last_line + 1, 1, format!("missing row {} of {n}", r + 1)))?;
        last_line = no;
        let row = parse_ints(no, line)?;
        if row.len() != n {
            return Err(parse_error(no, 1, format!("expected {n} entries, found {}", row.len())));
        }
        rows.push(row);
    }

    let declared = match lines.next() {
        None => None,
        Some((no, line)) => {
            let rest = line
                .trim_start()
                .strip_prefix("D:")
                .ok_or_else(|| parse_error(no, 1, "expected `D: d1 ... dn` or end of input"))?;
            let offset = line.len() - rest.len();
            let d = parse_ints(no, rest).map_err(|e| match e {
                Error::Parse { line, column, message } => {
                    Error::Parse { line, column: column + offset, message }
                }
                other => other,
            })?;
            if d.len() != n {
                return Err(parse_error(no, 1, format!("expected {n} symmetrizer entries, found {}", d.len())));
            }
            if let Some((no, _)) = lines.next() {
                return Err(parse_error(no, 1, "unexpected trailing content"));
            }
            Some(d)
        }
    };

    let matrix = ExchangeMatrix::new(rows)?;
    if let Some(d) = declared {
        let ok = d.iter().all(|&x| x > 0)
            && (0..n).all(|i| {
                (0..n).all(|j| {
                    d[i].checked_mul(matrix.get(i, j))
                        == d[j].checked_mul(matrix.get(j, i)).map(|x| -x)
                })
            });
        if !ok {
            return Err(Error::NotSkewSymmetrizable {
                reason: "declared symmetrizer does not make D·B skew-symmetric".into(),
            });
        }
    }
    Ok(matrix)
}

pub fn serialize_matrix(b: &ExchangeMatrix) -> String {
    let mut out = format!("{}\n", b.n());
    for i in 0..b.n() {
        out.push_str(&join(b.row(i)));
        out.push('\n');
    }
    if !b.symmetrizer().is_identity() {
        out.push_str("D: ");
        out.push_str(&join(b.symmetrizer().diag()));
        out.push('\n');
    }
    out
}

pub(crate) fn join(v: &[i64]) -> String {
    v.iter().map(i64::to_string).collect::<Vec<_>>().join(" ")
}
