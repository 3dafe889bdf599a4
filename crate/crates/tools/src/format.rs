//! Plain-text exchange format for exponential sums.
//!
//! ```text
//! # comment lines start with '#'
//! d m
//! λ_1 … λ_d re(c) im(c)     (m lines)
//! ```
//!
//! Blank lines are ignored. Numbers use Rust's decimal float syntax with an
//! optional exponent; non-finite values are rejected.

use std::fmt::Write as _;

use amoeba_core::{Complex64, ExponentialSum, SupportSet};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FormatError {
    #[error("input contains no header line")]
    MissingHeader,
    #[error("line {line}: header must be \"d m\" with positive integers")]
    MalformedHeader { line: usize },
    #[error("line {line}: cannot parse {token:?} as a finite number")]
    MalformedNumber { line: usize, token: String },
    #[error("line {line}: expected {expected} fields (d coordinates, re, im), found {found}")]
    DimensionMismatch {
        line: usize,
        expected: usize,
        found: usize,
    },
    #[error("header announces {expected} terms but {found} term lines follow")]
    TermCount { expected: usize, found: usize },
    #[error("line {line}: coefficient is zero")]
    ZeroCoefficient { line: usize },
    #[error("lines {first} and {second}: duplicate exponent")]
    DuplicateExponent { first: usize, second: usize },
    #[error(transparent)]
    Core(#[from] amoeba_core::Error),
}

fn number(line: usize, token: &str) -> Result<f64, FormatError> {
    token
        .parse::<f64>()
        .ok()
        .filter(|v| v.is_finite())
        .ok_or_else(|| FormatError::MalformedNumber {
            line,
            token: token.to_string(),
        })
}

/// Parses the text format into an [`ExponentialSum`]. Line numbers in errors are 1-based.
pub fn parse_exponential_sum(text: &str) -> Result<ExponentialSum, FormatError> {
    let mut records = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (header_line, header) = records.next().ok_or(FormatError::MissingHeader)?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    let parsed: Vec<usize> = fields.iter().filter_map(|t| t.parse().ok()).collect();
    let (d, m) = match (fields.len(), parsed.as_slice()) {
        (2, &[d, m]) if d > 0 && m > 0 => (d, m),
        _ => return Err(FormatError::MalformedHeader { line: header_line }),
    };

    let mut exponents: Vec<Vec<f64>> = Vec::with_capacity(m);
    let mut coefficients = Vec::with_capacity(m);
    let mut lines = Vec::with_capacity(m);
    for (line, record) in records {
        let tokens: Vec<&str> = record.split_whitespace().collect();
        if tokens.len() != d + 2 {
            return Err(FormatError::DimensionMismatch {
                line,
                expected: d + 2,
                found: tokens.len(),
            });
        }
        let values = tokens
            .iter()
            .map(|t| number(line, t))
            .collect::<Result<Vec<f64>, _>>()?;
        let c = Complex64::new(values[d], values[d + 1]);
        if c.re == 0.0 && c.im == 0.0 {
            return Err(FormatError::ZeroCoefficient { line });
        }
        let lambda = values[..d].to_vec();
        if let Some(j) = exponents.iter().position(|e| *e == lambda) {
            return Err(FormatError::DuplicateExponent {
                first: lines[j],
                second: line,
            });
        }
        exponents.push(lambda);
        coefficients.push(c);
        lines.push(line);
    }
    if exponents.len() != m {
        return Err(FormatError::TermCount {
            expected: m,
            found: exponents.len(),
        });
    }
    Ok(ExponentialSum::new(
        SupportSet::new(d, exponents)?,
        coefficients,
    )?)
}

/// Writes `f` in the text format. Floats use the shortest representation
/// that parses back to the same value, so the output round-trips exactly.
pub fn format_exponential_sum(f: &ExponentialSum) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{} {}", f.dim(), f.len());
    for (lambda, c) in f.support().exponents().iter().zip(f.coefficients()) {
        for v in lambda {
            let _ = write!(out, "{v} ");
        }
        let _ = writeln!(out, "{} {}", c.re, c.im);
    }
    out
}
