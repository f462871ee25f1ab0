//! Plain-text coefficient files: one `n: value` line per coefficient.

use std::fmt::Write as _;

use thiserror::Error;

use super::{Ring, Series, TruncatedSeries};
use crate::exactnum::{parse_bigint, parse_rational, BigInt, Eisenstein, Rational};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CoeffFileError {
    #[error("line {line}: expected `n: value`")]
    Syntax { line: usize },
    #[error("line {line}: bad value `{value}`")]
    Value { line: usize, value: String },
    #[error("line {line}: index {index} listed twice")]
    Duplicate { line: usize, index: usize },
    #[error("no coefficients found")]
    Empty,
}

pub fn dump(series: &TruncatedSeries) -> String {
    let mut out = String::new();
    for (n, c) in series.coefficients().iter().enumerate() {
        let _ = writeln!(out, "{n}: {c}");
    }
    out
}

/// Reads a coefficient file; indices not listed are zero. Blank lines and
/// lines starting with `#` are skipped. When `ring` is `None` the smallest
/// ring that holds every value is chosen.
pub fn parse(text: &str, ring: Option<Ring>) -> Result<TruncatedSeries, CoeffFileError> {
    let mut entries: Vec<(usize, usize, String)> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (idx, value) = line.split_once(':').ok_or(CoeffFileError::Syntax { line: i + 1 })?;
        let idx: usize = idx.trim().parse().map_err(|_| CoeffFileError::Syntax { line: i + 1 })?;
        entries.push((i + 1, idx, value.trim().to_string()));
    }
    let order = entries.iter().map(|e| e.1).max().ok_or(CoeffFileError::Empty)?;
    let ring = ring.unwrap_or_else(|| {
        if entries.iter().any(|e| e.2.contains('w')) {
            Ring::Eisenstein
        } else if entries.iter().any(|e| e.2.contains(['/', '.'])) {
            Ring::Rational
        } else {
            Ring::Integer
        }
    });
    let mut seen = vec![false; order + 1];
    for &(line, index, _) in &entries {
        if std::mem::replace(&mut seen[index], true) {
            return Err(CoeffFileError::Duplicate { line, index });
        }
    }
    let bad = |line: usize, value: &str| CoeffFileError::Value { line, value: value.to_string() };
    Ok(match ring {
        Ring::Integer => {
            let mut s = Series::<BigInt>::zero(order);
            for (line, idx, v) in &entries {
                *s.coeff_mut(*idx) = parse_bigint(v).map_err(|_| bad(*line, v))?;
            }
            TruncatedSeries::Int(s)
        }
        Ring::Rational => {
            let mut s = Series::<Rational>::zero(order);
            for (line, idx, v) in &entries {
                *s.coeff_mut(*idx) = parse_rational(v).map_err(|_| bad(*line, v))?;
            }
            TruncatedSeries::Rat(s)
        }
        Ring::Eisenstein => {
            let mut s = Series::<Eisenstein>::zero(order);
            for (line, idx, v) in &entries {
                *s.coeff_mut(*idx) = v.parse().map_err(|_| bad(*line, v))?;
            }
            TruncatedSeries::Eis(s)
        }
    })
}
