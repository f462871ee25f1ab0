//! Exact arithmetic foundations.
//!
//! Integers and rationals come from `num-bigint` / `num-rational`; the
//! Eisenstein integers, sixth roots of unity, Bernoulli numbers and the
//! Möbius function are implemented here.

mod bernoulli;
mod eisenstein;
mod moebius;
mod root;

pub use bernoulli::{bernoulli_number, bernoulli_numbers, bernoulli_poly, binomial};
pub use eisenstein::Eisenstein;
pub use moebius::{divisors, moebius};
pub use root::RootOfUnity;

use num_traits::{One, Zero};
use thiserror::Error;

pub type BigInt = num_bigint::BigInt;
pub type Rational = num_rational::BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NumParseError {
    #[error("empty number")]
    Empty,
    #[error("invalid integer `{0}`")]
    Integer(String),
    #[error("invalid rational `{0}`")]
    Rational(String),
    #[error("zero denominator in `{0}`")]
    ZeroDenominator(String),
    #[error("invalid Eisenstein integer `{0}`")]
    Eisenstein(String),
}

/// Replaces the typographic minus with ASCII so both spellings parse.
fn normalize_sign(s: &str) -> String {
    s.trim().replace('\u{2212}', "-")
}

pub fn parse_bigint(s: &str) -> Result<BigInt, NumParseError> {
    let t = normalize_sign(s);
    if t.is_empty() {
        return Err(NumParseError::Empty);
    }
    let t = t.strip_prefix('+').unwrap_or(&t);
    t.parse::<BigInt>()
        .map_err(|_| NumParseError::Integer(s.to_string()))
}

/// Parses `p/q`, an integer, or a finite decimal such as `-0.125`.
pub fn parse_rational(s: &str) -> Result<Rational, NumParseError> {
    let t = normalize_sign(s);
    if t.is_empty() {
        return Err(NumParseError::Empty);
    }
    if let Some((n, d)) = t.split_once('/') {
        let num = parse_bigint(n).map_err(|_| NumParseError::Rational(s.to_string()))?;
        let den = parse_bigint(d).map_err(|_| NumParseError::Rational(s.to_string()))?;
        if den.is_zero() {
            return Err(NumParseError::ZeroDenominator(s.to_string()));
        }
        return Ok(Rational::new(num, den));
    }
    if let Some((int_part, frac_part)) = t.split_once('.') {
        let negative = int_part.starts_with('-');
        let int_digits = int_part.trim_start_matches(['-', '+']);
        if !frac_part.chars().all(|c| c.is_ascii_digit())
            || !int_digits.chars().all(|c| c.is_ascii_digit())
            || (int_digits.is_empty() && frac_part.is_empty())
        {
            return Err(NumParseError::Rational(s.to_string()));
        }
        let digits = format!("{int_digits}{frac_part}");
        let mut num: BigInt = if digits.is_empty() {
            BigInt::zero()
        } else {
            digits
                .parse()
                .map_err(|_| NumParseError::Rational(s.to_string()))?
        };
        if negative {
            num = -num;
        }
        let den = num_traits::pow(BigInt::from(10), frac_part.len());
        return Ok(Rational::new(num, den));
    }
    Ok(Rational::from_integer(parse_bigint(&t)?))
}

/// `-3/7`, `5`; integers print without a denominator.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Exact conversion when `r` is integral.
pub fn rational_to_integer(r: &Rational) -> Option<BigInt> {
    r.is_integer().then(|| r.numer().clone())
}
