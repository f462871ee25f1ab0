//! Asymptotics of `−ln ∏_{m≥0} (1 − e^{−(m+a)x})` as `x → 0`.
//!
//! ```text
//! π²/(6x) + (a − 1/2) ln x + ln(Γ(a)/√(2π)) − Σ_{n≥1} (−1)^n B_n B_{n+1}(a) / (n (n+1)!) · x^n
//! ```
//!
//! with `B_1 = −1/2`. The exact layer lives here; [`numeric`] evaluates both
//! sides with MPFR.

pub mod numeric;

use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::exactnum::{bernoulli_numbers, bernoulli_poly, format_rational, BigInt, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AsymptoticsError {
    #[error("parameter out of range: {0}")]
    OutOfRange(String),
}

/// Symbolic constant term of an expansion.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "a")]
pub enum ConstantTerm {
    Zero,
    /// `ln Γ(a) − ½ ln 2π`
    LnGammaOverSqrt2Pi(#[serde(serialize_with = "ser_rational")] Rational),
    /// `−ln(2 sin πa)`, the sum of the single-product constants at `a` and `1 − a`.
    NegLnTwoSinPi(#[serde(serialize_with = "ser_rational")] Rational),
}

impl fmt::Display for ConstantTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConstantTerm::Zero => f.write_str("0"),
            ConstantTerm::LnGammaOverSqrt2Pi(a) => {
                write!(f, "ln Gamma({}) - ln(2*pi)/2", format_rational(a))
            }
            ConstantTerm::NegLnTwoSinPi(a) => write!(f, "-ln(2*sin(pi*{}))", format_rational(a)),
        }
    }
}

fn ser_rational<S: serde::Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&format_rational(r))
}

fn ser_rationals<S: serde::Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(format_rational))
}

/// `inv_x_pi2 · π²/x + log_coef · ln x + constant + Σ poly[n−1] x^n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AsymptoticExpansion {
    #[serde(serialize_with = "ser_rational")]
    pub a: Rational,
    pub pair: bool,
    #[serde(serialize_with = "ser_rational")]
    pub inv_x_pi2: Rational,
    #[serde(serialize_with = "ser_rational")]
    pub log_coef: Rational,
    pub constant: ConstantTerm,
    /// Coefficient of `x^n` at index `n − 1`.
    #[serde(serialize_with = "ser_rationals")]
    pub poly: Vec<Rational>,
}

impl AsymptoticExpansion {
    pub fn zero(order: usize) -> Self {
        AsymptoticExpansion {
            a: Rational::zero(),
            pair: false,
            inv_x_pi2: Rational::zero(),
            log_coef: Rational::zero(),
            constant: ConstantTerm::Zero,
            poly: vec![Rational::zero(); order],
        }
    }

    pub fn order(&self) -> usize {
        self.poly.len()
    }

    /// Coefficient of `x^n`, `n ≥ 1`.
    pub fn coef(&self, n: usize) -> &Rational {
        &self.poly[n - 1]
    }
}

fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

fn factorial(n: usize) -> BigInt {
    (1..=n as u64).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// `−(−1)^n B_n B_{n+1}(a) / (n (n+1)!)` for `n = 1..=order`.
fn poly_coefs(a: &Rational, order: usize) -> Vec<Rational> {
    let b = bernoulli_numbers(order);
    (1..=order)
        .map(|n| {
            if b[n].is_zero() {
                return Rational::zero();
            }
            let sign = if n % 2 == 0 { -1 } else { 1 };
            let den = BigInt::from(n as u64) * factorial(n + 1);
            &b[n] * bernoulli_poly(n + 1, a) * Rational::from_integer(BigInt::from(sign)) / Rational::from_integer(den)
        })
        .collect()
}

pub fn expansion_single(a: &Rational, order: usize) -> Result<AsymptoticExpansion, AsymptoticsError> {
    if !a.is_positive() || a > &Rational::one() {
        return Err(AsymptoticsError::OutOfRange(format!("a = {} must lie in (0, 1]", format_rational(a))));
    }
    Ok(AsymptoticExpansion {
        a: a.clone(),
        pair: false,
        inv_x_pi2: rat(1, 6),
        log_coef: a - rat(1, 2),
        constant: ConstantTerm::LnGammaOverSqrt2Pi(a.clone()),
        poly: poly_coefs(a, order),
    })
}

/// Expansion of the symmetric pair `∏ (1 − e^{−(m+a)x})(1 − e^{−(m+1−a)x})`.
pub fn expansion_pair(a: &Rational, order: usize) -> Result<AsymptoticExpansion, AsymptoticsError> {
    if !a.is_positive() || a >= &Rational::one() {
        return Err(AsymptoticsError::OutOfRange(format!("a = {} must lie in (0, 1)", format_rational(a))));
    }
    let lo = expansion_single(a, order)?;
    let hi = expansion_single(&(Rational::one() - a), order)?;
    Ok(AsymptoticExpansion {
        a: a.clone(),
        pair: true,
        inv_x_pi2: &lo.inv_x_pi2 + &hi.inv_x_pi2,
        log_coef: &lo.log_coef + &hi.log_coef,
        constant: ConstantTerm::NegLnTwoSinPi(a.clone()),
        poly: lo.poly.iter().zip(&hi.poly).map(|(x, y)| x + y).collect(),
    })
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn check_ratio(a: u64, b: u64) -> Result<Rational, AsymptoticsError> {
    if a == 0 || a >= b {
        return Err(AsymptoticsError::OutOfRange(format!("need 0 < a < b, got a = {a}, b = {b}")));
    }
    Ok(Rational::new(BigInt::from(a), BigInt::from(b)))
}

/// `b B_2(a/b) / 2`: `q` to this power times `(q^a, q^{b−a}; q^b)_∞` is modular.
pub fn normalization_exponent(a: u64, b: u64) -> Result<Rational, AsymptoticsError> {
    let t = check_ratio(a, b)?;
    Ok(bernoulli_poly(2, &t) * Rational::from_integer(BigInt::from(b)) / rat(2, 1))
}

/// Outcome of scanning the even-index coefficients of a single expansion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    Found { n: usize, coefficient: Rational },
    Exhausted { max_order: usize },
}

/// Smallest even `n` where the expansion of the single product
/// `(q^a; q^b)_∞` has a nonzero `x^n` term; such terms cancel in symmetric pairs.
pub fn asymmetry_witness(a: u64, b: u64, max_order: usize) -> Result<Witness, AsymptoticsError> {
    let t = check_ratio(a, b)?;
    if gcd(a, b) != 1 {
        return Err(AsymptoticsError::OutOfRange(format!("{a}/{b} is not in lowest terms")));
    }
    let e = expansion_single(&t, max_order)?;
    for n in (2..=max_order).step_by(2) {
        if !e.coef(n).is_zero() {
            return Ok(Witness::Found { n, coefficient: e.coef(n).clone() });
        }
    }
    Ok(Witness::Exhausted { max_order })
}

#[cfg(test)]
mod tests {
    use proptest::prelude::*;

    use super::*;

    #[test]
    fn a_equals_one() {
        let e = expansion_single(&rat(1, 1), 6).unwrap();
        assert_eq!(e.poly, vec![rat(-1, 24), rat(0, 1), rat(0, 1), rat(0, 1), rat(0, 1), rat(0, 1)]);
        assert_eq!(e.log_coef, rat(1, 2));
        assert_eq!(e.inv_x_pi2, rat(1, 6));
        assert_eq!(expansion_single(&rat(1, 2), 2).unwrap().log_coef, rat(0, 1));
    }

    #[test]
    fn first_coefficients() {
        assert_eq!(expansion_single(&rat(1, 5), 1).unwrap().poly[0], rat(-1, 600));
        let p = expansion_pair(&rat(1, 5), 4).unwrap();
        assert_eq!(p.poly, vec![rat(-1, 300), rat(0, 1), rat(0, 1), rat(0, 1)]);
        assert_eq!(p.inv_x_pi2, rat(1, 3));
        assert_eq!(p.log_coef, rat(0, 1));
    }

    #[test]
    fn range_errors() {
        assert!(expansion_single(&rat(0, 1), 3).is_err());
        assert!(expansion_single(&rat(3, 2), 3).is_err());
        assert!(expansion_pair(&rat(1, 1), 3).is_err());
        assert!(asymmetry_witness(2, 4, 6).is_err());
        assert!(normalization_exponent(5, 5).is_err());
    }

    #[test]
    fn normalization_exponents() {
        assert_eq!(normalization_exponent(1, 5).unwrap(), rat(1, 60));
        assert_eq!(normalization_exponent(2, 5).unwrap(), rat(-11, 60));
        // 1/(q, q⁶; q⁷)(q², q⁵; q⁷) and its two siblings
        let e = |i: u64| normalization_exponent(i, 7).unwrap();
        assert_eq!(-(e(1) + e(2)), rat(-1, 42));
        assert_eq!(-(e(1) + e(3)), rat(5, 42));
        assert_eq!(-(e(2) + e(3)), rat(17, 42));
        // (q²; q⁴)_∞² is the pair at a/b = 1/2 with b = 4
        assert_eq!(-normalization_exponent(2, 4).unwrap(), rat(1, 6));
    }

    #[test]
    fn witnesses() {
        for (a, b) in [(1, 3), (2, 9), (1, 5)] {
            match asymmetry_witness(a, b, 10).unwrap() {
                Witness::Found { n, coefficient } => {
                    assert_eq!(n, 2);
                    let t = rat(a as i64, b as i64);
                    // B_2 = 1/6, so −B_2 B_3(t)/(2·3!) = −B_3(t)/72.
                    assert_eq!(coefficient, -bernoulli_poly(3, &t) / rat(72, 1));
                }
                other => panic!("{a}/{b}: {other:?}"),
            }
        }
        assert_eq!(asymmetry_witness(1, 2, 20).unwrap(), Witness::Exhausted { max_order: 20 });
    }

    #[test]
    fn b3_at_two_ninths() {
        let t = rat(2, 9);
        let direct = &t * &t * &t - rat(3, 2) * &t * &t + rat(1, 2) * &t;
        assert_eq!(bernoulli_poly(3, &t), direct);
    }

    proptest! {
        #[test]
        fn pair_higher_terms_cancel(p in 1i64..60, q in 2i64..61) {
            prop_assume!(p < q);
            let a = rat(p, q);
            let e = expansion_pair(&a, 40).unwrap();
            for n in 2..=40 {
                prop_assert!(e.coef(n).is_zero(), "n = {}", n);
            }
        }

        #[test]
        fn convention_lock(p in 1i64..60, q in 2i64..61) {
            prop_assume!(p < q);
            let a = rat(p, q);
            let s = expansion_single(&a, 1).unwrap().poly[0].clone()
                + expansion_single(&(rat(1, 1) - &a), 1).unwrap().poly[0].clone();
            prop_assert_eq!(s, -bernoulli_poly(2, &a) / rat(2, 1));
        }
    }
}
