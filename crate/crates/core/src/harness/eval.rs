//! Expansion of expression trees to truncated series.

use thiserror::Error;

use crate::catalog::{product_factors, sum_side, CatalogError, Count, Side};
use crate::exactnum::{BigInt, RootOfUnity};
use crate::qseries::{Coeff, Ring, Series, SeriesError, TruncatedSeries};

use super::expr::{Expr, Mono};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    Catalog(#[from] CatalogError),
    #[error("invalid expression: {0}")]
    Invalid(String),
}

/// `(1 − ζ q^degree)^exponent`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Binomial {
    pub zeta: RootOfUnity,
    pub degree: usize,
    pub exponent: i64,
}

fn poch_binomials(tops: &[Mono], base: &Mono, count: Option<usize>, n: usize, out: &mut Vec<Binomial>) -> Result<(), EvalError> {
    if base.k == 0 && count.is_none() {
        return Err(EvalError::Invalid("infinite product with base q^0".into()));
    }
    for top in tops {
        let mut j = 0usize;
        loop {
            if count.is_some_and(|c| j >= c) {
                break;
            }
            let degree = top.k + j * base.k;
            if degree > n {
                break;
            }
            if degree == 0 {
                return Err(EvalError::Invalid("factor of degree zero".into()));
            }
            out.push(Binomial { zeta: top.zeta.mul(base.zeta.pow(j as u64)), degree, exponent: 1 });
            j += 1;
        }
    }
    Ok(())
}

/// The multiset of binomials when `e` is a product of Pochhammer symbols and
/// product-side names, or `None` when it is not.
pub fn binomials(e: &Expr, n: usize) -> Result<Option<Vec<Binomial>>, EvalError> {
    let mut out = Vec::new();
    Ok(collect(e, n, 1, &mut out)?.then_some(out))
}

fn collect(e: &Expr, n: usize, sign: i64, out: &mut Vec<Binomial>) -> Result<bool, EvalError> {
    match e {
        Expr::Poch { tops, base, count } => {
            let start = out.len();
            poch_binomials(tops, base, *count, n, out)?;
            for b in &mut out[start..] {
                b.exponent *= sign;
            }
            Ok(true)
        }
        Expr::Name { id, side: Side::Product, arg } => {
            let m = arg.unwrap_or(Mono::Q);
            for f in product_factors(*id) {
                let limit = match f.count {
                    Count::Finite(c) => c,
                    Count::Infinite => usize::MAX,
                };
                for j in 0..limit {
                    let d = f.offset + j * f.modulus;
                    if d * m.k > n {
                        break;
                    }
                    out.push(Binomial {
                        zeta: f.zeta.mul(m.zeta.pow(d as u64)),
                        degree: d * m.k,
                        exponent: f.exponent * sign,
                    });
                }
            }
            Ok(true)
        }
        Expr::Pow(a, p) => {
            let start = out.len();
            if !collect(a, n, 1, out)? {
                return Ok(false);
            }
            for b in &mut out[start..] {
                b.exponent *= p * sign;
            }
            Ok(true)
        }
        Expr::Mul(a, b) => Ok(collect(a, n, sign, out)? && collect(b, n, sign, out)?),
        Expr::Div(a, b) => Ok(collect(a, n, sign, out)? && collect(b, n, -sign, out)?),
        _ => Ok(false),
    }
}

fn apply<R: Coeff>(s: &mut Series<R>, bins: &[Binomial]) {
    for b in bins {
        let c = R::one().mul_root(b.zeta).expect("root lies in the ring");
        s.mul_binomial_pow(&c, b.degree, b.exponent);
    }
}

/// `s · ∏ bins`, promoting to ℤ[ω] when a root requires it.
pub fn apply_binomials(s: TruncatedSeries, bins: &[Binomial]) -> Result<TruncatedSeries, EvalError> {
    let complex = bins.iter().any(|b| !b.zeta.is_real());
    Ok(match s {
        TruncatedSeries::Int(mut x) if !complex => {
            apply(&mut x, bins);
            TruncatedSeries::Int(x)
        }
        TruncatedSeries::Rat(mut x) => {
            if complex {
                return Err(SeriesError::RootNotInRing(bins.iter().find(|b| !b.zeta.is_real()).unwrap().zeta).into());
            }
            apply(&mut x, bins);
            TruncatedSeries::Rat(x)
        }
        other => {
            let mut x = other.to_eisenstein()?;
            apply(&mut x, bins);
            TruncatedSeries::Eis(x)
        }
    })
}

fn constant(n: &BigInt, order: usize) -> TruncatedSeries {
    TruncatedSeries::Int(Series::constant(n.clone(), order))
}

/// `a / b`, moving integer series to ℚ when `b` has a non-unit constant term.
fn divide(a: &TruncatedSeries, b: &TruncatedSeries) -> Result<TruncatedSeries, SeriesError> {
    match a.div(b) {
        Err(SeriesError::NonUnitConstant(_)) if matches!(b, TruncatedSeries::Int(_)) && a.ring() != Ring::Eisenstein => {
            Ok(TruncatedSeries::Rat(a.to_rational()?).div(&TruncatedSeries::Rat(b.to_rational()?))?.simplify())
        }
        r => r,
    }
}

/// Expands `e` through `q^n`.
pub fn eval_expr(e: &Expr, n: usize) -> Result<TruncatedSeries, EvalError> {
    if let Some(bins) = binomials(e, n)? {
        return apply_binomials(TruncatedSeries::one(n), &bins);
    }
    Ok(match e {
        Expr::Int(v) => constant(v, n),
        Expr::Mono(m) => {
            if m.k > n {
                TruncatedSeries::zero(n)
            } else if m.k == 0 && !m.zeta.is_real() {
                TruncatedSeries::Eis(Series::constant(m.zeta.to_eisenstein(), n))
            } else {
                TruncatedSeries::root_monomial(m.zeta, m.k, n)
            }
        }
        Expr::Name { id, side: Side::Sum, arg } => {
            let m = arg.unwrap_or(Mono::Q);
            let sub = n.div_ceil(m.k);
            let s = sum_side(*id, sub)?;
            if m == Mono::Q {
                s
            } else {
                s.substitute(m.zeta, m.k)?.truncate(n)
            }
        }
        Expr::Neg(a) => eval_expr(a, n)?.neg(),
        Expr::Add(a, b) => eval_expr(a, n)?.add(&eval_expr(b, n)?)?,
        Expr::Sub(a, b) => eval_expr(a, n)?.sub(&eval_expr(b, n)?)?,
        Expr::Mul(a, b) => match (binomials(a, n)?, binomials(b, n)?) {
            (_, Some(bins)) => apply_binomials(eval_expr(a, n)?, &bins)?,
            (Some(bins), None) => apply_binomials(eval_expr(b, n)?, &bins)?,
            (None, None) => eval_expr(a, n)?.mul(&eval_expr(b, n)?)?,
        },
        Expr::Div(a, b) => match binomials(b, n)? {
            Some(mut bins) => {
                for x in &mut bins {
                    x.exponent = -x.exponent;
                }
                apply_binomials(eval_expr(a, n)?, &bins)?
            }
            None => divide(&eval_expr(a, n)?, &eval_expr(b, n)?)?,
        },
        Expr::Pow(a, p) => eval_expr(a, n)?.pow(*p)?,
        Expr::Poch { .. } | Expr::Name { .. } => unreachable!("handled by the product fast path"),
    })
}

/// Expands `e` through `q^n` by plain series arithmetic, bypassing the
/// binomial fast path. A slow oracle for tests.
#[doc(hidden)]
pub fn eval_expr_naive(e: &Expr, n: usize) -> Result<TruncatedSeries, EvalError> {
    Ok(match e {
        Expr::Poch { tops, base, count } => {
            let mut acc = TruncatedSeries::one(n);
            let mut bins = Vec::new();
            poch_binomials(tops, base, *count, n, &mut bins)?;
            for b in bins {
                let t = TruncatedSeries::root_monomial(b.zeta, b.degree, n);
                acc = acc.mul(&TruncatedSeries::one(n).sub(&t)?)?;
            }
            acc
        }
        Expr::Name { id, side: Side::Product, arg } => {
            let m = arg.unwrap_or(Mono::Q);
            let base = crate::catalog::product_side(*id, n.div_ceil(m.k));
            if m == Mono::Q {
                base
            } else {
                base.substitute(m.zeta, m.k)?.truncate(n)
            }
        }
        Expr::Neg(a) => eval_expr_naive(a, n)?.neg(),
        Expr::Add(a, b) => eval_expr_naive(a, n)?.add(&eval_expr_naive(b, n)?)?,
        Expr::Sub(a, b) => eval_expr_naive(a, n)?.sub(&eval_expr_naive(b, n)?)?,
        Expr::Mul(a, b) => eval_expr_naive(a, n)?.mul(&eval_expr_naive(b, n)?)?,
        Expr::Div(a, b) => eval_expr_naive(a, n)?.div(&eval_expr_naive(b, n)?)?,
        Expr::Pow(a, p) => eval_expr_naive(a, n)?.pow(*p)?,
        other => eval_expr(other, n)?,
    })
}
