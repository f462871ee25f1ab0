//! Truncated formal power series over ℤ, ℚ and ℤ[ω].
//!
//! [`Series`] is the generic dense container; [`TruncatedSeries`] tags it
//! with its ring and unifies rings on binary operations (ℤ embeds into both
//! ℚ and ℤ[ω], while ℚ and ℤ[ω] never mix).

mod coeff;
pub mod io;
mod series;

pub use coeff::{Coeff, Ring};
pub use series::Series;

use std::fmt;

use thiserror::Error;

use crate::exactnum::{format_rational, BigInt, Eisenstein, Rational, RootOfUnity};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("cannot combine a {0} series with a {1} series")]
    RingMismatch(Ring, Ring),
    #[error("constant term {0} is not a unit")]
    NonUnitConstant(String),
    #[error("constant term is {0}, expected 1")]
    ConstantTermNotOne(String),
    #[error("comparison up to q^{requested} exceeds the available order {available}")]
    OrderExceeded { requested: usize, available: usize },
    #[error("substitution by {0} leaves the rational ring")]
    RootNotInRing(RootOfUnity),
}

/// A single coefficient from any of the supported rings.
#[derive(Clone, Debug, PartialEq)]
pub enum Coefficient {
    Int(BigInt),
    Rat(Rational),
    Eis(Eisenstein),
}

impl fmt::Display for Coefficient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coefficient::Int(x) => write!(f, "{x}"),
            Coefficient::Rat(x) => f.write_str(&format_rational(x)),
            Coefficient::Eis(x) => write!(f, "{x}"),
        }
    }
}

/// Outcome of an exact coefficient comparison.
#[derive(Clone, Debug, PartialEq)]
pub enum Comparison {
    Equal,
    Mismatch { degree: usize, lhs: Coefficient, rhs: Coefficient },
}

impl Comparison {
    pub fn is_equal(&self) -> bool {
        matches!(self, Comparison::Equal)
    }
}

/// A series tagged with its coefficient ring.
#[derive(Clone, Debug, PartialEq)]
pub enum TruncatedSeries {
    Int(Series<BigInt>),
    Rat(Series<Rational>),
    Eis(Series<Eisenstein>),
}

enum Unified {
    Int(Series<BigInt>, Series<BigInt>),
    Rat(Series<Rational>, Series<Rational>),
    Eis(Series<Eisenstein>, Series<Eisenstein>),
}

fn int_to_rat(s: &Series<BigInt>) -> Series<Rational> {
    s.map(|c| Rational::from_integer(c.clone()))
}

fn int_to_eis(s: &Series<BigInt>) -> Series<Eisenstein> {
    s.map(|c| Eisenstein::from_int(c.clone()))
}

fn unify(a: &TruncatedSeries, b: &TruncatedSeries) -> Result<Unified, SeriesError> {
    use TruncatedSeries as T;
    Ok(match (a, b) {
        (T::Int(x), T::Int(y)) => Unified::Int(x.clone(), y.clone()),
        (T::Rat(x), T::Rat(y)) => Unified::Rat(x.clone(), y.clone()),
        (T::Eis(x), T::Eis(y)) => Unified::Eis(x.clone(), y.clone()),
        (T::Int(x), T::Rat(y)) => Unified::Rat(int_to_rat(x), y.clone()),
        (T::Rat(x), T::Int(y)) => Unified::Rat(x.clone(), int_to_rat(y)),
        (T::Int(x), T::Eis(y)) => Unified::Eis(int_to_eis(x), y.clone()),
        (T::Eis(x), T::Int(y)) => Unified::Eis(x.clone(), int_to_eis(y)),
        (x, y) => return Err(SeriesError::RingMismatch(x.ring(), y.ring())),
    })
}

macro_rules! binary {
    ($a:expr, $b:expr, |$x:ident, $y:ident| $body:expr) => {
        match unify($a, $b)? {
            Unified::Int($x, $y) => TruncatedSeries::Int($body),
            Unified::Rat($x, $y) => TruncatedSeries::Rat($body),
            Unified::Eis($x, $y) => TruncatedSeries::Eis($body),
        }
    };
}

macro_rules! unary {
    ($a:expr, |$x:ident| $body:expr) => {
        match $a {
            TruncatedSeries::Int($x) => TruncatedSeries::Int($body),
            TruncatedSeries::Rat($x) => TruncatedSeries::Rat($body),
            TruncatedSeries::Eis($x) => TruncatedSeries::Eis($body),
        }
    };
}

impl TruncatedSeries {
    pub fn one(order: usize) -> Self {
        TruncatedSeries::Int(Series::one(order))
    }

    pub fn zero(order: usize) -> Self {
        TruncatedSeries::Int(Series::zero(order))
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        TruncatedSeries::Int(Series::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect()))
    }

    /// `n·q^k` through `order`.
    pub fn int_monomial(n: i64, k: usize, order: usize) -> Self {
        TruncatedSeries::Int(Series::monomial(BigInt::from(n), k, order))
    }

    /// `ζ·q^k` through `order`, in ℤ for ζ = ±1 and in ℤ[ω] otherwise.
    pub fn root_monomial(z: RootOfUnity, k: usize, order: usize) -> Self {
        match z.sign() {
            Some(s) => Self::int_monomial(s, k, order),
            None => TruncatedSeries::Eis(Series::monomial(z.to_eisenstein(), k, order)),
        }
    }

    pub fn ring(&self) -> Ring {
        match self {
            TruncatedSeries::Int(_) => Ring::Integer,
            TruncatedSeries::Rat(_) => Ring::Rational,
            TruncatedSeries::Eis(_) => Ring::Eisenstein,
        }
    }

    pub fn order(&self) -> usize {
        match self {
            TruncatedSeries::Int(s) => s.order(),
            TruncatedSeries::Rat(s) => s.order(),
            TruncatedSeries::Eis(s) => s.order(),
        }
    }

    pub fn coefficient(&self, n: usize) -> Coefficient {
        match self {
            TruncatedSeries::Int(s) => Coefficient::Int(s.coeff(n).clone()),
            TruncatedSeries::Rat(s) => Coefficient::Rat(s.coeff(n).clone()),
            TruncatedSeries::Eis(s) => Coefficient::Eis(s.coeff(n).clone()),
        }
    }

    pub fn coefficients(&self) -> Vec<Coefficient> {
        (0..=self.order()).map(|n| self.coefficient(n)).collect()
    }

    pub fn truncate(&self, order: usize) -> Self {
        unary!(self, |s| s.truncate(order))
    }

    /// Moves to the Eisenstein ring (integer series only).
    pub fn to_eisenstein(&self) -> Result<Series<Eisenstein>, SeriesError> {
        match self {
            TruncatedSeries::Int(s) => Ok(int_to_eis(s)),
            TruncatedSeries::Eis(s) => Ok(s.clone()),
            TruncatedSeries::Rat(_) => Err(SeriesError::RingMismatch(Ring::Rational, Ring::Eisenstein)),
        }
    }

    pub fn to_rational(&self) -> Result<Series<Rational>, SeriesError> {
        match self {
            TruncatedSeries::Int(s) => Ok(int_to_rat(s)),
            TruncatedSeries::Rat(s) => Ok(s.clone()),
            TruncatedSeries::Eis(_) => Err(SeriesError::RingMismatch(Ring::Eisenstein, Ring::Rational)),
        }
    }

    /// Drops to the smallest ring holding every coefficient: ℤ[ω] with no
    /// ω-parts becomes ℤ, and ℚ with integral entries becomes ℤ.
    pub fn simplify(self) -> Self {
        match self {
            TruncatedSeries::Eis(s) if s.coeffs().iter().all(|c| c.v.is_zero()) => {
                TruncatedSeries::Int(s.map(|c| c.u.clone()))
            }
            TruncatedSeries::Rat(s) if s.coeffs().iter().all(|c| c.is_integer()) => {
                TruncatedSeries::Int(s.map(|c| c.numer().clone()))
            }
            other => other,
        }
    }

    pub fn add(&self, o: &Self) -> Result<Self, SeriesError> {
        Ok(binary!(self, o, |x, y| x.add(&y)))
    }

    pub fn sub(&self, o: &Self) -> Result<Self, SeriesError> {
        Ok(binary!(self, o, |x, y| x.sub(&y)))
    }

    pub fn mul(&self, o: &Self) -> Result<Self, SeriesError> {
        Ok(binary!(self, o, |x, y| x.mul(&y)))
    }

    pub fn neg(&self) -> Self {
        unary!(self, |s| s.neg())
    }

    pub fn shift(&self, k: usize) -> Self {
        unary!(self, |s| s.shift(k))
    }

    pub fn inverse(&self) -> Result<Self, SeriesError> {
        Ok(unary!(self, |s| s.inverse()?))
    }

    pub fn div(&self, o: &Self) -> Result<Self, SeriesError> {
        self.mul(&o.inverse()?)
    }

    pub fn pow(&self, e: i64) -> Result<Self, SeriesError> {
        Ok(unary!(self, |s| s.pow(e)?))
    }

    pub fn q_logderiv(&self) -> Result<Self, SeriesError> {
        Ok(unary!(self, |s| s.q_logderiv()?))
    }

    /// Coefficientwise conjugation ω ↦ ω̄ (identity on ℤ and ℚ).
    pub fn conj(&self) -> Self {
        match self {
            TruncatedSeries::Eis(s) => TruncatedSeries::Eis(s.map(Eisenstein::conj)),
            other => other.clone(),
        }
    }

    /// `F(ζ q^k)`; a non-real ζ moves an integer series into ℤ[ω].
    pub fn substitute(&self, z: RootOfUnity, k: usize) -> Result<Self, SeriesError> {
        if z.is_real() {
            return Ok(unary!(self, |s| s.substitute(z, k).expect("±1 lies in every ring")));
        }
        match self {
            TruncatedSeries::Rat(_) => Err(SeriesError::RootNotInRing(z)),
            other => Ok(TruncatedSeries::Eis(
                other.to_eisenstein()?.substitute(z, k).expect("ℤ[ω] holds every sixth root"),
            )),
        }
    }

    /// Exact comparison of `c_0..=c_upto` after ring unification.
    pub fn compare(&self, o: &Self, upto: usize) -> Result<Comparison, SeriesError> {
        let available = self.order().min(o.order());
        if upto > available {
            return Err(SeriesError::OrderExceeded { requested: upto, available });
        }
        let degree = match unify(self, o)? {
            Unified::Int(x, y) => x.first_mismatch(&y, upto),
            Unified::Rat(x, y) => x.first_mismatch(&y, upto),
            Unified::Eis(x, y) => x.first_mismatch(&y, upto),
        };
        Ok(match degree {
            None => Comparison::Equal,
            Some(d) => Comparison::Mismatch {
                degree: d,
                lhs: self.coefficient(d),
                rhs: o.coefficient(d),
            },
        })
    }

    /// Convenience wrapper around [`compare`](Self::compare).
    pub fn equal_upto(&self, o: &Self, upto: usize) -> Result<bool, SeriesError> {
        Ok(self.compare(o, upto)?.is_equal())
    }

    pub fn is_zero_upto(&self, upto: usize) -> bool {
        (0..=upto.min(self.order())).all(|n| match self.coefficient(n) {
            Coefficient::Int(c) => c.is_zero(),
            Coefficient::Rat(c) => c.is_zero(),
            Coefficient::Eis(c) => c.is_zero(),
        })
    }
}

impl From<Series<BigInt>> for TruncatedSeries {
    fn from(s: Series<BigInt>) -> Self {
        TruncatedSeries::Int(s)
    }
}

impl From<Series<Rational>> for TruncatedSeries {
    fn from(s: Series<Rational>) -> Self {
        TruncatedSeries::Rat(s)
    }
}

impl From<Series<Eisenstein>> for TruncatedSeries {
    fn from(s: Series<Eisenstein>) -> Self {
        TruncatedSeries::Eis(s)
    }
}
