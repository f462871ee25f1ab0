//! Pochhammer products and the named q-functions.
//!
//! Every named function is described by a declarative recipe in
//! [`named`]; the same table drives both the sum and the product side.

mod named;
mod sums;

pub use named::{fixed_ids, int_coeffs,
    ag_product, manifest, product_factors, product_side, sum_side, FunctionId, Side,
};
pub use sums::{Correction, DenominatorSpec, SumRecipe};

use std::fmt;

use thiserror::Error;

use crate::exactnum::{BigInt, Eisenstein, RootOfUnity};
use crate::qseries::{Coeff, Series, TruncatedSeries};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CatalogError {
    #[error("unknown function `{0}`")]
    UnknownName(String),
    #[error("`{0}` has no sum side")]
    NoSumSide(String),
    #[error("invalid parameters: {0}")]
    BadParameters(String),
}

/// Number of factors in a Pochhammer symbol.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Count {
    Finite(usize),
    Infinite,
}

/// `(ζ q^s; q^b)_count ^ e`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FactorSpec {
    pub zeta: RootOfUnity,
    pub offset: usize,
    pub modulus: usize,
    pub exponent: i64,
    pub count: Count,
}

impl FactorSpec {
    /// `(q^s; q^b)_∞ ^ e`.
    pub const fn inf(offset: usize, modulus: usize, exponent: i64) -> Self {
        FactorSpec { zeta: RootOfUnity::ONE, offset, modulus, exponent, count: Count::Infinite }
    }

    /// `(ζ q^s; q^b)_∞ ^ e`.
    pub const fn twisted(zeta: RootOfUnity, offset: usize, modulus: usize, exponent: i64) -> Self {
        FactorSpec { zeta, offset, modulus, exponent, count: Count::Infinite }
    }

    pub fn conj(self) -> Self {
        FactorSpec { zeta: self.zeta.conj(), ..self }
    }

    pub fn inverted(self) -> Self {
        FactorSpec { exponent: -self.exponent, ..self }
    }

    /// Exponents `s + j·b` of the binomials `(1 − ζ q^{s+jb})` with `s + jb ≤ order`.
    pub fn degrees(&self, order: usize) -> impl Iterator<Item = usize> + '_ {
        let limit = match self.count {
            Count::Finite(k) => k,
            Count::Infinite => usize::MAX,
        };
        (0..limit)
            .map(move |j| self.offset + j * self.modulus)
            .take_while(move |&d| d <= order)
    }
}

impl fmt::Display for FactorSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let count = match self.count {
            Count::Infinite => "inf".to_string(),
            Count::Finite(k) => k.to_string(),
        };
        write!(
            f,
            "({}q^{}; q^{})_{}^{}",
            self.zeta.dsl_prefix(),
            self.offset,
            self.modulus,
            count,
            self.exponent
        )
    }
}

fn specs_need_eisenstein(specs: &[FactorSpec]) -> bool {
    specs.iter().any(|s| !s.zeta.is_real())
}

/// Multiplies `series` in place by every factor in `specs`.
pub(crate) fn apply_factors<R: Coeff>(series: &mut Series<R>, specs: &[FactorSpec]) {
    let order = series.order();
    for spec in specs {
        assert!(spec.offset >= 1 && spec.modulus >= 1, "factor offsets and moduli are positive");
        let c = R::one()
            .mul_root(spec.zeta)
            .expect("factor root must lie in the series ring");
        let degrees: Vec<usize> = spec.degrees(order).collect();
        for d in degrees {
            series.mul_binomial_pow(&c, d, spec.exponent);
        }
    }
}

/// Expands `∏ (ζ q^s; q^b)_count^e` through `q^order`.
pub fn build_factors(specs: &[FactorSpec], order: usize) -> TruncatedSeries {
    if specs_need_eisenstein(specs) {
        let mut s = Series::<Eisenstein>::one(order);
        apply_factors(&mut s, specs);
        TruncatedSeries::Eis(s)
    } else {
        let mut s = Series::<BigInt>::one(order);
        apply_factors(&mut s, specs);
        TruncatedSeries::Int(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Partitions of n into parts drawn from `parts`.
    fn restricted_partitions(parts: &[usize], n: usize) -> Vec<i64> {
        let mut p = vec![0i64; n + 1];
        p[0] = 1;
        for &part in parts {
            for m in part..=n {
                p[m] += p[m - part];
            }
        }
        p
    }

    #[test]
    fn rogers_ramanujan_g_product() {
        let s = build_factors(&[FactorSpec::inf(1, 5, -1), FactorSpec::inf(4, 5, -1)], 8);
        assert_eq!(s, TruncatedSeries::from_ints(&[1, 1, 1, 1, 2, 2, 3, 3, 4]));
        let parts: Vec<usize> = (1..=80).filter(|k| k % 5 == 1 || k % 5 == 4).collect();
        let big = build_factors(&[FactorSpec::inf(1, 5, -1), FactorSpec::inf(4, 5, -1)], 80);
        assert_eq!(big, TruncatedSeries::from_ints(&restricted_partitions(&parts, 80)));
    }

    #[test]
    fn empty_product_is_one() {
        assert_eq!(build_factors(&[], 5), TruncatedSeries::one(5));
    }

    #[test]
    fn omega_factor_leading_terms() {
        let s = build_factors(&[FactorSpec::twisted(RootOfUnity::OMEGA, 1, 3, 1)], 5);
        let TruncatedSeries::Eis(s) = s else { panic!("expected an Eisenstein series") };
        assert_eq!(s.coeff(0), &Eisenstein::new(1, 0));
        assert_eq!(s.coeff(1), &Eisenstein::new(0, -1));
        assert_eq!(s.coeff(2), &Eisenstein::new(0, 0));
        // (1 − ωq)(1 − ωq⁴): q⁵ coefficient is ω² = −1 − ω.
        assert_eq!(s.coeff(4), &Eisenstein::new(0, -1));
        assert_eq!(s.coeff(5), &Eisenstein::new(-1, -1));
    }

    #[test]
    fn opposite_exponents_cancel() {
        let specs = [
            FactorSpec::inf(2, 7, 3),
            FactorSpec::twisted(RootOfUnity::NEG_ONE, 1, 2, 1),
            FactorSpec::twisted(RootOfUnity::OMEGA_BAR, 3, 4, -2),
        ];
        let inv: Vec<FactorSpec> = specs.iter().map(|s| s.inverted()).collect();
        let p = build_factors(&specs, 60).mul(&build_factors(&inv, 60)).unwrap();
        assert_eq!(p.simplify(), TruncatedSeries::one(60));
    }

    #[test]
    fn finite_counts() {
        // (q; q)_3 = (1−q)(1−q²)(1−q³)
        let s = build_factors(
            &[FactorSpec { zeta: RootOfUnity::ONE, offset: 1, modulus: 1, exponent: 1, count: Count::Finite(3) }],
            8,
        );
        assert_eq!(s, TruncatedSeries::from_ints(&[1, -1, -1, 0, 1, 1, -1, 0, 0]));
    }

    #[test]
    fn pentagonal_numbers() {
        let eta = build_factors(&[FactorSpec::inf(1, 1, 1)], 7);
        assert_eq!(eta, TruncatedSeries::from_ints(&[1, -1, -1, 0, 0, 1, 0, 1]));
    }
}
