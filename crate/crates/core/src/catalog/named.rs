use std::fmt;
use std::fmt::Write as _;
use std::str::FromStr;

use crate::exactnum::{BigInt, Eisenstein, RootOfUnity};
use crate::qseries::{Series, TruncatedSeries};

use super::sums::{Correction, DenominatorSpec, SumRecipe};
use super::{build_factors, CatalogError, FactorSpec};

const W: RootOfUnity = RootOfUnity::OMEGA;
const WB: RootOfUnity = RootOfUnity::OMEGA_BAR;
const NEG: RootOfUnity = RootOfUnity::NEG_ONE;

const fn inf(s: usize, b: usize, e: i64) -> FactorSpec {
    FactorSpec::inf(s, b, e)
}

const fn den(zeta: RootOfUnity, offset: usize, modulus: usize, extra: usize) -> DenominatorSpec {
    DenominatorSpec { zeta, offset, modulus, extra }
}

const fn double(lin_m: i64, lin_n: i64, correction: Option<Correction>) -> SumRecipe {
    SumRecipe::Double { lin_m, lin_n, correction }
}

const fn corr(zeta: RootOfUnity, m_coef: i64, n_coef: i64, constant: i64) -> Option<Correction> {
    Some(Correction { zeta, m_coef, n_coef, constant })
}

const EULER_DEN: &[DenominatorSpec] = &[den(RootOfUnity::ONE, 1, 1, 0)];
// (q⁴; q⁴)_k (−q; q²)_k and (q⁴; q⁴)_k (−q; q²)_{k+1}
const SELBERG_DEN: &[DenominatorSpec] = &[den(RootOfUnity::ONE, 4, 4, 0), den(NEG, 1, 2, 0)];
const SELBERG_DEN_C: &[DenominatorSpec] = &[den(RootOfUnity::ONE, 4, 4, 0), den(NEG, 1, 2, 1)];
// (−q; q)_∞
const SELBERG_PRE: &[FactorSpec] = &[FactorSpec::twisted(NEG, 1, 1, 1)];

/// One row of the recipe table.
pub struct Recipe {
    pub name: &'static str,
    pub product: &'static [FactorSpec],
    pub sum: Option<SumRecipe>,
}

/// The single source of truth for every fixed-name function.
const RECIPES: &[Recipe] = &[
    Recipe {
        name: "G",
        product: &[inf(1, 5, -1), inf(4, 5, -1)],
        sum: Some(SumRecipe::Single { quad: 1, lin: 0, denominators: EULER_DEN, prefactor: &[] }),
    },
    Recipe {
        name: "H",
        product: &[inf(2, 5, -1), inf(3, 5, -1)],
        sum: Some(SumRecipe::Single { quad: 1, lin: 1, denominators: EULER_DEN, prefactor: &[] }),
    },
    Recipe {
        name: "A",
        product: &[inf(1, 7, -1), inf(2, 7, -1), inf(5, 7, -1), inf(6, 7, -1)],
        sum: Some(SumRecipe::Single { quad: 2, lin: 0, denominators: SELBERG_DEN, prefactor: SELBERG_PRE }),
    },
    Recipe {
        name: "B",
        product: &[inf(1, 7, -1), inf(3, 7, -1), inf(4, 7, -1), inf(6, 7, -1)],
        sum: Some(SumRecipe::Single { quad: 2, lin: 2, denominators: SELBERG_DEN, prefactor: SELBERG_PRE }),
    },
    Recipe {
        name: "C",
        product: &[inf(2, 7, -1), inf(3, 7, -1), inf(4, 7, -1), inf(5, 7, -1)],
        sum: Some(SumRecipe::Single { quad: 2, lin: 2, denominators: SELBERG_DEN_C, prefactor: SELBERG_PRE }),
    },
    Recipe {
        name: "K",
        product: &[inf(1, 3, -1), inf(2, 3, -1)],
        sum: None,
    },
    Recipe {
        name: "K1",
        product: &[inf(1, 9, -1), inf(3, 9, -1), inf(6, 9, -1), inf(8, 9, -1)],
        sum: Some(double(0, 0, None)),
    },
    Recipe {
        name: "K2",
        product: &[inf(2, 9, -1), inf(3, 9, -1), inf(6, 9, -1), inf(7, 9, -1)],
        sum: Some(double(1, 3, None)),
    },
    Recipe {
        name: "K3",
        product: &[inf(3, 9, -1), inf(4, 9, -1), inf(5, 9, -1), inf(6, 9, -1)],
        sum: Some(double(2, 3, None)),
    },
    Recipe {
        name: "K4",
        product: &[inf(2, 9, -1), inf(3, 9, -1), inf(5, 9, -1), inf(8, 9, -1)],
        sum: Some(double(1, 2, None)),
    },
    Recipe {
        name: "K5",
        product: &[inf(1, 9, -1), inf(4, 9, -1), inf(6, 9, -1), inf(7, 9, -1)],
        // q^{Q − m + n}(1 − q^{2m})
        sum: Some(double(-1, 1, corr(RootOfUnity::ONE, 2, 0, 0))),
    },
    Recipe {
        name: "K6",
        // (q⁶; q⁹)_∞ (ωq, ω̄q³; q³)_∞ / (q²; q³)_∞
        product: &[
            inf(6, 9, 1),
            FactorSpec::twisted(W, 1, 3, 1),
            FactorSpec::twisted(WB, 3, 3, 1),
            inf(2, 3, -1),
        ],
        // q^{Q + m + n}(1 − ω q^{m+3n+1})
        sum: Some(double(1, 1, corr(W, 1, 3, 1))),
    },
    Recipe {
        name: "K7",
        // (q³; q⁹)_∞ (ωq², ω̄q³; q³)_∞ / (q; q³)_∞
        product: &[
            inf(3, 9, 1),
            FactorSpec::twisted(W, 2, 3, 1),
            FactorSpec::twisted(WB, 3, 3, 1),
            inf(1, 3, -1),
        ],
        // q^{Q + 2n}(1 − ω q^{3m+3n+2})
        sum: Some(double(0, 2, corr(W, 3, 3, 2))),
    },
];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    Sum,
    Product,
}

/// A named q-function: a recipe-table row (optionally conjugated), an
/// Andrews–Gordon product `AG(m, i)`, or `ETA(b) = (q^b; q^b)_∞`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FunctionId {
    Named { index: usize, conjugate: bool },
    Ag { modulus: usize, index: usize },
    Eta(usize),
}

impl FunctionId {
    pub fn named(name: &str) -> Option<Self> {
        RECIPES
            .iter()
            .position(|r| r.name == name)
            .map(|index| FunctionId::Named { index, conjugate: false })
    }

    pub fn ag(modulus: usize, index: usize) -> Result<Self, CatalogError> {
        if modulus < 5 || modulus % 2 == 0 || index < 1 || index > (modulus - 1) / 2 {
            return Err(CatalogError::BadParameters(format!(
                "AG({modulus},{index}) needs odd m ≥ 5 and 1 ≤ i ≤ (m−1)/2"
            )));
        }
        Ok(FunctionId::Ag { modulus, index })
    }

    pub fn eta(modulus: usize) -> Result<Self, CatalogError> {
        if modulus == 0 {
            return Err(CatalogError::BadParameters("ETA(0)".into()));
        }
        Ok(FunctionId::Eta(modulus))
    }

    /// Sum and product sides lie in ℤ[ω] rather than ℤ.
    pub fn is_eisenstein(&self) -> bool {
        match *self {
            FunctionId::Named { index, .. } => {
                RECIPES[index].product.iter().any(|f| !f.zeta.is_real())
            }
            _ => false,
        }
    }

    /// The recipe-table id a fixed-name Andrews–Gordon product coincides with.
    fn ag_alias(modulus: usize, index: usize) -> Option<&'static str> {
        match (modulus, index) {
            (5, 1) => Some("H"),
            (5, 2) => Some("G"),
            (7, 1) => Some("C"),
            (7, 2) => Some("B"),
            (7, 3) => Some("A"),
            _ => None,
        }
    }

    pub fn has_sum_side(&self) -> bool {
        match *self {
            FunctionId::Named { index, .. } => RECIPES[index].sum.is_some(),
            FunctionId::Ag { modulus, index } => Self::ag_alias(modulus, index).is_some(),
            FunctionId::Eta(_) => false,
        }
    }
}

impl fmt::Display for FunctionId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            FunctionId::Named { index, conjugate } => {
                write!(f, "{}{}", RECIPES[index].name, if conjugate { "c" } else { "" })
            }
            FunctionId::Ag { modulus, index } => write!(f, "AG({modulus},{index})"),
            FunctionId::Eta(b) => write!(f, "ETA({b})"),
        }
    }
}

impl FromStr for FunctionId {
    type Err = CatalogError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let unknown = || CatalogError::UnknownName(s.to_string());
        let args = |prefix: &str| -> Option<Vec<usize>> {
            let inner = t.strip_prefix(prefix)?.strip_prefix('(')?.strip_suffix(')')?;
            inner.split(',').map(|x| x.parse().ok()).collect()
        };
        if t.starts_with("AG") {
            return match args("AG").as_deref() {
                Some(&[m, i]) => FunctionId::ag(m, i),
                _ => Err(unknown()),
            };
        }
        if t.starts_with("ETA") {
            return match args("ETA").as_deref() {
                Some(&[b]) => FunctionId::eta(b),
                _ => Err(unknown()),
            };
        }
        if let Some(id) = FunctionId::named(&t) {
            return Ok(id);
        }
        // Conjugates exist only for the mod-9 ℤ[ω]-family K4..K7.
        if let Some(base) = t.strip_suffix('c').or_else(|| t.strip_suffix('b')) {
            if matches!(base, "K4" | "K5" | "K6" | "K7") {
                if let Some(FunctionId::Named { index, .. }) = FunctionId::named(base) {
                    return Ok(FunctionId::Named { index, conjugate: true });
                }
            }
        }
        Err(unknown())
    }
}

/// Factor list of the product side.
pub fn product_factors(id: FunctionId) -> Vec<FactorSpec> {
    match id {
        FunctionId::Named { index, conjugate } => RECIPES[index]
            .product
            .iter()
            .map(|f| if conjugate { f.conj() } else { *f })
            .collect(),
        FunctionId::Ag { modulus, index } => vec![
            inf(index, modulus, 1),
            inf(modulus - index, modulus, 1),
            inf(modulus, modulus, 1),
            inf(1, 1, -1),
        ],
        FunctionId::Eta(b) => vec![inf(b, b, 1)],
    }
}

pub fn product_side(id: FunctionId, order: usize) -> TruncatedSeries {
    build_factors(&product_factors(id), order)
}

/// `(q^i, q^{m−i}, q^m; q^m)_∞ / (q; q)_∞` through `q^order`.
pub fn ag_product(modulus: usize, index: usize, order: usize) -> Result<TruncatedSeries, CatalogError> {
    Ok(product_side(FunctionId::ag(modulus, index)?, order))
}

pub fn sum_side(id: FunctionId, order: usize) -> Result<TruncatedSeries, CatalogError> {
    let (index, conjugate) = match id {
        FunctionId::Named { index, conjugate } => (index, conjugate),
        FunctionId::Ag { modulus, index } => {
            let alias = FunctionId::ag_alias(modulus, index)
                .ok_or_else(|| CatalogError::NoSumSide(id.to_string()))?;
            return sum_side(FunctionId::named(alias).expect("alias is in the table"), order);
        }
        FunctionId::Eta(_) => return Err(CatalogError::NoSumSide(id.to_string())),
    };
    let recipe = RECIPES[index]
        .sum
        .ok_or_else(|| CatalogError::NoSumSide(id.to_string()))?;
    Ok(if recipe.needs_eisenstein() {
        TruncatedSeries::Eis(recipe.expand::<Eisenstein>(order, conjugate))
    } else {
        TruncatedSeries::Int(recipe.expand::<BigInt>(order, conjugate))
    })
}

/// Every catalog id with a fixed name, including the conjugates.
pub fn fixed_ids() -> Vec<FunctionId> {
    let mut out = Vec::new();
    for (index, r) in RECIPES.iter().enumerate() {
        out.push(FunctionId::Named { index, conjugate: false });
        if matches!(r.name, "K4" | "K5" | "K6" | "K7") {
            out.push(FunctionId::Named { index, conjugate: true });
        }
    }
    out
}

fn describe_sum(recipe: &SumRecipe) -> String {
    match recipe {
        SumRecipe::Single { quad, lin, denominators, prefactor } => {
            let dens: Vec<String> = denominators
                .iter()
                .map(|d| {
                    let count = if d.extra == 0 { "k".to_string() } else { format!("k+{}", d.extra) };
                    format!("({}q^{}; q^{})_{}", d.zeta.dsl_prefix(), d.offset, d.modulus, count)
                })
                .collect();
            let pre: Vec<String> = prefactor.iter().map(|f| f.to_string()).collect();
            format!(
                "single: quad={quad} lin={lin} denominators=[{}] prefactor=[{}]",
                dens.join(", "),
                pre.join(", ")
            )
        }
        SumRecipe::Double { lin_m, lin_n, correction } => {
            let c = match correction {
                None => "none".to_string(),
                Some(c) => format!(
                    "(1 - {}q^({}m+{}n+{}))",
                    if c.zeta == RootOfUnity::ONE { "" } else { c.zeta.dsl_prefix() },
                    c.m_coef,
                    c.n_coef,
                    c.constant
                ),
            };
            format!("double: Q=m^2+3mn+3n^2 lin_m={lin_m} lin_n={lin_n} correction={c}")
        }
    }
}

/// Human-readable dump of the recipe table: `id | side | parameters`.
pub fn manifest() -> String {
    let mut out = String::from("# id | side | parameters\n");
    for r in RECIPES {
        let factors: Vec<String> = r.product.iter().map(|f| f.to_string()).collect();
        let _ = writeln!(out, "{} | product | {}", r.name, factors.join(" "));
        match &r.sum {
            Some(s) => {
                let _ = writeln!(out, "{} | sum | {}", r.name, describe_sum(s));
            }
            None => {
                let _ = writeln!(out, "{} | sum | none", r.name);
            }
        }
    }
    out.push_str("K4c..K7c | both | conjugate of K4..K7 (w <-> wb)\n");
    out.push_str("AG(m,i) | product | (q^i; q^m)_inf^1 (q^(m-i); q^m)_inf^1 (q^m; q^m)_inf^1 (q^1; q^1)_inf^-1\n");
    out.push_str("AG(m,i) | sum | AG(5,1)=H AG(5,2)=G AG(7,1)=C AG(7,2)=B AG(7,3)=A; none otherwise\n");
    out.push_str("ETA(b) | product | (q^b; q^b)_inf^1\n");
    out
}

/// Coefficients of a series with no ω-part, for tests.
#[doc(hidden)]
pub fn int_coeffs(s: &TruncatedSeries) -> Option<Vec<BigInt>> {
    match s.clone().simplify() {
        TruncatedSeries::Int(x) => Some(Series::into_coeffs(x)),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn id(s: &str) -> FunctionId {
        s.parse().unwrap()
    }

    fn ints(v: &[i64]) -> TruncatedSeries {
        TruncatedSeries::from_ints(v)
    }

    /// Partitions of n whose parts differ by at least 2 (and, with
    /// `min_part`, are at least that large).
    fn gap_two_partitions(n: usize, min_part: usize) -> i64 {
        fn go(rem: usize, min: usize) -> i64 {
            if rem == 0 {
                return 1;
            }
            (min..=rem).map(|p| go(rem - p, p + 2)).sum()
        }
        go(n, min_part)
    }

    #[test]
    fn names_roundtrip() {
        for name in ["G", "H", "A", "B", "C", "K", "K1", "K3", "K5c", "K6c", "K7", "AG(11,5)", "ETA(8)"] {
            assert_eq!(id(name).to_string(), name);
        }
        assert_eq!(id("K6b"), id("K6c"));
        assert!(matches!("K1c".parse::<FunctionId>(), Err(CatalogError::UnknownName(_))));
        assert!(matches!("Z".parse::<FunctionId>(), Err(CatalogError::UnknownName(_))));
        assert!(matches!("AG(8,1)".parse::<FunctionId>(), Err(CatalogError::BadParameters(_))));
        assert!(matches!("AG(11,6)".parse::<FunctionId>(), Err(CatalogError::BadParameters(_))));
    }

    #[test]
    fn g_sum_is_gap_two_count() {
        let g = sum_side(id("G"), 6).unwrap();
        assert_eq!(g, ints(&[1, 1, 1, 1, 2, 2, 3]));
        let oracle: Vec<i64> = (0..=40).map(|n| gap_two_partitions(n, 1)).collect();
        assert_eq!(sum_side(id("G"), 40).unwrap(), ints(&oracle));
        let oracle_h: Vec<i64> = (0..=40).map(|n| gap_two_partitions(n, 2)).collect();
        assert_eq!(sum_side(id("H"), 40).unwrap(), ints(&oracle_h));
    }

    #[test]
    fn h_product_and_eta() {
        assert_eq!(product_side(id("H"), 7), ints(&[1, 0, 1, 1, 1, 1, 2, 2]));
        assert_eq!(product_side(id("ETA(1)"), 7), ints(&[1, -1, -1, 0, 0, 1, 0, 1]));
        assert_eq!(product_side(id("AG(11,5)"), 0), ints(&[1]));
    }

    #[test]
    fn k5_and_k6_leading_terms() {
        let k5 = sum_side(id("K5"), 3).unwrap();
        let k5 = int_coeffs(&k5).unwrap();
        assert_eq!(k5[0], BigInt::from(1));
        let k6 = sum_side(id("K6"), 1).unwrap();
        assert_eq!(k6.coefficient(0).to_string(), "1");
        assert_eq!(k6.coefficient(1).to_string(), "-w");
    }

    #[test]
    fn ag_products_match_named() {
        let n = 60;
        assert_eq!(ag_product(5, 1, n).unwrap(), product_side(id("H"), n));
        assert_eq!(ag_product(5, 2, n).unwrap(), product_side(id("G"), n));
        assert_eq!(ag_product(7, 1, n).unwrap(), product_side(id("C"), n));
        assert_eq!(ag_product(7, 2, n).unwrap(), product_side(id("B"), n));
        assert_eq!(ag_product(7, 3, n).unwrap(), product_side(id("A"), n));
        for (m, i) in [(9, 4), (11, 2), (13, 6)] {
            assert_eq!(ag_product(m, i, 0).unwrap(), ints(&[1]));
        }
        assert!(ag_product(9, 5, 10).is_err());
        assert!(ag_product(3, 1, 10).is_err());
    }

    #[test]
    fn sum_side_errors() {
        assert!(matches!(sum_side(id("AG(11,1)"), 5), Err(CatalogError::NoSumSide(_))));
        assert!(matches!(sum_side(id("ETA(2)"), 5), Err(CatalogError::NoSumSide(_))));
        assert!(matches!(sum_side(id("K"), 5), Err(CatalogError::NoSumSide(_))));
        assert_eq!(sum_side(id("AG(7,3)"), 30).unwrap(), sum_side(id("A"), 30).unwrap());
    }

    #[test]
    fn conjugates() {
        for name in ["K6", "K7"] {
            let base = id(name);
            let conj = id(&format!("{name}c"));
            assert_eq!(sum_side(conj, 60).unwrap(), sum_side(base, 60).unwrap().conj());
            assert_eq!(product_side(conj, 60), product_side(base, 60).conj());
        }
        assert_eq!(sum_side(id("K4c"), 40).unwrap(), sum_side(id("K4"), 40).unwrap());
    }

    #[test]
    fn k6_k7_bar_products() {
        let n = 100;
        // (ωq; ωq)_∞ / (q; q)_∞
        let lhs = product_side(id("K6"), n).mul(&product_side(id("K7c"), n)).unwrap();
        let eta = product_side(id("ETA(1)"), n);
        let rhs = eta
            .substitute(RootOfUnity::OMEGA, 1)
            .unwrap()
            .div(&eta)
            .unwrap();
        assert_eq!(lhs, rhs);

        let norm = product_side(id("K6"), n).mul(&product_side(id("K6c"), n)).unwrap();
        let expected = build_factors(&[inf(6, 9, 1), inf(1, 3, -1), inf(2, 3, -2)], n);
        assert_eq!(norm.simplify(), expected);
    }

    #[test]
    fn k4_alternative_form() {
        // (q⁹; q⁹)_∞ (ωq², ω̄q²; q³)_∞ / (q³; q³)_∞
        let alt = build_factors(
            &[
                inf(9, 9, 1),
                FactorSpec::twisted(W, 2, 3, 1),
                FactorSpec::twisted(WB, 2, 3, 1),
                inf(3, 3, -1),
            ],
            80,
        );
        assert_eq!(alt.simplify(), product_side(id("K4"), 80));
    }

    #[test]
    fn manifest_lists_every_fixed_id() {
        let m = manifest();
        for r in RECIPES {
            assert!(m.contains(&format!("{} | product |", r.name)));
            assert!(m.contains(&format!("{} | sum |", r.name)));
        }
        assert_eq!(fixed_ids().len(), RECIPES.len() + 4);
    }
}
