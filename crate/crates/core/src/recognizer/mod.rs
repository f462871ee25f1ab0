//! Factorization of power series into `∏ (1 − q^k)^{r_k}`, with an
//! Eisenstein extension over the factors `(1 − ω q^k)` and `(1 − ω̄ q^k)`.

mod pretty;

pub use pretty::pretty;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_traits::ToPrimitive;
use thiserror::Error;

use crate::catalog::{Count, FactorSpec};
use crate::exactnum::{divisors, format_rational, moebius, BigInt, Eisenstein, Rational, RootOfUnity};
use crate::par;
use crate::qseries::{Coeff, Ring, Series, SeriesError, TruncatedSeries};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RecognitionError {
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error("exponent r_{k} = {value} is not an integer")]
    NonIntegral { k: usize, value: String },
    #[error("exponent at k = {k} does not fit in 64 bits")]
    Overflow { k: usize },
    #[error("cannot parse product form: {0}")]
    Parse(String),
}

/// Exponents of `(1 − q^k)`, `(1 − ω q^k)` and `(1 − ω̄ q^k)`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Triple {
    pub one: i64,
    pub omega: i64,
    pub omega_bar: i64,
}

impl Triple {
    pub const fn new(one: i64, omega: i64, omega_bar: i64) -> Self {
        Triple { one, omega, omega_bar }
    }

    pub fn is_zero(&self) -> bool {
        *self == Triple::default()
    }

    pub fn swap_conj(self) -> Self {
        Triple { one: self.one, omega: self.omega_bar, omega_bar: self.omega }
    }
}

/// `∏_{k ≤ max_order} (1 − q^k)^{r1} (1 − ω q^k)^{rω} (1 − ω̄ q^k)^{rω̄}`.
///
/// Only nonzero triples are stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductForm {
    pub max_order: usize,
    entries: BTreeMap<usize, Triple>,
}

impl ProductForm {
    pub fn new(max_order: usize) -> Self {
        ProductForm { max_order, entries: BTreeMap::new() }
    }

    /// Integer ring unless some ω-exponent is nonzero.
    pub fn ring(&self) -> Ring {
        if self.entries.values().all(|t| t.omega == 0 && t.omega_bar == 0) {
            Ring::Integer
        } else {
            Ring::Eisenstein
        }
    }

    pub fn get(&self, k: usize) -> Triple {
        self.entries.get(&k).copied().unwrap_or_default()
    }

    /// Integer exponent `r_k` of `(1 − q^k)`.
    pub fn r(&self, k: usize) -> i64 {
        self.get(k).one
    }

    pub fn set(&mut self, k: usize, t: Triple) {
        assert!(k >= 1, "factor degrees start at 1");
        if t.is_zero() {
            self.entries.remove(&k);
        } else {
            self.entries.insert(k, t);
        }
    }

    /// Adds `t` to the triple at `k`; degrees above `max_order` are dropped.
    pub fn add(&mut self, k: usize, t: Triple) {
        if k > self.max_order {
            return;
        }
        let cur = self.get(k);
        self.set(
            k,
            Triple::new(cur.one + t.one, cur.omega + t.omega, cur.omega_bar + t.omega_bar),
        );
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, Triple)> + '_ {
        self.entries.iter().map(|(&k, &t)| (k, t))
    }

    pub fn conj(&self) -> Self {
        ProductForm {
            max_order: self.max_order,
            entries: self.entries.iter().map(|(&k, &t)| (k, t.swap_conj())).collect(),
        }
    }

    /// Rewrites Pochhammer factors with ζ ∈ {±1, ±ω, ±ω̄} in this basis.
    ///
    /// `(1 + ζ q^d) = (1 − ζ² q^{2d}) / (1 − ζ q^d)` takes care of the
    /// negated roots.
    pub fn from_factor_specs(specs: &[FactorSpec], max_order: usize) -> Self {
        let mut form = ProductForm::new(max_order);
        for spec in specs {
            for d in spec.degrees(max_order) {
                let e = spec.exponent;
                let z = spec.zeta;
                if z == RootOfUnity::ONE || z == RootOfUnity::OMEGA || z == RootOfUnity::OMEGA_BAR {
                    form.add(d, basis_triple(z, e));
                } else {
                    let z = z.neg();
                    form.add(d, basis_triple(z, -e));
                    form.add(2 * d, basis_triple(z.mul(z), e));
                }
            }
        }
        form
    }

    /// The factor list this form denotes, one finite Pochhammer per entry.
    pub fn to_factor_specs(&self) -> Vec<FactorSpec> {
        let mut out = Vec::new();
        for (k, t) in self.entries() {
            for (zeta, e) in [
                (RootOfUnity::ONE, t.one),
                (RootOfUnity::OMEGA, t.omega),
                (RootOfUnity::OMEGA_BAR, t.omega_bar),
            ] {
                if e != 0 {
                    out.push(FactorSpec { zeta, offset: k, modulus: k, exponent: e, count: Count::Finite(1) });
                }
            }
        }
        out
    }
}

fn basis_triple(z: RootOfUnity, e: i64) -> Triple {
    if z == RootOfUnity::ONE {
        Triple::new(e, 0, 0)
    } else if z == RootOfUnity::OMEGA {
        Triple::new(0, e, 0)
    } else {
        assert_eq!(z, RootOfUnity::OMEGA_BAR, "only 1, ω, ω̄ are basis roots");
        Triple::new(0, 0, e)
    }
}

impl fmt::Display for ProductForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "# maxOrder {}", self.max_order)?;
        writeln!(f, "# k r1 rw rwb")?;
        for (k, t) in self.entries() {
            writeln!(f, "{k} {} {} {}", t.one, t.omega, t.omega_bar)?;
        }
        Ok(())
    }
}

impl FromStr for ProductForm {
    type Err = RecognitionError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = |line: usize, msg: &str| RecognitionError::Parse(format!("line {line}: {msg}"));
        let mut max_order = None;
        let mut entries = Vec::new();
        for (i, raw) in s.lines().enumerate() {
            let line = raw.trim();
            if let Some(rest) = line.strip_prefix('#') {
                if let Some(n) = rest.trim().strip_prefix("maxOrder") {
                    max_order = Some(n.trim().parse::<usize>().map_err(|_| bad(i + 1, "bad maxOrder"))?);
                }
                continue;
            }
            if line.is_empty() {
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            if fields.len() != 4 {
                return Err(bad(i + 1, "expected `k r1 rw rwb`"));
            }
            let k: usize = fields[0].parse().map_err(|_| bad(i + 1, "bad degree"))?;
            if k == 0 {
                return Err(bad(i + 1, "degree must be positive"));
            }
            let mut r = [0i64; 3];
            for (slot, f) in r.iter_mut().zip(&fields[1..]) {
                *slot = f.parse().map_err(|_| bad(i + 1, "bad exponent"))?;
            }
            entries.push((k, Triple::new(r[0], r[1], r[2])));
        }
        let max_order = max_order
            .or_else(|| entries.iter().map(|e| e.0).max())
            .unwrap_or(0);
        let mut form = ProductForm::new(max_order);
        for (k, t) in entries {
            if k > max_order {
                return Err(RecognitionError::Parse(format!("degree {k} exceeds maxOrder {max_order}")));
            }
            form.add(k, t);
        }
        Ok(form)
    }
}

/// Result of a recognition run.
#[derive(Clone, Debug, PartialEq)]
pub struct RecognitionReport {
    pub form: ProductForm,
    /// The rebuilt product matches the input through `form.max_order`.
    pub residual_check: bool,
    /// First degree where the rebuilt product differs, with both values.
    pub first_failure: Option<(usize, String)>,
}

fn check_input_order(f: &TruncatedSeries, n: usize) -> Result<(), SeriesError> {
    if n > f.order() {
        return Err(SeriesError::OrderExceeded { requested: n, available: f.order() });
    }
    Ok(())
}

fn report(form: ProductForm, f: &TruncatedSeries) -> Result<RecognitionReport, RecognitionError> {
    let n = form.max_order;
    let rebuilt = build_product(&form, n);
    let first_failure = match rebuilt.compare(&f.truncate(n), n)? {
        crate::qseries::Comparison::Equal => None,
        crate::qseries::Comparison::Mismatch { degree, lhs, rhs } => {
            Some((degree, format!("rebuilt {lhs}, input {rhs}")))
        }
    };
    Ok(RecognitionReport { form, residual_check: first_failure.is_none(), first_failure })
}

/// Möbius inversion `r_k = (1/k) Σ_{d|k} μ(k/d) c_d`.
fn invert<R: Coeff>(c: &Series<R>, n: usize, exact: impl Fn(R, usize) -> Result<i64, RecognitionError> + Sync + Send) -> Result<Vec<i64>, RecognitionError> {
    let r = par::map_range(n, 64, |i| {
        let k = i + 1;
        let mut acc = R::zero();
        for d in divisors(k as u64) {
            match moebius(k as u64 / d) {
                1 => acc.add_assign_ref(c.coeff(d as usize)),
                -1 => acc.sub_assign_ref(c.coeff(d as usize)),
                _ => {}
            }
        }
        exact(acc, k)
    });
    r.into_iter().collect()
}

/// Integer factorization `F = ∏_{k ≤ N} (1 − q^k)^{r_k} + O(q^{N+1})`.
///
/// Accepts ℤ- and ℚ-series; every `r_k` must come out integral.
pub fn recognize_int(f: &TruncatedSeries, n: usize) -> Result<RecognitionReport, RecognitionError> {
    check_input_order(f, n)?;
    let r = match f.truncate(n) {
        TruncatedSeries::Int(s) => {
            let c = s.q_logderiv()?;
            invert(&c, n, |acc: BigInt, k| {
                let kb = BigInt::from(k);
                if !Coeff::is_zero(&(&acc % &kb)) {
                    return Err(RecognitionError::NonIntegral {
                        k,
                        value: format_rational(&Rational::new(acc, kb)),
                    });
                }
                (acc / kb).to_i64().ok_or(RecognitionError::Overflow { k })
            })?
        }
        TruncatedSeries::Rat(s) => {
            let c = s.q_logderiv()?;
            invert(&c, n, |acc: Rational, k| {
                let v = acc / Rational::from_integer(BigInt::from(k));
                if !v.is_integer() {
                    return Err(RecognitionError::NonIntegral { k, value: format_rational(&v) });
                }
                v.to_integer().to_i64().ok_or(RecognitionError::Overflow { k })
            })?
        }
        TruncatedSeries::Eis(_) => {
            return Err(SeriesError::RingMismatch(Ring::Eisenstein, Ring::Integer).into())
        }
    };
    let mut form = ProductForm::new(n);
    for (i, e) in r.into_iter().enumerate() {
        form.set(i + 1, Triple::new(e, 0, 0));
    }
    report(form, f)
}

fn median3(a: i64, b: i64, c: i64) -> i64 {
    a.max(b).min(a.min(b).max(c))
}

fn to_i64(x: &BigInt, k: usize) -> Result<i64, RecognitionError> {
    x.to_i64().ok_or(RecognitionError::Overflow { k })
}

/// Greedy factorization over ℤ[ω] with the median representative of each
/// exponent triple modulo `(1 − q^k)(1 − ωq^k)(1 − ω̄q^k) = 1 − q^{3k}`.
pub fn recognize_eis(f: &TruncatedSeries, n: usize) -> Result<RecognitionReport, RecognitionError> {
    check_input_order(f, n)?;
    let mut g = f.truncate(n).to_eisenstein()?;
    if !Coeff::is_one(g.coeff(0)) {
        return Err(SeriesError::ConstantTermNotOne(g.coeff(0).to_string()).into());
    }
    let w = Eisenstein::omega();
    let wb = Eisenstein::omega_bar();
    let one = <Eisenstein as Coeff>::one();
    let mut form = ProductForm::new(n);
    for k in 1..=n {
        // g = 1 − (A + Bω) q^k + O(q^{k+1})
        let a = to_i64(&-&g.coeff(k).u, k)?;
        let b = to_i64(&-&g.coeff(k).v, k)?;
        if a == 0 && b == 0 {
            continue;
        }
        let t = median3(0, -a, -b);
        let triple = Triple::new(a + t, b + t, t);
        g.mul_binomial_pow(&one, k, -triple.one);
        g.mul_binomial_pow(&w, k, -triple.omega);
        g.mul_binomial_pow(&wb, k, -triple.omega_bar);
        debug_assert!(Coeff::is_zero(g.coeff(k)), "peeling left a q^{k} term");
        form.set(k, triple);
    }
    report(form, f)
}

fn build_in<R: Coeff>(p: &ProductForm, n: usize) -> Series<R> {
    let mut s = Series::<R>::one(n);
    for (k, t) in p.entries().take_while(|&(k, _)| k <= n) {
        for (z, e) in [
            (RootOfUnity::ONE, t.one),
            (RootOfUnity::OMEGA, t.omega),
            (RootOfUnity::OMEGA_BAR, t.omega_bar),
        ] {
            if e != 0 {
                let c = R::one().mul_root(z).expect("ω-exponents need the Eisenstein ring");
                s.mul_binomial_pow(&c, k, e);
            }
        }
    }
    s
}

/// Expands the product form through `q^n`.
pub fn build_product(p: &ProductForm, n: usize) -> TruncatedSeries {
    match p.ring() {
        Ring::Integer => TruncatedSeries::Int(build_in::<BigInt>(p, n)),
        _ => TruncatedSeries::Eis(build_in::<Eisenstein>(p, n)),
    }
}

/// Equality of the denoted series through `q^n`.
pub fn equivalent(p1: &ProductForm, p2: &ProductForm, n: usize) -> bool {
    build_in::<Eisenstein>(p1, n) == build_in::<Eisenstein>(p2, n)
}

/// Integer factorization of `F·F̄` predicted from a ℤ[ω] form:
/// `(1 − ωq^k)(1 − ω̄q^k) = (1 − q^{3k}) / (1 − q^k)`.
pub fn norm_image(p: &ProductForm) -> ProductForm {
    let mut out = ProductForm::new(p.max_order);
    for (k, t) in p.entries() {
        let s = t.omega + t.omega_bar;
        out.add(k, Triple::new(2 * t.one - s, 0, 0));
        out.add(3 * k, Triple::new(s, 0, 0));
    }
    out
}

/// Recognizes `F` over ℤ[ω] and its norm `F·F̄` over ℤ, and checks that the
/// two factorizations agree.
pub fn norm_crosscheck(f: &TruncatedSeries, n: usize) -> Result<bool, RecognitionError> {
    let eis = recognize_eis(f, n)?;
    let norm = f.truncate(n).mul(&f.truncate(n).conj())?.simplify();
    let int = recognize_int(&norm, n)?;
    Ok(eis.residual_check && int.residual_check && equivalent(&int.form, &norm_image(&eis.form), n))
}
