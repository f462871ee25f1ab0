use crate::exactnum::RootOfUnity;
use crate::qseries::{Coeff, Series};

use super::{apply_factors, FactorSpec};

/// `(ζ q^s; q^b)_{k + extra}` in the k-th summand of a single sum.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DenominatorSpec {
    pub zeta: RootOfUnity,
    pub offset: usize,
    pub modulus: usize,
    pub extra: usize,
}

/// Factor `(1 − ζ q^{m_coef·m + n_coef·n + constant})` in a double-sum summand.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Correction {
    pub zeta: RootOfUnity,
    pub m_coef: i64,
    pub n_coef: i64,
    pub constant: i64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SumRecipe {
    /// `prefactor · Σ_k q^{quad·k² + lin·k} / ∏ denominators`.
    Single {
        quad: i64,
        lin: i64,
        denominators: &'static [DenominatorSpec],
        prefactor: &'static [FactorSpec],
    },
    /// `Σ_{m,n} q^{m²+3mn+3n² + lin_m·m + lin_n·n} · correction / ((q;q)_m (q³;q³)_n)`.
    Double {
        lin_m: i64,
        lin_n: i64,
        correction: Option<Correction>,
    },
}

impl SumRecipe {
    pub fn needs_eisenstein(&self) -> bool {
        match self {
            SumRecipe::Single { denominators, prefactor, .. } => {
                denominators.iter().any(|d| !d.zeta.is_real())
                    || prefactor.iter().any(|f| !f.zeta.is_real())
            }
            SumRecipe::Double { correction, .. } => {
                correction.is_some_and(|c| !c.zeta.is_real())
            }
        }
    }

    pub(crate) fn expand<R: Coeff>(&self, order: usize, conjugate: bool) -> Series<R> {
        match *self {
            SumRecipe::Single { quad, lin, denominators, prefactor } => {
                single_sum(quad, lin, denominators, prefactor, order, conjugate)
            }
            SumRecipe::Double { lin_m, lin_n, correction } => {
                double_sum(lin_m, lin_n, correction, order, conjugate)
            }
        }
    }
}

fn root<R: Coeff>(z: RootOfUnity, conjugate: bool) -> R {
    let z = if conjugate { z.conj() } else { z };
    R::one().mul_root(z).expect("root must lie in the series ring")
}

fn single_sum<R: Coeff>(
    quad: i64,
    lin: i64,
    denominators: &[DenominatorSpec],
    prefactor: &[FactorSpec],
    order: usize,
    conjugate: bool,
) -> Series<R> {
    assert!(quad > 0 && lin >= 0, "single-sum exponents must be increasing");
    let mut total = Series::<R>::zero(order);
    // Running value of 1 / ∏ (ζ q^s; q^b)_{k+extra}.
    let mut running = Series::<R>::one(order);
    for d in denominators {
        let c = root::<R>(d.zeta, conjugate);
        for j in 0..d.extra {
            running.mul_binomial_pow(&c, d.offset + j * d.modulus, -1);
        }
    }
    for k in 0i64.. {
        let e = quad * k * k + lin * k;
        if e > order as i64 {
            break;
        }
        if k > 0 {
            for d in denominators {
                let c = root::<R>(d.zeta, conjugate);
                let deg = d.offset + (k as usize - 1 + d.extra) * d.modulus;
                running.mul_binomial_pow(&c, deg, -1);
            }
        }
        total.add_shifted(&running, e as usize, None);
    }
    let pre: Vec<FactorSpec> = prefactor
        .iter()
        .map(|f| if conjugate { f.conj() } else { *f })
        .collect();
    apply_factors(&mut total, &pre);
    total
}

fn double_sum<R: Coeff>(
    lin_m: i64,
    lin_n: i64,
    correction: Option<Correction>,
    order: usize,
    conjugate: bool,
) -> Series<R> {
    assert!(lin_m >= -1, "double sums need m² + lin_m·m ≥ 0");
    let big_n = order as i64;
    let exponent = |m: i64, n: i64| m * m + 3 * m * n + 3 * n * n + lin_m * m + lin_n * n;
    // With lin_m ≥ −1 each row is nondecreasing in m, so a row's minimum sits
    // at m = 0. Past the vertex of a parabola the exponent strictly increases,
    // hence the first index beyond it with exponent > N closes the shell.
    let m_done = |m: i64, n: i64| exponent(m, n) > big_n && 2 * m + 1 + 3 * n + lin_m > 0;
    let n_done = |n: i64| exponent(0, n) > big_n && 6 * n + 3 + lin_n > 0;

    let mut inv_m: Vec<Series<R>> = vec![Series::one(order)];
    let one = R::one();
    let corr = correction.map(|c| (c, root::<R>(c.zeta, conjugate).neg_ref()));
    let mut total = Series::<R>::zero(order);
    let mut n = 0i64;
    while !n_done(n) {
        let mut inner = Series::<R>::zero(order);
        let mut m = 0i64;
        while !m_done(m, n) {
            let e = exponent(m, n);
            debug_assert!(e >= 0, "negative q-power in a double sum");
            let mu = m as usize;
            while inv_m.len() <= mu {
                let mut next = inv_m.last().unwrap().clone();
                next.mul_binomial_pow(&one, inv_m.len(), -1);
                inv_m.push(next);
            }
            if (0..=big_n).contains(&e) {
                inner.add_shifted(&inv_m[mu], e as usize, None);
            }
            if let Some((c, neg_zeta)) = &corr {
                let e2 = e + c.m_coef * m + c.n_coef * n + c.constant;
                if (0..=big_n).contains(&e2) {
                    inner.add_shifted(&inv_m[mu], e2 as usize, Some(neg_zeta));
                }
            }
            m += 1;
        }
        debug_assert!(exponent(m, n) > big_n);
        for j in 1..=n as usize {
            inner.mul_binomial_pow(&one, 3 * j, -1);
        }
        total = total.add(&inner);
        n += 1;
    }
    debug_assert!((0..=big_n).all(|m| exponent(m, n) > big_n));
    total
}
