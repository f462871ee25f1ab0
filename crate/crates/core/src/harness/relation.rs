//! Constant-coefficient linear relations among truncated series.

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::exactnum::{BigInt, Rational};
use crate::qseries::{SeriesError, TruncatedSeries};

fn row_gcd(row: &[BigInt]) -> BigInt {
    row.iter().fold(BigInt::zero(), |g, x| g.gcd(x))
}

fn normalize(row: &mut [BigInt]) {
    let g = row_gcd(row);
    if !g.is_zero() && !g.is_one() {
        for x in row.iter_mut() {
            *x /= &g;
        }
    }
}

/// Rows of the integer matrix whose kernel is the relation space: one row
/// per degree, two for ℤ[ω] (the 1- and ω-parts).
fn equations(series: &[TruncatedSeries], n: usize) -> Result<Vec<Vec<BigInt>>, SeriesError> {
    let s = series.len();
    let eis = series.iter().any(|f| matches!(f, TruncatedSeries::Eis(_)));
    let rat = series.iter().any(|f| matches!(f, TruncatedSeries::Rat(_)));
    let mut rows = Vec::new();
    if eis {
        let e: Vec<_> = series.iter().map(|f| f.to_eisenstein()).collect::<Result<_, _>>()?;
        for d in 0..=n {
            rows.push((0..s).map(|i| e[i].coeff(d).u.clone()).collect());
            rows.push((0..s).map(|i| e[i].coeff(d).v.clone()).collect());
        }
    } else if rat {
        let r: Vec<_> = series.iter().map(|f| f.to_rational()).collect::<Result<_, _>>()?;
        for d in 0..=n {
            let row: Vec<&Rational> = (0..s).map(|i| r[i].coeff(d)).collect();
            let l = row.iter().fold(BigInt::one(), |l, x| l.lcm(x.denom()));
            rows.push(row.iter().map(|x| x.numer() * (&l / x.denom())).collect());
        }
    } else {
        for d in 0..=n {
            rows.push(
                series
                    .iter()
                    .map(|f| match f {
                        TruncatedSeries::Int(x) => x.coeff(d).clone(),
                        _ => unreachable!(),
                    })
                    .collect(),
            );
        }
    }
    rows.retain(|r: &Vec<BigInt>| r.iter().any(|x| !x.is_zero()));
    Ok(rows)
}

/// Fraction-free Gauss–Jordan elimination; returns the nonzero rows and their pivot columns.
fn reduce(mut rows: Vec<Vec<BigInt>>, cols: usize) -> (Vec<Vec<BigInt>>, Vec<usize>) {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).filter(|&i| !rows[i][c].is_zero()).min_by_key(|&i| rows[i][c].abs()) else {
            continue;
        };
        rows.swap(r, p);
        normalize(&mut rows[r]);
        let piv = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let g = piv[c].gcd(&row[c]);
            let a = &piv[c] / &g;
            let b = &row[c] / &g;
            for j in 0..cols {
                row[j] = &a * &row[j] - &b * &piv[j];
            }
            normalize(row);
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    (rows, pivots)
}

/// `Σ λ_i F_i` through `q^n`.
pub fn combine(series: &[TruncatedSeries], lambda: &[BigInt], n: usize) -> Result<TruncatedSeries, SeriesError> {
    let mut acc = TruncatedSeries::zero(n);
    for (f, l) in series.iter().zip(lambda) {
        let c = TruncatedSeries::Int(crate::qseries::Series::constant(l.clone(), n));
        acc = acc.add(&c.mul(&f.truncate(n))?)?;
    }
    Ok(acc)
}

/// A basis of integer vectors `λ` with `Σ λ_i F_i ≡ 0 (mod q^{n+1})`.
///
/// Each vector is primitive with a positive first nonzero entry. An empty
/// basis means no constant-coefficient relation holds through `q^n`.
pub fn find_relation(series: &[TruncatedSeries], n: usize) -> Result<Vec<Vec<BigInt>>, SeriesError> {
    let s = series.len();
    let available = series.iter().map(|f| f.order()).min().unwrap_or(0);
    if n > available {
        return Err(SeriesError::OrderExceeded { requested: n, available });
    }
    let (rows, pivots) = reduce(equations(series, n)?, s);
    let mut basis = Vec::new();
    for free in (0..s).filter(|c| !pivots.contains(c)) {
        let l = rows.iter().zip(&pivots).fold(BigInt::one(), |l, (row, &p)| l.lcm(&row[p]));
        let mut v = vec![BigInt::zero(); s];
        v[free] = l.clone();
        for (row, &p) in rows.iter().zip(&pivots) {
            v[p] = -(&row[free] * (&l / &row[p]));
        }
        normalize(&mut v);
        if v.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative()) {
            for x in v.iter_mut() {
                *x = -x.clone();
            }
        }
        assert!(combine(series, &v, n)?.is_zero_upto(n), "kernel vector fails re-verification");
        basis.push(v);
    }
    Ok(basis)
}
