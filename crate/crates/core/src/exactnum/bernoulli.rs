use std::sync::Mutex;

use num_traits::{One, Zero};

use super::{BigInt, Rational};

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// B_0..=B_n with the convention B_1 = −1/2.
///
/// Uses the Akiyama–Tanigawa transform, which yields B_1 = +1/2; the sign of
/// B_1 is flipped afterwards.
pub fn bernoulli_numbers(n: usize) -> Vec<Rational> {
    static TABLE: Mutex<Vec<Rational>> = Mutex::new(Vec::new());
    let mut table = TABLE.lock().unwrap_or_else(|e| e.into_inner());
    if table.len() <= n {
        *table = akiyama_tanigawa(n.max(2 * table.len()));
    }
    table[..=n].to_vec()
}

fn akiyama_tanigawa(n: usize) -> Vec<Rational> {
    let mut out = Vec::with_capacity(n + 1);
    let mut a: Vec<Rational> = Vec::with_capacity(n + 1);
    for m in 0..=n {
        a.push(Rational::new(BigInt::one(), BigInt::from(m + 1)));
        for j in (1..=m).rev() {
            let diff = &a[j - 1] - &a[j];
            a[j - 1] = diff * Rational::from_integer(BigInt::from(j));
        }
        out.push(a[0].clone());
    }
    if n >= 1 {
        out[1] = -out[1].clone();
    }
    out
}

pub fn bernoulli_number(n: usize) -> Rational {
    if n > 1 && n % 2 == 1 {
        return Rational::zero();
    }
    bernoulli_numbers(n).pop().unwrap()
}

/// B_n(t) = Σ_j C(n, j) B_j t^{n−j}.
pub fn bernoulli_poly(n: usize, t: &Rational) -> Rational {
    let b = bernoulli_numbers(n);
    // Horner in t over the coefficients C(n, j) B_j, highest power first.
    let mut acc = Rational::zero();
    for j in 0..=n {
        acc = acc * t + Rational::from_integer(binomial(n as u64, j as u64)) * &b[j];
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::parse_rational;

    fn q(s: &str) -> Rational {
        parse_rational(s).unwrap()
    }

    /// Independent oracle: Σ_{j=0}^{n} C(n+1, j) B_j = 0 for n ≥ 1.
    fn recurrence_oracle(n: usize) -> Vec<Rational> {
        let mut b = vec![Rational::one()];
        for m in 1..=n {
            let mut s = Rational::zero();
            for (j, bj) in b.iter().enumerate() {
                s += Rational::from_integer(binomial(m as u64 + 1, j as u64)) * bj;
            }
            b.push(-s / Rational::from_integer(BigInt::from(m + 1)));
        }
        b
    }

    #[test]
    fn examples() {
        assert_eq!(bernoulli_number(0), q("1"));
        assert_eq!(bernoulli_number(1), q("-1/2"));
        assert_eq!(bernoulli_number(2), q("1/6"));
        assert_eq!(bernoulli_number(3), q("0"));
        assert_eq!(bernoulli_number(12), q("-691/2730"));
    }

    #[test]
    fn matches_recurrence_oracle() {
        assert_eq!(bernoulli_numbers(60), recurrence_oracle(60));
    }

    #[test]
    fn second_polynomial_values() {
        assert_eq!(bernoulli_poly(2, &q("1/5")), q("1/150"));
        assert_eq!(bernoulli_poly(3, &q("1/2")), q("0"));
        // 1/49 − 1/7 + 1/6
        assert_eq!(bernoulli_poly(2, &q("1/7")), q("13/294"));
        assert_eq!(q("7") * bernoulli_poly(2, &q("1/7")) / q("2"), q("13/84"));
        let t = q("3/11");
        assert_eq!(bernoulli_poly(2, &t), &t * &t - &t + q("1/6"));
    }

    #[test]
    fn endpoint_difference() {
        for n in 0..30 {
            let d = bernoulli_poly(n, &q("1")) - bernoulli_poly(n, &q("0"));
            let expected = if n == 1 { q("1") } else { q("0") };
            assert_eq!(d, expected, "n = {n}");
        }
    }

    #[test]
    fn odd_reflection() {
        for t in ["1/5", "2/9", "3/7", "-4/3", "17/2"] {
            let t = q(t);
            let s = q("1") - &t;
            for n in (3..25).step_by(2) {
                assert_eq!(bernoulli_poly(n, &s), -bernoulli_poly(n, &t));
            }
        }
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), BigInt::from(10));
        assert_eq!(binomial(60, 30).to_string(), "118264581564861424");
        assert_eq!(binomial(3, 4), BigInt::zero());
    }
}
