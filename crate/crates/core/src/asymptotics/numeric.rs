//! MPFR evaluation of products and expansions at a working precision given
//! in decimal digits.

use num_traits::{One, Signed};
use rug::float::Constant;
use rug::{Float, Integer};

use super::{check_ratio, gcd, AsymptoticExpansion, AsymptoticsError, ConstantTerm};
use crate::exactnum::{bernoulli_poly, format_rational, Rational};
use crate::par;

pub const DEFAULT_DIGITS: u32 = 50;

/// Working precision in bits for `digits` decimal digits, with guard bits.
pub fn bits(digits: u32) -> u32 {
    (digits as f64 * std::f64::consts::LOG2_10).ceil() as u32 + 32
}

pub fn rational_to_float(r: &Rational, prec: u32) -> Float {
    let num: Integer = r.numer().to_string().parse().expect("decimal integer");
    let den: Integer = r.denom().to_string().parse().expect("decimal integer");
    Float::with_val(prec, num) / Float::with_val(prec, den)
}

/// `−Σ_{m≥0} ln(1 − e^{−(m+a)x})`, truncated once the tail is below `10^{−(digits+5)}`.
fn product_log(a: &Float, x: &Float, digits: u32) -> Float {
    let prec = bits(digits);
    let xf = x.to_f64();
    let af = a.to_f64();
    // Tail from M on is at most y_M / ((1 − y_M)(1 − e^{−x})) with y_M = e^{−(M+a)x}.
    let budget = (digits as f64 + 5.0) * std::f64::consts::LN_10 + 2f64.ln() - (-(-xf).exp_m1()).ln();
    let terms = ((budget.max(2f64.ln()) / xf - af).ceil().max(0.0) as usize) + 1;
    let parts = par::map_range(terms, 256, |m| {
        let arg = Float::with_val(prec, m) + a;
        let y = (-(arg * x)).exp();
        -(-y).ln_1p()
    });
    let mut acc = Float::with_val(prec, 0);
    for t in parts {
        acc += t;
    }
    acc
}

fn check_x(x: &Rational) -> Result<(), AsymptoticsError> {
    if !x.is_positive() {
        return Err(AsymptoticsError::OutOfRange(format!("x = {} must be positive", format_rational(x))));
    }
    Ok(())
}

/// `−ln ∏_{m≥0} (1 − e^{−(m+a)x})`.
pub fn eval_product_direct(a: &Rational, x: &Rational, digits: u32) -> Result<Float, AsymptoticsError> {
    check_x(x)?;
    if !a.is_positive() {
        return Err(AsymptoticsError::OutOfRange(format!("a = {} must be positive", format_rational(a))));
    }
    let prec = bits(digits);
    Ok(product_log(&rational_to_float(a, prec), &rational_to_float(x, prec), digits))
}

/// `−ln ∏_{m≥0} (1 − e^{−(m+a)x})(1 − e^{−(m+1−a)x})`.
pub fn eval_pair_direct(a: &Rational, x: &Rational, digits: u32) -> Result<Float, AsymptoticsError> {
    if a >= &Rational::one() {
        return Err(AsymptoticsError::OutOfRange(format!("a = {} must lie in (0, 1)", format_rational(a))));
    }
    Ok(eval_product_direct(a, x, digits)? + eval_product_direct(&(Rational::one() - a), x, digits)?)
}

fn constant_value(c: &ConstantTerm, prec: u32) -> Float {
    let pi = Float::with_val(prec, Constant::Pi);
    match c {
        ConstantTerm::Zero => Float::with_val(prec, 0),
        ConstantTerm::LnGammaOverSqrt2Pi(a) => {
            rational_to_float(a, prec).ln_gamma() - (pi * 2u32).ln() / 2u32
        }
        ConstantTerm::NegLnTwoSinPi(a) => -((rational_to_float(a, prec) * pi).sin() * 2u32).ln(),
    }
}

/// Numeric value of the expansion at `x`.
pub fn eval_expansion(e: &AsymptoticExpansion, x: &Rational, digits: u32) -> Result<Float, AsymptoticsError> {
    check_x(x)?;
    let prec = bits(digits);
    let xf = rational_to_float(x, prec);
    let pi = Float::with_val(prec, Constant::Pi);
    let mut acc = rational_to_float(&e.inv_x_pi2, prec) * pi.square() / &xf;
    acc += rational_to_float(&e.log_coef, prec) * xf.clone().ln();
    acc += constant_value(&e.constant, prec);
    let mut xn = xf.clone();
    for c in &e.poly {
        acc += rational_to_float(c, prec) * &xn;
        xn *= &xf;
    }
    Ok(acc)
}

/// `direct − expansion` for the product the expansion describes.
pub fn expansion_residual(e: &AsymptoticExpansion, x: &Rational, digits: u32) -> Result<Float, AsymptoticsError> {
    let direct = if e.pair {
        eval_pair_direct(&e.a, x, digits)?
    } else {
        eval_product_direct(&e.a, x, digits)?
    };
    Ok(direct - eval_expansion(e, x, digits)?)
}

/// `R = q^{bB₂(a/b)/2} (q^a, q^{b−a}; q^b)_∞ / (2 sin(πa/b) e^{−π/(6bx)})` at `q = e^{−2πx}`.
///
/// `R → 1` as `x → 0`, with an exponentially small error.
pub fn modular_normalized_check(a: u64, b: u64, x: &Rational, digits: u32) -> Result<Float, AsymptoticsError> {
    let t = check_ratio(a, b)?;
    if gcd(a, b) != 1 {
        return Err(AsymptoticsError::OutOfRange(format!("{a}/{b} is not in lowest terms")));
    }
    check_x(x)?;
    let prec = bits(digits);
    let pi = Float::with_val(prec, Constant::Pi);
    let xf = rational_to_float(x, prec);
    let big_x = Float::with_val(prec, &pi * &xf) * (2 * b);
    let tf = rational_to_float(&t, prec);
    let one_minus = rational_to_float(&(Rational::one() - &t), prec);
    let s = product_log(&tf, &big_x, digits) + product_log(&one_minus, &big_x, digits);
    let b2 = rational_to_float(&bernoulli_poly(2, &t), prec);
    let mut ln_r = -s - b2 * &big_x / 2u32;
    ln_r += Float::with_val(prec, &pi / (xf * (6 * b)));
    ln_r -= ((tf * pi).sin() * 2u32).ln();
    Ok(ln_r.exp())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::asymptotics::{expansion_pair, expansion_single};
    use crate::exactnum::parse_rational;

    fn r(s: &str) -> Rational {
        parse_rational(s).unwrap()
    }

    /// Plain f64 summation; an independent oracle at low precision.
    fn f64_direct(a: f64, x: f64) -> f64 {
        (0..100_000).map(|m| -(-(-(m as f64 + a) * x).exp()).ln_1p()).sum()
    }

    #[test]
    fn a_one_half_x() {
        let d = eval_product_direct(&r("1"), &r("0.5"), 30).unwrap();
        assert!((d.to_f64() - f64_direct(1.0, 0.5)).abs() < 1e-13);
        assert!((d.to_f64() - 2.003_522_676_878_474).abs() < 1e-14, "{d}");
        let e = eval_expansion(&expansion_single(&r("1"), 6).unwrap(), &r("0.5"), 30).unwrap();
        assert!((e.to_f64() - 2.003_522_676_878_474).abs() < 1e-14, "{e}");
    }

    #[test]
    fn precision_is_consistent() {
        let lo = eval_product_direct(&r("1/5"), &r("0.1"), 30).unwrap();
        let hi = eval_product_direct(&r("1/5"), &r("0.1"), 60).unwrap();
        let diff = Float::with_val(bits(60), &lo - &hi).abs();
        assert!(diff < Float::with_val(64, 1e-30), "{diff}");
        assert!((lo.to_f64() - f64_direct(0.2, 0.1)).abs() < 1e-11);
    }

    #[test]
    fn large_x_single_term() {
        let d = eval_product_direct(&r("1/3"), &r("50"), 50).unwrap();
        let lead = (-50.0f64 / 3.0).exp();
        assert!((d.to_f64() / lead - 1.0).abs() < 1e-6);
    }

    #[test]
    fn zero_expansion() {
        let z = eval_expansion(&crate::asymptotics::AsymptoticExpansion::zero(4), &r("0.3"), 20).unwrap();
        assert!(z.is_zero());
    }

    #[test]
    fn pair_constant_at_one_half() {
        // (q^{1/2}; q)_∞² with q = e^{−x}: the constant term is −ln 2.
        let e = expansion_pair(&r("1/2"), 2).unwrap();
        let v = constant_value(&e.constant, 100);
        assert!((v.to_f64() + 2f64.ln()).abs() < 1e-15);
        let res = expansion_residual(&e, &r("0.05"), 40).unwrap();
        assert!(res.abs() < Float::with_val(64, 1e-30));
    }

    #[test]
    fn a_one_corrections_are_tiny() {
        let e = expansion_single(&r("1"), 6).unwrap();
        let res = expansion_residual(&e, &r("0.1"), 30).unwrap();
        assert!(res.clone().abs() < Float::with_val(64, 1e-25), "{res}");
    }

    #[test]
    fn modular_check_decays() {
        let r1 = modular_normalized_check(1, 5, &r("0.1"), 50).unwrap();
        let r2 = modular_normalized_check(1, 5, &r("0.05"), 50).unwrap();
        let d1 = (r1 - 1u32).abs();
        let d2 = (r2 - 1u32).abs();
        assert!(d1 < Float::with_val(64, 1e-4));
        assert!(d2 * 1000u32 < d1);
        assert!(modular_normalized_check(2, 4, &r("0.1"), 20).is_err());
        // Far from the limit the ratio is still the stated closed form.
        let x = 0.5f64;
        let q = (-2.0 * std::f64::consts::PI * x).exp();
        let prod: f64 = (0..200).map(|m| (1.0 - q.powi(2 * m + 1)).powi(2)).product();
        let want = q.powf(-1.0 / 12.0) * prod / (2.0 * (-std::f64::consts::PI / (12.0 * x)).exp());
        let half = modular_normalized_check(1, 2, &r("0.5"), 30).unwrap();
        assert!((half.to_f64() - want).abs() < 1e-12);
    }
}
