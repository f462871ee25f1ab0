use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_traits::{One, Signed, Zero};

use super::{parse_bigint, BigInt, NumParseError};

/// An element `u + v·ω` of ℤ[ω], with ω a primitive cube root of unity.
///
/// Products are reduced with ω² = −1 − ω.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Eisenstein {
    pub u: BigInt,
    pub v: BigInt,
}

impl Eisenstein {
    pub fn new(u: impl Into<BigInt>, v: impl Into<BigInt>) -> Self {
        Eisenstein { u: u.into(), v: v.into() }
    }

    pub fn from_int(u: impl Into<BigInt>) -> Self {
        Eisenstein { u: u.into(), v: BigInt::zero() }
    }

    pub fn omega() -> Self {
        Eisenstein::new(0, 1)
    }

    pub fn omega_bar() -> Self {
        Eisenstein::new(-1, -1)
    }

    /// `(u + vω)‾ = (u − v) − vω`.
    pub fn conj(&self) -> Self {
        Eisenstein { u: &self.u - &self.v, v: -&self.v }
    }

    /// `x · x̄ = u² − uv + v²`.
    pub fn norm(&self) -> BigInt {
        &self.u * &self.u - &self.u * &self.v + &self.v * &self.v
    }

    pub fn is_rational(&self) -> bool {
        self.v.is_zero()
    }

    /// The six units are ±1, ±ω, ±ω̄; they are exactly the elements of norm 1.
    pub fn is_unit(&self) -> bool {
        self.norm().is_one()
    }

    pub fn unit_inverse(&self) -> Option<Self> {
        self.is_unit().then(|| self.conj())
    }

    pub fn mul_ref(&self, o: &Self) -> Self {
        let vv = &self.v * &o.v;
        Eisenstein {
            u: &self.u * &o.u - &vv,
            v: &self.u * &o.v + &self.v * &o.u - vv,
        }
    }

    /// Multiplication by ω: ω(u + vω) = −v + (u − v)ω.
    pub fn mul_omega(&self) -> Self {
        Eisenstein { u: -&self.v, v: &self.u - &self.v }
    }
}

impl Zero for Eisenstein {
    fn zero() -> Self {
        Eisenstein::new(0, 0)
    }
    fn is_zero(&self) -> bool {
        self.u.is_zero() && self.v.is_zero()
    }
}

impl One for Eisenstein {
    fn one() -> Self {
        Eisenstein::new(1, 0)
    }
}

impl From<BigInt> for Eisenstein {
    fn from(u: BigInt) -> Self {
        Eisenstein::from_int(u)
    }
}

impl From<i64> for Eisenstein {
    fn from(u: i64) -> Self {
        Eisenstein::from_int(u)
    }
}

impl Add for Eisenstein {
    type Output = Eisenstein;
    fn add(self, o: Self) -> Self {
        Eisenstein { u: self.u + o.u, v: self.v + o.v }
    }
}

impl<'a> Add<&'a Eisenstein> for &'a Eisenstein {
    type Output = Eisenstein;
    fn add(self, o: &Eisenstein) -> Eisenstein {
        Eisenstein { u: &self.u + &o.u, v: &self.v + &o.v }
    }
}

impl AddAssign<&Eisenstein> for Eisenstein {
    fn add_assign(&mut self, o: &Eisenstein) {
        self.u += &o.u;
        self.v += &o.v;
    }
}

impl Sub for Eisenstein {
    type Output = Eisenstein;
    fn sub(self, o: Self) -> Self {
        Eisenstein { u: self.u - o.u, v: self.v - o.v }
    }
}

impl<'a> Sub<&'a Eisenstein> for &'a Eisenstein {
    type Output = Eisenstein;
    fn sub(self, o: &Eisenstein) -> Eisenstein {
        Eisenstein { u: &self.u - &o.u, v: &self.v - &o.v }
    }
}

impl SubAssign<&Eisenstein> for Eisenstein {
    fn sub_assign(&mut self, o: &Eisenstein) {
        self.u -= &o.u;
        self.v -= &o.v;
    }
}

impl Mul for Eisenstein {
    type Output = Eisenstein;
    fn mul(self, o: Self) -> Self {
        self.mul_ref(&o)
    }
}

impl<'a> Mul<&'a Eisenstein> for &'a Eisenstein {
    type Output = Eisenstein;
    fn mul(self, o: &Eisenstein) -> Eisenstein {
        self.mul_ref(o)
    }
}

impl Neg for Eisenstein {
    type Output = Eisenstein;
    fn neg(self) -> Self {
        Eisenstein { u: -self.u, v: -self.v }
    }
}

impl fmt::Display for Eisenstein {
    /// Prints `u+v*w`, dropping zero parts and unit multipliers: `3-2*w`, `-w`, `5`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.v.is_zero() {
            return write!(f, "{}", self.u);
        }
        let vpart = if self.v.is_one() {
            "w".to_string()
        } else if self.v == -BigInt::one() {
            "-w".to_string()
        } else {
            format!("{}*w", self.v)
        };
        if self.u.is_zero() {
            write!(f, "{vpart}")
        } else if self.v.is_negative() {
            write!(f, "{}{}", self.u, vpart)
        } else {
            write!(f, "{}+{}", self.u, vpart)
        }
    }
}

impl FromStr for Eisenstein {
    type Err = NumParseError;

    /// Accepts signed sums of terms `n`, `n*w`, `w`, `n*wb`, `wb`, where
    /// `wb` denotes ω̄ = −1 − ω.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || NumParseError::Eisenstein(s.to_string());
        let text: String = s
            .replace('\u{2212}', "-")
            .chars()
            .filter(|c| !c.is_whitespace())
            .collect();
        if text.is_empty() {
            return Err(NumParseError::Empty);
        }
        let mut total = Eisenstein::zero();
        let mut rest = text.as_str();
        let mut first = true;
        while !rest.is_empty() {
            let (negative, body) = match rest.as_bytes()[0] {
                b'+' if !first => (false, &rest[1..]),
                b'-' => (true, &rest[1..]),
                _ if first => (false, rest),
                _ => return Err(bad()),
            };
            first = false;
            let end = body.find(['+', '-']).unwrap_or(body.len());
            let term = &body[..end];
            rest = &body[end..];
            if term.is_empty() {
                return Err(bad());
            }
            let (coef, unit) = match term.rsplit_once('*') {
                Some((c, u)) => (parse_bigint(c).map_err(|_| bad())?, u),
                None if term.ends_with('w') || term.ends_with("wb") => {
                    let idx = term.find('w').unwrap();
                    if idx > 0 {
                        (parse_bigint(&term[..idx]).map_err(|_| bad())?, &term[idx..])
                    } else {
                        (BigInt::one(), term)
                    }
                }
                None => (parse_bigint(term).map_err(|_| bad())?, ""),
            };
            let base = match unit {
                "" => Eisenstein::one(),
                "w" => Eisenstein::omega(),
                "wb" => Eisenstein::omega_bar(),
                _ => return Err(bad()),
            };
            let value = Eisenstein { u: &base.u * &coef, v: &base.v * &coef };
            total = if negative { total - value } else { total + value };
        }
        Ok(total)
    }
}
