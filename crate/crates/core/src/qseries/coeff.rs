use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::exactnum::{BigInt, Eisenstein, Rational, RootOfUnity};

/// Coefficient rings a truncated series can live in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Ring {
    Integer,
    Rational,
    Eisenstein,
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Ring::Integer => "int",
            Ring::Rational => "rat",
            Ring::Eisenstein => "eis",
        })
    }
}

/// The ring operations series arithmetic needs.
pub trait Coeff: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync + 'static {
    const RING: Ring;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(n: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn add_assign_ref(&mut self, o: &Self);
    fn sub_assign_ref(&mut self, o: &Self);
    fn mul_ref(&self, o: &Self) -> Self;
    fn neg_ref(&self) -> Self;
    /// Multiplicative inverse when `self` is a unit of the ring.
    fn unit_inverse(&self) -> Option<Self>;
    /// `ζ·self`, or `None` when ζ is not an element of the ring.
    fn mul_root(&self, z: RootOfUnity) -> Option<Self>;

    fn is_one(&self) -> bool {
        *self == Self::one()
    }
}

impl Coeff for BigInt {
    const RING: Ring = Ring::Integer;

    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn from_i64(n: i64) -> Self {
        BigInt::from(n)
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add_assign_ref(&mut self, o: &Self) {
        *self += o;
    }
    fn sub_assign_ref(&mut self, o: &Self) {
        *self -= o;
    }
    fn mul_ref(&self, o: &Self) -> Self {
        self * o
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn unit_inverse(&self) -> Option<Self> {
        One::is_one(&self.abs()).then(|| self.clone())
    }
    fn mul_root(&self, z: RootOfUnity) -> Option<Self> {
        z.sign().map(|s| if s < 0 { -self } else { self.clone() })
    }
}

impl Coeff for Rational {
    const RING: Ring = Ring::Rational;

    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn from_i64(n: i64) -> Self {
        Rational::from_integer(BigInt::from(n))
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add_assign_ref(&mut self, o: &Self) {
        *self += o;
    }
    fn sub_assign_ref(&mut self, o: &Self) {
        *self -= o;
    }
    fn mul_ref(&self, o: &Self) -> Self {
        self * o
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn unit_inverse(&self) -> Option<Self> {
        (!Zero::is_zero(self)).then(|| self.recip())
    }
    fn mul_root(&self, z: RootOfUnity) -> Option<Self> {
        z.sign().map(|s| if s < 0 { -self } else { self.clone() })
    }
}

impl Coeff for Eisenstein {
    const RING: Ring = Ring::Eisenstein;

    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn from_i64(n: i64) -> Self {
        Eisenstein::from_int(n)
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add_assign_ref(&mut self, o: &Self) {
        *self += o;
    }
    fn sub_assign_ref(&mut self, o: &Self) {
        *self -= o;
    }
    fn mul_ref(&self, o: &Self) -> Self {
        Eisenstein::mul_ref(self, o)
    }
    fn neg_ref(&self) -> Self {
        -self.clone()
    }
    fn unit_inverse(&self) -> Option<Self> {
        Eisenstein::unit_inverse(self)
    }
    fn mul_root(&self, z: RootOfUnity) -> Option<Self> {
        Some(z.apply(self))
    }
}
