use std::fmt;

use super::Eisenstein;

/// A sixth root of unity ζ = (−ω̄)^j, stored as the exponent j mod 6.
///
/// j = 0..5 gives 1, −ω̄, ω, −1, ω̄, −ω.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RootOfUnity(u8);

impl RootOfUnity {
    pub const ONE: RootOfUnity = RootOfUnity(0);
    pub const NEG_OMEGA_BAR: RootOfUnity = RootOfUnity(1);
    pub const OMEGA: RootOfUnity = RootOfUnity(2);
    pub const NEG_ONE: RootOfUnity = RootOfUnity(3);
    pub const OMEGA_BAR: RootOfUnity = RootOfUnity(4);
    pub const NEG_OMEGA: RootOfUnity = RootOfUnity(5);

    pub fn from_exponent(j: i64) -> Self {
        RootOfUnity(j.rem_euclid(6) as u8)
    }

    pub fn exponent(self) -> u8 {
        self.0
    }

    pub fn mul(self, o: RootOfUnity) -> RootOfUnity {
        RootOfUnity((self.0 + o.0) % 6)
    }

    pub fn pow(self, k: u64) -> RootOfUnity {
        RootOfUnity(((self.0 as u64 * (k % 6)) % 6) as u8)
    }

    pub fn conj(self) -> RootOfUnity {
        RootOfUnity((6 - self.0) % 6)
    }

    pub fn neg(self) -> RootOfUnity {
        self.mul(RootOfUnity::NEG_ONE)
    }

    /// True for ±1, the roots that keep integer series integral.
    pub fn is_real(self) -> bool {
        self.0 % 3 == 0
    }

    pub fn sign(self) -> Option<i64> {
        match self.0 {
            0 => Some(1),
            3 => Some(-1),
            _ => None,
        }
    }

    pub fn to_eisenstein(self) -> Eisenstein {
        match self.0 {
            0 => Eisenstein::new(1, 0),
            1 => Eisenstein::new(1, 1),
            2 => Eisenstein::new(0, 1),
            3 => Eisenstein::new(-1, 0),
            4 => Eisenstein::new(-1, -1),
            _ => Eisenstein::new(0, -1),
        }
    }

    /// Multiplies an Eisenstein integer by this root without a general product.
    pub fn apply(self, x: &Eisenstein) -> Eisenstein {
        match self.0 {
            0 => x.clone(),
            3 => -x.clone(),
            2 => x.mul_omega(),
            5 => -x.mul_omega(),
            4 => x.mul_omega().mul_omega(),
            _ => -x.mul_omega().mul_omega(),
        }
    }

    /// The DSL prefix: "", "-", "w", "wb", "-w", "-wb".
    pub fn dsl_prefix(self) -> &'static str {
        match self.0 {
            0 => "",
            1 => "-wb",
            2 => "w",
            3 => "-",
            4 => "wb",
            _ => "-w",
        }
    }
}

impl fmt::Display for RootOfUnity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self.0 {
            0 => "1",
            1 => "-wb",
            2 => "w",
            3 => "-1",
            4 => "wb",
            _ => "-w",
        };
        f.write_str(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exponents_match_values() {
        let zeta = RootOfUnity::NEG_OMEGA_BAR.to_eisenstein();
        let mut acc = Eisenstein::new(1, 0);
        for j in 0..6 {
            assert_eq!(RootOfUnity::from_exponent(j).to_eisenstein(), acc);
            acc = &acc * &zeta;
        }
        assert_eq!(acc, Eisenstein::new(1, 0));
    }

    #[test]
    fn group_law_and_apply() {
        let x = Eisenstein::new(3, -7);
        for a in 0..6 {
            let ra = RootOfUnity::from_exponent(a);
            assert_eq!(ra.apply(&x), &ra.to_eisenstein() * &x);
            assert_eq!(ra.conj().to_eisenstein(), ra.to_eisenstein().conj());
            for b in 0..6 {
                let rb = RootOfUnity::from_exponent(b);
                assert_eq!(
                    ra.mul(rb).to_eisenstein(),
                    &ra.to_eisenstein() * &rb.to_eisenstein()
                );
            }
        }
        assert_eq!(RootOfUnity::OMEGA.pow(3), RootOfUnity::ONE);
        assert_eq!(RootOfUnity::NEG_ONE.pow(5), RootOfUnity::NEG_ONE);
        assert!(RootOfUnity::NEG_ONE.is_real());
        assert!(!RootOfUnity::OMEGA_BAR.is_real());
    }
}
