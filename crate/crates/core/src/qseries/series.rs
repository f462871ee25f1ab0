use super::coeff::Coeff;
use super::SeriesError;
use crate::exactnum::RootOfUnity;
use crate::par;

/// Output-coefficient count × nonzero-term count above which products fan out.
const PARALLEL_MUL_WORK: usize = 40_000;

/// Dense coefficients `c_0..=c_N` of a power series known exactly through `q^N`.
#[derive(Clone, Debug, PartialEq)]
pub struct Series<R> {
    coeffs: Vec<R>,
}

impl<R: Coeff> Series<R> {
    pub fn from_coeffs(coeffs: Vec<R>) -> Self {
        assert!(!coeffs.is_empty(), "a truncated series stores at least c_0");
        Series { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        Series { coeffs: vec![R::zero(); order + 1] }
    }

    pub fn one(order: usize) -> Self {
        Self::constant(R::one(), order)
    }

    pub fn constant(c: R, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c;
        s
    }

    /// `c·q^k`, which is the zero series when `k > order`.
    pub fn monomial(c: R, k: usize, order: usize) -> Self {
        let mut s = Self::zero(order);
        if k <= order {
            s.coeffs[k] = c;
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<R> {
        self.coeffs
    }

    pub fn coeff(&self, n: usize) -> &R {
        &self.coeffs[n]
    }

    pub fn coeff_mut(&mut self, n: usize) -> &mut R {
        &mut self.coeffs[n]
    }

    pub fn truncate(&self, order: usize) -> Self {
        assert!(order <= self.order());
        Series { coeffs: self.coeffs[..=order].to_vec() }
    }

    pub fn truncated(mut self, order: usize) -> Self {
        assert!(order <= self.order());
        self.coeffs.truncate(order + 1);
        self
    }

    pub fn map<S: Coeff>(&self, f: impl Fn(&R) -> S) -> Series<S> {
        Series { coeffs: self.coeffs.iter().map(f).collect() }
    }

    fn nonzero_indices(&self, upto: usize) -> Vec<usize> {
        (0..=upto).filter(|&i| !self.coeffs[i].is_zero()).collect()
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.order().min(o.order());
        let mut out = self.truncate(n);
        for (a, b) in out.coeffs.iter_mut().zip(&o.coeffs) {
            a.add_assign_ref(b);
        }
        out
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.order().min(o.order());
        let mut out = self.truncate(n);
        for (a, b) in out.coeffs.iter_mut().zip(&o.coeffs) {
            a.sub_assign_ref(b);
        }
        out
    }

    pub fn neg(&self) -> Self {
        self.map(R::neg_ref)
    }

    pub fn scale(&self, c: &R) -> Self {
        self.map(|x| x.mul_ref(c))
    }

    /// Truncated Cauchy product; iterates over the sparser factor.
    pub fn mul(&self, o: &Self) -> Self {
        let n = self.order().min(o.order());
        let nz_a = self.nonzero_indices(n);
        let nz_b = o.nonzero_indices(n);
        let (sparse, idx, dense) = if nz_a.len() <= nz_b.len() {
            (self, nz_a, o)
        } else {
            (o, nz_b, self)
        };
        if idx.len() == 1 && sparse.coeffs[idx[0]].is_one() {
            return dense.truncate(n).shift(idx[0]);
        }
        let work = idx.len().saturating_mul(n + 1);
        let min_parallel = if work >= PARALLEL_MUL_WORK { 0 } else { usize::MAX };
        let coeffs = par::map_range(n + 1, min_parallel, |m| {
            let mut acc = R::zero();
            for &i in idx.iter().take_while(|&&i| i <= m) {
                let b = &dense.coeffs[m - i];
                if !b.is_zero() {
                    acc.add_assign_ref(&sparse.coeffs[i].mul_ref(b));
                }
            }
            acc
        });
        Series { coeffs }
    }

    /// Multiplies by `q^k`, keeping the order.
    pub fn shift(&self, k: usize) -> Self {
        let n = self.order();
        let mut out = Self::zero(n);
        for i in k..=n {
            out.coeffs[i] = self.coeffs[i - k].clone();
        }
        out
    }

    /// Adds `c·q^k·other` into `self` (through `self`'s order).
    pub fn add_shifted(&mut self, other: &Self, k: usize, c: Option<&R>) {
        let n = self.order();
        if k > n {
            return;
        }
        for i in 0..=(n - k).min(other.order()) {
            let b = &other.coeffs[i];
            if b.is_zero() {
                continue;
            }
            match c {
                Some(c) => self.coeffs[i + k].add_assign_ref(&b.mul_ref(c)),
                None => self.coeffs[i + k].add_assign_ref(b),
            }
        }
    }

    /// In place: `self ← self · (1 − c·q^k)`.
    pub fn mul_binomial(&mut self, c: &R, k: usize) {
        assert!(k >= 1);
        let n = self.order();
        for i in (k..=n).rev() {
            if !self.coeffs[i - k].is_zero() {
                let t = self.coeffs[i - k].mul_ref(c);
                self.coeffs[i].sub_assign_ref(&t);
            }
        }
    }

    /// In place: `self ← self / (1 − c·q^k)`.
    pub fn div_binomial(&mut self, c: &R, k: usize) {
        assert!(k >= 1);
        let n = self.order();
        for i in k..=n {
            if !self.coeffs[i - k].is_zero() {
                let t = self.coeffs[i - k].mul_ref(c);
                self.coeffs[i].add_assign_ref(&t);
            }
        }
    }

    /// `self · (1 − c·q^k)^e` for any integer `e`.
    pub fn mul_binomial_pow(&mut self, c: &R, k: usize, e: i64) {
        if k > self.order() {
            return;
        }
        for _ in 0..e.unsigned_abs() {
            if e > 0 {
                self.mul_binomial(c, k);
            } else {
                self.div_binomial(c, k);
            }
        }
    }

    pub fn inverse(&self) -> Result<Self, SeriesError> {
        let inv0 = self.coeffs[0]
            .unit_inverse()
            .ok_or_else(|| SeriesError::NonUnitConstant(self.coeffs[0].to_string()))?;
        let n = self.order();
        let idx: Vec<usize> = self.nonzero_indices(n).into_iter().filter(|&i| i > 0).collect();
        let mut g = Vec::with_capacity(n + 1);
        g.push(inv0.clone());
        for m in 1..=n {
            let mut acc = R::zero();
            for &j in idx.iter().take_while(|&&j| j <= m) {
                acc.add_assign_ref(&self.coeffs[j].mul_ref(&g[m - j]));
            }
            g.push(acc.mul_ref(&inv0).neg_ref());
        }
        Ok(Series { coeffs: g })
    }

    pub fn pow(&self, e: i64) -> Result<Self, SeriesError> {
        let base = if e < 0 { self.inverse()? } else { self.clone() };
        let mut k = e.unsigned_abs();
        let mut acc = Self::one(self.order());
        let mut sq = base;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&sq);
            }
            k >>= 1;
            if k > 0 {
                sq = sq.mul(&sq);
            }
        }
        Ok(acc)
    }

    /// `−q F′(q) / F(q)`; requires `c_0 = 1`.
    pub fn q_logderiv(&self) -> Result<Self, SeriesError> {
        if !self.coeffs[0].is_one() {
            return Err(SeriesError::ConstantTermNotOne(self.coeffs[0].to_string()));
        }
        let n = self.order();
        let idx: Vec<usize> = self.nonzero_indices(n).into_iter().filter(|&i| i > 0).collect();
        let mut c = vec![R::zero(); n + 1];
        // F·C = −qF′ gives c_m = −m f_m − Σ_{j=1}^{m−1} f_j c_{m−j}.
        for m in 1..=n {
            let mut acc = self.coeffs[m].mul_ref(&R::from_i64(m as i64));
            for &j in idx.iter().take_while(|&&j| j < m) {
                acc.add_assign_ref(&self.coeffs[j].mul_ref(&c[m - j]));
            }
            c[m] = acc.neg_ref();
        }
        Ok(Series { coeffs: c })
    }

    /// `F(ζ q^k)` through order `(N+1)k − 1`; `None` if ζ is not in the ring.
    pub fn substitute(&self, z: RootOfUnity, k: usize) -> Option<Self> {
        assert!(k >= 1);
        let n = self.order();
        let mut out = Self::zero((n + 1) * k - 1);
        for (j, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                out.coeffs[j * k] = c.mul_root(z.pow(j as u64))?;
            }
        }
        Some(out)
    }

    /// Index of the first differing coefficient through `upto`.
    pub fn first_mismatch(&self, o: &Self, upto: usize) -> Option<usize> {
        (0..=upto).find(|&i| self.coeffs[i] != o.coeffs[i])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{BigInt, Eisenstein};
    use proptest::prelude::*;

    fn int(v: &[i64]) -> Series<BigInt> {
        Series::from_coeffs(v.iter().map(|&x| BigInt::from(x)).collect())
    }

    fn as_i64(s: &Series<BigInt>) -> Vec<i64> {
        s.coeffs().iter().map(|c| i64::try_from(c).unwrap()).collect()
    }

    /// p(n) by the standard parts-≤-k dynamic program.
    fn partition_oracle(n: usize) -> Vec<i64> {
        let mut p = vec![0i64; n + 1];
        p[0] = 1;
        for part in 1..=n {
            for m in part..=n {
                p[m] += p[m - part];
            }
        }
        p
    }

    fn euler(order: usize) -> Series<BigInt> {
        let mut s = Series::<BigInt>::one(order);
        for k in 1..=order {
            s.mul_binomial(&BigInt::from(1), k);
        }
        s
    }

    #[test]
    fn geometric_inverse() {
        let a = int(&[1, -1, 0, 0, 0, 0]);
        let b = int(&[1, 1, 1, 1, 1, 1]);
        assert_eq!(as_i64(&a.mul(&b)), vec![1, 0, 0, 0, 0, 0]);
        assert_eq!(as_i64(&int(&[1, -1, 0, 0, 0]).inverse().unwrap()), vec![1, 1, 1, 1, 1]);
        assert_eq!(as_i64(&int(&[1]).inverse().unwrap()), vec![1]);
        assert!(int(&[2, 1]).inverse().is_err());
    }

    #[test]
    fn partition_function_from_euler_product() {
        let p = euler(10).inverse().unwrap();
        assert_eq!(as_i64(&p), vec![1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42]);
        assert_eq!(as_i64(&euler(60).inverse().unwrap()), partition_oracle(60));
    }

    #[test]
    fn ternary_relation() {
        let w = Eisenstein::omega();
        let mut s = Series::<Eisenstein>::one(6);
        s.mul_binomial(&w, 1);
        s.mul_binomial(&w.conj(), 1);
        s.mul_binomial(&Eisenstein::from(1), 1);
        let expected: Vec<Eisenstein> =
            [1, 0, 0, -1, 0, 0, 0].iter().map(|&x| Eisenstein::from(x)).collect();
        assert_eq!(s.coeffs(), &expected[..]);
    }

    #[test]
    fn logderiv_examples() {
        let f = int(&[1, -1, 0, 0, 0, 0, 0]);
        assert_eq!(as_i64(&f.q_logderiv().unwrap()), vec![0, 1, 1, 1, 1, 1, 1]);
        assert_eq!(as_i64(&int(&[1, 0, 0]).q_logderiv().unwrap()), vec![0, 0, 0]);
        let sigma: Vec<i64> = (0..=30)
            .map(|n: i64| if n == 0 { 0 } else { (1..=n).filter(|d| n % d == 0).sum() })
            .collect();
        assert_eq!(as_i64(&euler(30).q_logderiv().unwrap()), sigma);
        assert!(int(&[2, 1]).q_logderiv().is_err());
    }

    #[test]
    fn substitution_rule() {
        let e = euler(2).substitute(RootOfUnity::ONE, 16).unwrap();
        assert_eq!(e.order(), 47);
        let mut expected = vec![0i64; 48];
        expected[0] = 1;
        expected[16] = -1;
        expected[32] = -1;
        assert_eq!(as_i64(&e), expected);
        let f = int(&[3, 1, 4, 1, 5]);
        assert_eq!(f.substitute(RootOfUnity::ONE, 1).unwrap(), f);
        assert_eq!(as_i64(&f.substitute(RootOfUnity::NEG_ONE, 1).unwrap()), vec![3, -1, 4, -1, 5]);
        assert!(f.substitute(RootOfUnity::OMEGA, 1).is_none());
    }

    #[test]
    fn omega_substitution_twists_coefficients() {
        let e = euler(20).map(|c| Eisenstein::from(c.clone()));
        let t = e.substitute(RootOfUnity::OMEGA, 1).unwrap();
        let w = Eisenstein::omega();
        let mut wn = Eisenstein::from(1);
        for n in 0..=20 {
            assert_eq!(t.coeff(n), &(&wn * e.coeff(n)));
            wn = &wn * &w;
        }
    }

    #[test]
    fn sequential_and_parallel_products_agree() {
        let a = euler(400);
        let b = a.inverse().unwrap();
        let par = a.mul(&b);
        let seq = par::sequential(|| a.mul(&b));
        assert_eq!(par, seq);
        assert_eq!(par, Series::one(400));
    }

    fn arb_series(order: usize) -> impl Strategy<Value = Series<BigInt>> {
        proptest::collection::vec(-20i64..20, order + 1).prop_map(|v| {
            let mut s = int(&v);
            *s.coeff_mut(0) = BigInt::from(1);
            s
        })
    }

    proptest! {
        #[test]
        fn ring_laws(a in arb_series(40), b in arb_series(40), c in arb_series(40)) {
            prop_assert_eq!(a.mul(&b), b.mul(&a));
            prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
            prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
            prop_assert_eq!(a.add(&b), b.add(&a));
        }

        #[test]
        fn logderiv_is_additive(a in arb_series(48), b in arb_series(48)) {
            let lhs = a.mul(&b).q_logderiv().unwrap();
            let rhs = a.q_logderiv().unwrap().add(&b.q_logderiv().unwrap());
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn inverse_is_involution(a in arb_series(64)) {
            prop_assert_eq!(a.inverse().unwrap().inverse().unwrap(), a.clone());
            prop_assert_eq!(a.mul(&a.inverse().unwrap()), Series::one(64));
        }

        #[test]
        fn substitution_is_homomorphism(a in arb_series(20), b in arb_series(20), k in 1usize..5, j in 0i64..6) {
            let z = RootOfUnity::from_exponent(j);
            let ae = a.map(|c| Eisenstein::from(c.clone()));
            let be = b.map(|c| Eisenstein::from(c.clone()));
            let lhs = ae.mul(&be).substitute(z, k).unwrap();
            let rhs = ae.substitute(z, k).unwrap().mul(&be.substitute(z, k).unwrap());
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn composed_substitution_rule(a in arb_series(15), k in 1usize..5, j in 0i64..6) {
            // (1, k) then (ζ, 1): coefficient at q^{ik} is ζ^{ik} c_i.
            let z = RootOfUnity::from_exponent(j);
            let ae = a.map(|c| Eisenstein::from(c.clone()));
            let composed = ae.substitute(RootOfUnity::ONE, k).unwrap().substitute(z, 1).unwrap();
            for (i, c) in ae.coeffs().iter().enumerate() {
                prop_assert_eq!(composed.coeff(i * k), &z.pow((i * k) as u64).apply(c));
                for r in 1..k {
                    if i * k + r <= composed.order() {
                        prop_assert!(Coeff::is_zero(composed.coeff(i * k + r)));
                    }
                }
            }
        }

        #[test]
        fn binomial_mul_div_cancel(a in arb_series(30), k in 1usize..10, e in -3i64..4) {
            let mut s = a.clone();
            s.mul_binomial_pow(&BigInt::from(1), k, e);
            s.mul_binomial_pow(&BigInt::from(1), k, -e);
            prop_assert_eq!(s, a);
        }
    }
}
