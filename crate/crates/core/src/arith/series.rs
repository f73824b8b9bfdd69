//! Truncated Laurent series in `q` with explicit precision.
//!
//! A series stores `c_v, c_{v+1}, ..., c_{prec-1}`; everything from `q^prec`
//! on is unknown. Reading an unknown coefficient is an error.

use std::fmt;

use super::field::Field;
use super::poly::UPoly;
use crate::error::{Error, Result};

#[derive(Clone, PartialEq)]
pub struct LaurentSeries<F> {
    val: i64,
    coeffs: Vec<F>,
    zero: F,
}

impl<F: Field> LaurentSeries<F> {
    /// Series `Σ coeffs[i] q^{val+i}` known to precision `val + coeffs.len()`.
    pub fn new(val: i64, coeffs: Vec<F>, zero: F) -> Self {
        let mut s = LaurentSeries { val, coeffs, zero: zero.zero_like() };
        s.normalize();
        s
    }

    /// `O(q^prec)`.
    pub fn zero(prec: i64, like: &F) -> Self {
        LaurentSeries { val: prec, coeffs: Vec::new(), zero: like.zero_like() }
    }

    pub fn one(prec: i64, like: &F) -> Self {
        LaurentSeries::monomial(like.one_like(), 0, prec)
    }

    /// `c q^e + O(q^prec)`.
    pub fn monomial(c: F, e: i64, prec: i64) -> Self {
        if prec <= e {
            return LaurentSeries::zero(prec, &c);
        }
        let zero = c.zero_like();
        let mut coeffs = vec![zero.clone(); (prec - e) as usize];
        coeffs[0] = c;
        LaurentSeries::new(e, coeffs, zero)
    }

    /// A polynomial in `q`, truncated to `prec`.
    pub fn from_poly(f: &UPoly<F>, prec: i64, like: &F) -> Self {
        let zero = like.zero_like();
        let n = prec.max(0) as usize;
        let coeffs = (0..n).map(|i| f.coeff(i, &zero)).collect();
        if prec <= 0 {
            return LaurentSeries::zero(prec, like);
        }
        LaurentSeries::new(0, coeffs, zero)
    }

    fn normalize(&mut self) {
        let lead = self.coeffs.iter().position(|c| !c.is_zero()).unwrap_or(self.coeffs.len());
        if lead > 0 {
            self.coeffs.drain(..lead);
            self.val += lead as i64;
        }
    }

    pub fn prec(&self) -> i64 {
        self.val + self.coeffs.len() as i64
    }

    /// Zero to the known precision.
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `v_q`; for a series that is zero to precision this is `prec`.
    pub fn valuation(&self) -> i64 {
        self.val
    }

    pub fn zero_elem(&self) -> &F {
        &self.zero
    }

    /// Coefficient of `q^n`.
    pub fn coeff(&self, n: i64) -> Result<F> {
        if n >= self.prec() {
            return Err(Error::PrecisionExceeded { index: n, prec: self.prec() });
        }
        if n < self.val {
            return Ok(self.zero.clone());
        }
        Ok(self.coeffs[(n - self.val) as usize].clone())
    }

    pub fn leading_coeff(&self) -> Option<&F> {
        self.coeffs.first()
    }

    /// Coefficients of `q^from, ..., q^{prec-1}`.
    pub fn coeffs_from(&self, from: i64) -> Result<Vec<F>> {
        (from..self.prec()).map(|n| self.coeff(n)).collect()
    }

    pub fn truncate(&self, prec: i64) -> Self {
        if prec >= self.prec() {
            return self.clone();
        }
        if prec <= self.val {
            return LaurentSeries::zero(prec, &self.zero);
        }
        let mut out = self.clone();
        out.coeffs.truncate((prec - self.val) as usize);
        out
    }

    /// Multiply by `q^k`.
    pub fn shift(&self, k: i64) -> Self {
        LaurentSeries { val: self.val + k, coeffs: self.coeffs.clone(), zero: self.zero.clone() }
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return LaurentSeries::zero(self.prec(), &self.zero);
        }
        LaurentSeries {
            val: self.val,
            coeffs: self.coeffs.iter().map(|a| a.clone() * c).collect(),
            zero: self.zero.clone(),
        }
    }

    pub fn map<G: Field>(&self, like: &G, f: impl Fn(&F) -> G) -> LaurentSeries<G> {
        LaurentSeries::new(self.val, self.coeffs.iter().map(f).collect(), like.zero_like())
    }

    fn combine(&self, rhs: &Self, negate: bool) -> Self {
        let prec = self.prec().min(rhs.prec());
        let val = self.val.min(rhs.val).min(prec);
        let n = (prec - val) as usize;
        let mut coeffs = vec![self.zero.clone(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            let k = self.val + i as i64 - val;
            if (k as usize) < n {
                coeffs[k as usize] = c.clone();
            }
        }
        for (i, c) in rhs.coeffs.iter().enumerate() {
            let k = rhs.val + i as i64 - val;
            if (k as usize) < n {
                let slot = &mut coeffs[k as usize];
                *slot = if negate { slot.clone() - c } else { slot.clone() + c };
            }
        }
        LaurentSeries::new(val, coeffs, self.zero.clone())
    }

    pub fn add(&self, rhs: &Self) -> Self {
        self.combine(rhs, false)
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.combine(rhs, true)
    }

    pub fn neg(&self) -> Self {
        LaurentSeries {
            val: self.val,
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
            zero: self.zero.clone(),
        }
    }

    /// Product, known to `min(prec_a + v_b, prec_b + v_a)`.
    pub fn mul(&self, rhs: &Self) -> Self {
        let prec = (self.prec() + rhs.val).min(rhs.prec() + self.val);
        let val = self.val + rhs.val;
        if self.is_zero() || rhs.is_zero() {
            return LaurentSeries::zero(prec, &self.zero);
        }
        let n = (prec - val).max(0) as usize;
        let (a, b) = (&self.coeffs, &rhs.coeffs);
        let coeffs = (0..n)
            .map(|k| {
                let lo = k.saturating_sub(b.len() - 1);
                let hi = k.min(a.len() - 1);
                F::dot(&self.zero, (lo..=hi).map(|i| (&a[i], &b[k - i])))
            })
            .collect();
        LaurentSeries::new(val, coeffs, self.zero.clone())
    }

    /// `s^{-1}`, with the same relative precision as `s`.
    pub fn invert(&self) -> Result<Self> {
        let Some(lead) = self.leading_coeff() else {
            return Err(Error::NonInvertible);
        };
        let inv0 = lead.inv().ok_or(Error::NonInvertible)?;
        let u = &self.coeffs;
        let n = u.len();
        let mut b: Vec<F> = Vec::with_capacity(n);
        b.push(inv0.clone());
        for k in 1..n {
            let s = F::dot(&self.zero, (1..=k).map(|i| (&u[i], &b[k - i])));
            b.push(-(s * &inv0));
        }
        Ok(LaurentSeries::new(-self.val, b, self.zero.clone()))
    }

    pub fn div(&self, rhs: &Self) -> Result<Self> {
        Ok(self.mul(&rhs.invert()?))
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut acc = LaurentSeries::one(self.prec() - self.val, &self.zero);
        let mut base = self.clone();
        let mut first = true;
        while e > 0 {
            if e & 1 == 1 {
                acc = if first { base.clone() } else { acc.mul(&base) };
                first = false;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// `s(q^k)`, known to precision `k * prec`.
    pub fn subs_power(&self, k: u64) -> Self {
        assert!(k >= 1, "substitution exponent must be positive");
        let k = k as i64;
        let prec = self.prec() * k;
        let val = self.val * k;
        let n = (prec - val) as usize;
        let mut coeffs = vec![self.zero.clone(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i * k as usize] = c.clone();
        }
        LaurentSeries::new(val, coeffs, self.zero.clone())
    }

    /// `f(s)` by Horner's rule.
    pub fn compose_poly(f: &UPoly<F>, s: &Self) -> Self {
        let prec = if s.val >= 0 { s.prec() } else { s.prec() + s.val * f.degree().unwrap_or(0) as i64 };
        let mut acc = LaurentSeries::zero(prec, &s.zero);
        for c in f.coeffs().iter().rev() {
            acc = acc.mul(s).add(&LaurentSeries::monomial(c.clone(), 0, prec.max(acc.prec())));
        }
        acc
    }

    /// Coefficientwise agreement on the common known range.
    pub fn agrees_with(&self, other: &Self) -> bool {
        self.sub(other).is_zero()
    }
}

impl<F: Field> fmt::Debug for LaurentSeries<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl<F: Field> fmt::Display for LaurentSeries<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            write!(f, "({c})*q^{} + ", self.val + i as i64)?;
        }
        write!(f, "O(q^{})", self.prec())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::Rational;
    use proptest::prelude::*;

    fn r(v: i64) -> Rational {
        Rational::from_int(v)
    }

    fn ser(val: i64, c: &[i64]) -> LaurentSeries<Rational> {
        LaurentSeries::new(val, c.iter().map(|&v| r(v)).collect(), r(0))
    }

    #[test]
    fn geometric_series() {
        let s = ser(0, &[1, -1, 0, 0, 0]);
        let inv = s.invert().unwrap();
        assert_eq!(inv, ser(0, &[1, 1, 1, 1, 1]));
        assert_eq!(inv.prec(), 5);
    }

    #[test]
    fn monomial_inverse_is_exact() {
        let q = ser(1, &[1, 0, 0, 0]);
        assert_eq!(q.prec(), 5);
        let inv = q.invert().unwrap();
        assert_eq!(inv.valuation(), -1);
        assert_eq!(inv.coeff(-1).unwrap(), r(1));
        for n in 0..inv.prec() {
            assert_eq!(inv.coeff(n).unwrap(), r(0));
        }
    }

    #[test]
    fn zero_series_is_not_invertible() {
        let z = LaurentSeries::zero(5, &r(0));
        assert_eq!(z.invert().unwrap_err(), Error::NonInvertible);
    }

    #[test]
    fn reading_past_precision_fails() {
        let s = ser(0, &[1, 2, 3]);
        assert_eq!(s.coeff(2).unwrap(), r(3));
        assert!(matches!(s.coeff(3), Err(Error::PrecisionExceeded { .. })));
        assert_eq!(s.coeff(-4).unwrap(), r(0));
    }

    #[test]
    fn product_precision_bound() {
        // (q + O(q^4)) * (1 + O(q^3)) is known to q^4 and no further than q^4
        let a = ser(1, &[1, 0, 0]);
        let b = ser(0, &[1, 0, 0]);
        assert_eq!(a.mul(&b).prec(), 4);
    }

    #[test]
    fn subs_power_spreads_coefficients() {
        let s = ser(0, &[1, 2, 3]);
        let t = s.subs_power(3);
        assert_eq!(t.prec(), 9);
        assert_eq!(t.coeff(3).unwrap(), r(2));
        assert_eq!(t.coeff(4).unwrap(), r(0));
        assert_eq!(t.coeff(6).unwrap(), r(3));
    }

    #[test]
    fn pow_matches_repeated_product() {
        let s = ser(0, &[1, 3, -2, 5, 1, 0, 7]);
        let mut acc = s.clone();
        for _ in 1..5 {
            acc = acc.mul(&s);
        }
        assert_eq!(s.pow(5), acc);
    }

    #[test]
    fn compose_poly_reconstructs() {
        // f(t) = t + 5 at t = q + q^2
        let f = UPoly::new(vec![r(5), r(1)]);
        let t = ser(1, &[1, 1, 0, 0]);
        let out = LaurentSeries::compose_poly(&f, &t);
        assert_eq!(out, ser(0, &[5, 1, 1, 0, 0]));
    }

    fn arb_series() -> impl Strategy<Value = (i64, Vec<i64>)> {
        (-3i64..3, prop::collection::vec(-20i64..20, 2..10))
    }

    proptest! {
        #[test]
        fn multiply_then_divide_roundtrip((va, ca) in arb_series(), (vb, cb) in arb_series()) {
            let s = ser(va, &ca);
            let t = ser(vb, &cb);
            prop_assume!(!s.is_zero() && !t.is_zero());
            let back = s.mul(&t).div(&s).unwrap();
            prop_assert!(back.prec() <= t.prec());
            prop_assert!(back.agrees_with(&t));
        }

        #[test]
        fn inverse_times_self_is_one((va, ca) in arb_series()) {
            let s = ser(va, &ca);
            prop_assume!(!s.is_zero());
            let p = s.mul(&s.invert().unwrap());
            prop_assert_eq!(p.valuation(), 0);
            prop_assert!(p.agrees_with(&LaurentSeries::one(p.prec(), &r(0))));
        }
    }
}
