use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigUint;
use rand::Rng;

/// An exact field element.
///
/// Elements carry whatever context they need (characteristic, modulus, cyclotomic
/// level), so constants are produced from an existing element via the `*_like`
/// constructors.
pub trait Field:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
{
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn from_i64_like(&self, n: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn inv(&self) -> Option<Self>;
    /// 0 for characteristic zero.
    fn characteristic(&self) -> u64;

    fn is_one(&self) -> bool {
        *self == self.one_like()
    }

    fn checked_div(&self, rhs: &Self) -> Option<Self> {
        rhs.inv().map(|r| self.clone() * &r)
    }

    fn square(&self) -> Self {
        self.clone() * self
    }

    fn pow_u64(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = self.one_like();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = base.square();
            }
        }
        acc
    }

    /// `Σ a_i b_i`. Implementations may defer normalization to the end.
    fn dot<'a, I>(zero: &Self, pairs: I) -> Self
    where
        I: Iterator<Item = (&'a Self, &'a Self)>,
        Self: 'a,
    {
        pairs.fold(zero.clone(), |acc, (a, b)| acc + &(a.clone() * b))
    }

    /// Integer power; negative exponents invert first.
    fn pow_i64(&self, e: i64) -> Option<Self> {
        if e >= 0 {
            Some(self.pow_u64(e as u64))
        } else {
            self.inv().map(|i| i.pow_u64(e.unsigned_abs()))
        }
    }
}

/// A finite field `F_q`, `q = p^k`.
pub trait FiniteField: Field {
    fn order(&self) -> BigUint;
    /// Degree `k` over the prime field.
    fn degree(&self) -> usize;
    fn random_like<R: Rng + ?Sized>(&self, rng: &mut R) -> Self;
    /// Coordinates over the prime field, least degree first.
    fn coords(&self) -> Vec<u64>;
    fn from_coords_like(&self, coords: &[u64]) -> Self;

    fn pow_big(&self, e: &BigUint) -> Self {
        let mut acc = self.one_like();
        for i in (0..e.bits()).rev() {
            acc = acc.square();
            if e.bit(i) {
                acc = acc * self;
            }
        }
        acc
    }

    /// The absolute Frobenius `a -> a^p`.
    fn frobenius(&self) -> Self {
        self.pow_u64(self.characteristic())
    }

    /// `"[c0,c1,...]"`, decimal coordinates, least degree first.
    fn coeff_string(&self) -> String {
        let parts: Vec<String> = self.coords().iter().map(|c| c.to_string()).collect();
        format!("[{}]", parts.join(","))
    }
}

pub fn sum<F: Field>(zero: &F, items: impl IntoIterator<Item = F>) -> F {
    items.into_iter().fold(zero.clone(), |acc, x| acc + &x)
}
