//! Exact arithmetic in `Q(ζ_N)` for odd prime `N`.
//!
//! Elements are stored as integer numerators over a shared positive
//! denominator, in the cyclic basis `1, z, ..., z^{N-1}` of `Q[z]/(z^N - 1)`.
//! Canonical form projects onto `Q[z]/Φ_N` by forcing the `z^{N-1}` slot to
//! zero (using `1 + z + ... + z^{N-1} = 0`), so equality is coefficientwise.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::field::Field;
use super::poly::UPoly;
use super::rational::Rational;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Cyclo {
    n: usize,
    num: Vec<BigInt>,
    den: BigInt,
}

impl Cyclo {
    pub fn zero(n: usize) -> Self {
        assert!(n >= 2, "cyclotomic level must be at least 2");
        Cyclo { n, num: vec![BigInt::zero(); n], den: BigInt::one() }
    }

    pub fn one(n: usize) -> Self {
        Cyclo::from_rational(n, &Rational::one())
    }

    pub fn from_rational(n: usize, r: &Rational) -> Self {
        let mut num = vec![BigInt::zero(); n];
        num[0] = r.numer().clone();
        Cyclo { n, num, den: r.denom().clone() }
    }

    pub fn from_int(n: usize, v: i64) -> Self {
        Cyclo::from_rational(n, &Rational::from_int(v))
    }

    /// `ζ^k`.
    pub fn zeta_pow(n: usize, k: i64) -> Self {
        let mut num = vec![BigInt::zero(); n];
        num[k.rem_euclid(n as i64) as usize] = BigInt::one();
        Cyclo { n, num, den: BigInt::one() }.reduced()
    }

    /// Reduce an arbitrary polynomial in `z` (rational coefficients, least
    /// degree first) modulo `Φ_N`.
    pub fn from_poly(n: usize, coeffs: &[Rational]) -> Self {
        let mut acc = vec![Rational::zero(); n];
        for (i, c) in coeffs.iter().enumerate() {
            acc[i % n] = acc[i % n].clone() + c;
        }
        let den = acc.iter().fold(BigInt::one(), |d, c| d.lcm(c.denom()));
        let num = acc.iter().map(|c| c.numer() * (&den / c.denom())).collect();
        Cyclo { n, num, den }.reduced()
    }

    pub fn level(&self) -> usize {
        self.n
    }

    fn reduced(mut self) -> Self {
        let top = self.num[self.n - 1].clone();
        if !top.is_zero() {
            for c in self.num.iter_mut() {
                *c -= &top;
            }
        }
        self.normalize_content();
        self
    }

    fn normalize_content(&mut self) {
        if self.num.iter().all(|c| c.is_zero()) {
            self.den = BigInt::one();
            return;
        }
        if self.den.is_one() {
            return;
        }
        let mut g = self.den.clone();
        for c in &self.num {
            if g.is_one() {
                break;
            }
            if !c.is_zero() {
                g = g.gcd(c);
            }
        }
        if !g.is_one() {
            for c in self.num.iter_mut() {
                *c /= &g;
            }
            self.den /= &g;
        }
    }

    /// Coefficients on the basis `1, ζ, ..., ζ^{N-2}` of `Q(ζ_N)`.
    pub fn coefficients(&self) -> Vec<Rational> {
        self.num[..self.n - 1]
            .iter()
            .map(|c| Rational::new(c.clone(), self.den.clone()))
            .collect()
    }

    /// The element as a rational, when it lies in `Q`.
    pub fn to_rational(&self) -> Option<Rational> {
        self.num[1..].iter().all(|c| c.is_zero()).then(|| Rational::new(self.num[0].clone(), self.den.clone()))
    }

    pub fn is_rational(&self) -> bool {
        self.num[1..].iter().all(|c| c.is_zero())
    }

    /// Multiply by `ζ^k`: a rotation in the cyclic basis.
    pub fn mul_zeta_pow(&self, k: i64) -> Self {
        let n = self.n;
        let s = k.rem_euclid(n as i64) as usize;
        let mut num = vec![BigInt::zero(); n];
        for (i, c) in self.num.iter().enumerate() {
            num[(i + s) % n] = c.clone();
        }
        Cyclo { n, num, den: self.den.clone() }.reduced()
    }

    pub fn scale(&self, r: &Rational) -> Self {
        if r.is_zero() {
            return Cyclo::zero(self.n);
        }
        let mut out = Cyclo {
            n: self.n,
            num: self.num.iter().map(|c| c * r.numer()).collect(),
            den: &self.den * r.denom(),
        };
        if out.den.is_negative() {
            out.den = -out.den;
            for c in out.num.iter_mut() {
                *c = -c.clone();
            }
        }
        out.normalize_content();
        out
    }

    /// The Galois automorphism `ζ -> ζ^a`, `gcd(a, N) = 1`.
    pub fn galois(&self, a: i64) -> Self {
        let n = self.n;
        let a = a.rem_euclid(n as i64) as usize;
        assert!(a.gcd(&n) == 1, "galois exponent must be a unit mod N");
        let mut num = vec![BigInt::zero(); n];
        for (i, c) in self.num.iter().enumerate() {
            num[(i * a) % n] = c.clone();
        }
        Cyclo { n, num, den: self.den.clone() }.reduced()
    }

    /// Norm to `Q`: product of all Galois conjugates.
    pub fn norm(&self) -> Rational {
        let mut acc = self.clone();
        for a in 2..self.n as i64 {
            acc = acc * &self.galois(a);
        }
        acc.to_rational().expect("norm is rational")
    }

    /// Sum of fractions without intermediate content reduction.
    fn add_raw(&self, rhs: &Cyclo, negate: bool) -> Cyclo {
        debug_assert_eq!(self.n, rhs.n);
        let (num, den) = if self.den == rhs.den {
            let num = self
                .num
                .iter()
                .zip(&rhs.num)
                .map(|(a, b)| if negate { a - b } else { a + b })
                .collect();
            (num, self.den.clone())
        } else {
            let g = self.den.gcd(&rhs.den);
            let fa = &rhs.den / &g;
            let fb = &self.den / &g;
            let num = self
                .num
                .iter()
                .zip(&rhs.num)
                .map(|(a, b)| {
                    let (x, y) = (a * &fa, b * &fb);
                    if negate {
                        x - y
                    } else {
                        x + y
                    }
                })
                .collect();
            (num, &self.den * &fa)
        };
        Cyclo { n: self.n, num, den }
    }

    fn mul_raw(&self, rhs: &Cyclo) -> Cyclo {
        debug_assert_eq!(self.n, rhs.n);
        let n = self.n;
        let mut num = vec![BigInt::zero(); n];
        // slot n-1 is always zero in canonical form
        for (i, a) in self.num[..n - 1].iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.num[..n - 1].iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let idx = if i + j >= n { i + j - n } else { i + j };
                num[idx] += a * b;
            }
        }
        Cyclo { n, num, den: &self.den * &rhs.den }
    }

    /// `Σ a_i b_i` with a single content reduction at the end.
    pub fn dot<'a>(zero: &Cyclo, pairs: impl Iterator<Item = (&'a Cyclo, &'a Cyclo)>) -> Cyclo {
        let mut acc: Option<Cyclo> = None;
        for (a, b) in pairs {
            if a.is_zero() || b.is_zero() {
                continue;
            }
            let t = a.mul_raw(b);
            acc = Some(match acc {
                None => t,
                Some(s) => s.add_raw(&t, false),
            });
        }
        match acc {
            None => zero.clone(),
            Some(s) => s.reduced(),
        }
    }
}

impl fmt::Debug for Cyclo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for Cyclo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coefficients()
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => format!("{c}"),
                1 => format!("({c})*z"),
                _ => format!("({c})*z^{i}"),
            })
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

impl Add for Cyclo {
    type Output = Cyclo;
    fn add(self, rhs: Cyclo) -> Cyclo {
        self.add_raw(&rhs, false).reduced()
    }
}
impl Add<&Cyclo> for Cyclo {
    type Output = Cyclo;
    fn add(self, rhs: &Cyclo) -> Cyclo {
        self.add_raw(rhs, false).reduced()
    }
}
impl Sub for Cyclo {
    type Output = Cyclo;
    fn sub(self, rhs: Cyclo) -> Cyclo {
        self.add_raw(&rhs, true).reduced()
    }
}
impl Sub<&Cyclo> for Cyclo {
    type Output = Cyclo;
    fn sub(self, rhs: &Cyclo) -> Cyclo {
        self.add_raw(rhs, true).reduced()
    }
}
impl Mul for Cyclo {
    type Output = Cyclo;
    fn mul(self, rhs: Cyclo) -> Cyclo {
        self.mul_raw(&rhs).reduced()
    }
}
impl Mul<&Cyclo> for Cyclo {
    type Output = Cyclo;
    fn mul(self, rhs: &Cyclo) -> Cyclo {
        self.mul_raw(rhs).reduced()
    }
}
impl Neg for Cyclo {
    type Output = Cyclo;
    fn neg(mut self) -> Cyclo {
        for c in self.num.iter_mut() {
            *c = -c.clone();
        }
        self
    }
}

impl Field for Cyclo {
    fn zero_like(&self) -> Self {
        Cyclo::zero(self.n)
    }
    fn one_like(&self) -> Self {
        Cyclo::one(self.n)
    }
    fn from_i64_like(&self, n: i64) -> Self {
        Cyclo::from_int(self.n, n)
    }
    fn is_zero(&self) -> bool {
        self.num.iter().all(|c| c.is_zero())
    }
    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        if let Some(r) = self.to_rational() {
            return Some(Cyclo::from_rational(self.n, &Rational::one()).scale(&r.inv()?));
        }
        // a^{-1} = (prod of the other conjugates) / norm(a)
        let mut others = Cyclo::one(self.n);
        for a in 2..self.n as i64 {
            others = others * &self.galois(a);
        }
        let norm = (self.clone() * &others).to_rational()?;
        Some(others.scale(&norm.inv()?))
    }
    fn characteristic(&self) -> u64 {
        0
    }
    fn dot<'a, I>(zero: &Self, pairs: I) -> Self
    where
        I: Iterator<Item = (&'a Self, &'a Self)>,
    {
        Cyclo::dot(zero, pairs)
    }
}

/// The `N`-th cyclotomic polynomial for prime `N`: `1 + z + ... + z^{N-1}`.
pub fn cyclotomic_poly(n: usize) -> UPoly<Rational> {
    UPoly::new(vec![Rational::one(); n])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: usize) -> Cyclo {
        Cyclo::zeta_pow(n, 1)
    }

    #[test]
    fn zeta_to_the_n_is_one() {
        for n in [5, 7, 13] {
            assert!(z(n).pow_u64(n as u64).is_one());
            let zp: Vec<Rational> = (0..=n).map(|i| if i == n { Rational::one() } else { Rational::zero() }).collect();
            assert!(Cyclo::from_poly(n, &zp).is_one());
        }
    }

    #[test]
    fn phi_relation_reduces_to_zero() {
        for n in [5, 7, 13] {
            assert!(Cyclo::from_poly(n, &vec![Rational::one(); n]).is_zero());
        }
    }

    #[test]
    fn product_of_zeta_powers_minus_one() {
        // prod_{j=1}^{N-1} (ζ^j - 1) = N: expanded as a polynomial in z, then reduced
        for n in [5usize, 7, 13] {
            let mut poly = UPoly::new(vec![Rational::one()]);
            for j in 1..n {
                let mut f = vec![Rational::zero(); j + 1];
                f[0] = Rational::from_int(-1);
                f[j] = Rational::one();
                poly = poly * &UPoly::new(f);
            }
            let red = Cyclo::from_poly(n, poly.coeffs());
            assert_eq!(red, Cyclo::from_int(n, n as i64));
        }
    }

    #[test]
    fn inverse_and_galois() {
        let n = 7;
        let a = Cyclo::from_int(n, 2) + z(n) * &Cyclo::from_int(n, 3) - z(n).pow_u64(4);
        let ai = a.inv().unwrap();
        assert!((a.clone() * &ai).is_one());
        // galois is multiplicative
        let b = z(n).pow_u64(3) + Cyclo::from_int(n, 5);
        assert_eq!((a.clone() * &b).galois(3), a.galois(3) * &b.galois(3));
        assert!(a.norm() != Rational::zero());
    }

    #[test]
    fn dot_matches_naive_sum() {
        let n = 5;
        let xs: Vec<Cyclo> = (0..4).map(|i| z(n).pow_u64(i) + Cyclo::from_rational(n, &Rational::new(1, i as i64 + 2))).collect();
        let ys: Vec<Cyclo> = (0..4).map(|i| z(n).pow_u64(i + 2).scale(&Rational::new(3, 7))).collect();
        let naive = xs.iter().zip(&ys).fold(Cyclo::zero(n), |acc, (a, b)| acc + &(a.clone() * b));
        assert_eq!(Cyclo::dot(&Cyclo::zero(n), xs.iter().zip(&ys)), naive);
    }
}
