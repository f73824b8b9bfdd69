use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::field::Field;

/// Dense univariate polynomial, least degree first, no trailing zeros.
///
/// The zero polynomial has no coefficients and `degree() == None`.
#[derive(Clone, PartialEq)]
pub struct UPoly<F> {
    coeffs: Vec<F>,
}

impl<F: Field> UPoly<F> {
    pub fn new(mut coeffs: Vec<F>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UPoly { coeffs }
    }

    pub fn zero() -> Self {
        UPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: F) -> Self {
        UPoly::new(vec![c])
    }

    /// The monomial `c * x^d`.
    pub fn monomial(c: F, d: usize) -> Self {
        let mut coeffs = vec![c.zero_like(); d + 1];
        coeffs[d] = c;
        UPoly::new(coeffs)
    }

    /// `x`, built in the field of `like`.
    pub fn x(like: &F) -> Self {
        UPoly::new(vec![like.zero_like(), like.one_like()])
    }

    /// `x - a`.
    pub fn linear_root(a: &F) -> Self {
        UPoly::new(vec![-a.clone(), a.one_like()])
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<F> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Coefficient of `x^i` (zero beyond the degree), given a field template.
    pub fn coeff(&self, i: usize, like: &F) -> F {
        self.coeffs.get(i).cloned().unwrap_or_else(|| like.zero_like())
    }

    pub fn lc(&self) -> Option<&F> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.lc().is_some_and(|c| c.is_one())
    }

    pub fn monic(&self) -> Self {
        match self.lc() {
            None => self.clone(),
            Some(lc) => {
                let inv = lc.inv().expect("nonzero leading coefficient");
                self.scale(&inv)
            }
        }
    }

    pub fn scale(&self, c: &F) -> Self {
        UPoly::new(self.coeffs.iter().map(|a| a.clone() * c).collect())
    }

    pub fn eval(&self, x: &F) -> F {
        let mut acc = x.zero_like();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        UPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c.clone() * &c.from_i64_like(i as i64))
                .collect(),
        )
    }

    /// Map coefficients into another field.
    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> UPoly<G> {
        UPoly::new(self.coeffs.iter().map(f).collect())
    }

    /// Euclidean division by a nonzero divisor.
    pub fn divrem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("division by zero polynomial");
        let Some(ds) = self.degree() else {
            return (UPoly::zero(), UPoly::zero());
        };
        if ds < dd {
            return (UPoly::zero(), self.clone());
        }
        let lc_inv = d.lc().unwrap().inv().expect("nonzero leading coefficient");
        let mut r = self.coeffs.clone();
        let zero = r[0].zero_like();
        let mut q = vec![zero.clone(); ds - dd + 1];
        for top in (dd..=ds).rev() {
            let t = r[top].clone() * &lc_inv;
            if t.is_zero() {
                continue;
            }
            for (j, dj) in d.coeffs.iter().enumerate() {
                let idx = top - dd + j;
                r[idx] = r[idx].clone() - &(t.clone() * dj);
            }
            q[top - dd] = t;
        }
        r.truncate(dd);
        (UPoly::new(q), UPoly::new(r))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.divrem(d).1
    }

    /// Exact quotient, or `None` if the division leaves a remainder.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        let (q, r) = self.divrem(d);
        r.is_zero().then_some(q)
    }

    /// Monic greatest common divisor (zero if both are zero).
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn mulmod(&self, other: &Self, m: &Self) -> Self {
        (self.clone() * other).rem(m)
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let one = match self.coeffs.first() {
            Some(c) => UPoly::constant(c.one_like()),
            None => return if e == 0 { panic!("0^0 for a polynomial without field context") } else { UPoly::zero() },
        };
        let mut base = self.clone();
        let mut acc = one;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = base.clone() * &base;
            }
        }
        acc
    }

    /// Substitute `g` for the variable.
    pub fn compose(&self, g: &Self) -> Self {
        let mut acc = UPoly::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * g + &UPoly::constant(c.clone());
        }
        acc
    }
}

impl<F: Field> Add<&UPoly<F>> for UPoly<F> {
    type Output = UPoly<F>;
    fn add(self, rhs: &UPoly<F>) -> UPoly<F> {
        let mut out = self.coeffs;
        if out.len() < rhs.coeffs.len() {
            let z = rhs.coeffs[0].zero_like();
            out.resize(rhs.coeffs.len(), z);
        }
        for (a, b) in out.iter_mut().zip(&rhs.coeffs) {
            *a = a.clone() + b;
        }
        UPoly::new(out)
    }
}

impl<F: Field> Add for UPoly<F> {
    type Output = UPoly<F>;
    fn add(self, rhs: UPoly<F>) -> UPoly<F> {
        self + &rhs
    }
}

impl<F: Field> Sub<&UPoly<F>> for UPoly<F> {
    type Output = UPoly<F>;
    fn sub(self, rhs: &UPoly<F>) -> UPoly<F> {
        self + &(-rhs.clone())
    }
}

impl<F: Field> Sub for UPoly<F> {
    type Output = UPoly<F>;
    fn sub(self, rhs: UPoly<F>) -> UPoly<F> {
        self + &(-rhs)
    }
}

impl<F: Field> Neg for UPoly<F> {
    type Output = UPoly<F>;
    fn neg(self) -> UPoly<F> {
        UPoly { coeffs: self.coeffs.into_iter().map(|c| -c).collect() }
    }
}

impl<F: Field> Mul<&UPoly<F>> for UPoly<F> {
    type Output = UPoly<F>;
    fn mul(self, rhs: &UPoly<F>) -> UPoly<F> {
        if self.is_zero() || rhs.is_zero() {
            return UPoly::zero();
        }
        let zero = self.coeffs[0].zero_like();
        let mut out = vec![zero; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + &(a.clone() * b);
            }
        }
        UPoly::new(out)
    }
}

impl<F: Field> Mul for UPoly<F> {
    type Output = UPoly<F>;
    fn mul(self, rhs: UPoly<F>) -> UPoly<F> {
        self * &rhs
    }
}

impl<F: Field> fmt::Debug for UPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl<F: Field> fmt::Display for UPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_poly(f, &self.coeffs, "x")
    }
}

pub(crate) fn fmt_poly<F: Field>(f: &mut fmt::Formatter<'_>, coeffs: &[F], var: &str) -> fmt::Result {
    if coeffs.is_empty() {
        return write!(f, "0");
    }
    let mut first = true;
    for (i, c) in coeffs.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        if !first {
            write!(f, " + ")?;
        }
        first = false;
        match i {
            0 => write!(f, "{c}")?,
            1 if c.is_one() => write!(f, "{var}")?,
            1 => write!(f, "({c})*{var}")?,
            _ if c.is_one() => write!(f, "{var}^{i}")?,
            _ => write!(f, "({c})*{var}^{i}")?,
        }
    }
    Ok(())
}
