//! Resultants and discriminants.
//!
//! Two independent routes: a Euclidean recursion over any field, and a
//! subresultant PRS over the integers (used for rational inputs, where it keeps
//! coefficient growth polynomial).

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::field::Field;
use super::poly::UPoly;
use super::rational::Rational;
use crate::error::{Error, Result};

/// `Res(f, g)` by the Euclidean recursion over a field.
pub fn resultant<F: Field>(f: &UPoly<F>, g: &UPoly<F>) -> Result<F> {
    let (Some(_), Some(_)) = (f.degree(), g.degree()) else {
        if f.is_zero() && g.is_zero() {
            return Err(Error::InvalidInput("resultant of two zero polynomials".into()));
        }
        let like = f.lc().or(g.lc()).unwrap();
        return Ok(like.zero_like());
    };
    let like = f.lc().unwrap().clone();
    let mut a = f.clone();
    let mut b = g.clone();
    let mut acc = like.one_like();
    loop {
        let da = a.degree().unwrap();
        let db = b.degree().unwrap();
        if db == 0 {
            return Ok(acc * &b.lc().unwrap().pow_u64(da as u64));
        }
        if da == 0 {
            return Ok(acc * &a.lc().unwrap().pow_u64(db as u64));
        }
        let r = a.rem(&b);
        let Some(dr) = r.degree() else {
            return Ok(like.zero_like());
        };
        // Res(a, b) = (-1)^{da db} lc(b)^{da - dr} Res(b, r)
        if da % 2 == 1 && db % 2 == 1 {
            acc = -acc;
        }
        acc = acc * &b.lc().unwrap().pow_u64((da - dr) as u64);
        a = b;
        b = r;
    }
}

/// `Disc(f) = (-1)^{d(d-1)/2} Res(f, f') / lc(f)`.
pub fn discriminant<F: Field>(f: &UPoly<F>) -> Result<F> {
    let d = f.degree().filter(|&d| d >= 1).ok_or_else(|| {
        Error::InvalidInput("discriminant of a constant polynomial".into())
    })?;
    let lc = f.lc().unwrap().clone();
    if d == 1 {
        return Ok(lc.one_like());
    }
    let res = resultant(f, &f.derivative())?;
    let mut out = res.checked_div(&lc).expect("nonzero leading coefficient");
    if (d * (d - 1) / 2) % 2 == 1 {
        out = -out;
    }
    Ok(out)
}

fn int_trim(a: &mut Vec<BigInt>) {
    while a.last().is_some_and(|c| c.is_zero()) {
        a.pop();
    }
}

fn content(a: &[BigInt]) -> BigInt {
    a.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
}

/// Pseudo-remainder `lc(b)^{da-db+1} a mod b`.
fn pseudo_rem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let da = a.len() - 1;
    let db = b.len() - 1;
    let lc = &b[db];
    let mult = lc.pow((da - db + 1) as u32);
    let mut r: Vec<BigInt> = a.iter().map(|c| c * &mult).collect();
    for top in (db..=da).rev() {
        if r[top].is_zero() {
            continue;
        }
        let q = &r[top] / lc;
        for (j, bj) in b.iter().enumerate() {
            r[top - db + j] -= &q * bj;
        }
    }
    r.truncate(db);
    int_trim(&mut r);
    r
}

/// `Res(f, g)` for integer polynomials (least degree first) via the
/// subresultant pseudo-remainder sequence.
pub fn resultant_int(f: &[BigInt], g: &[BigInt]) -> Result<BigInt> {
    let mut a = f.to_vec();
    let mut b = g.to_vec();
    int_trim(&mut a);
    int_trim(&mut b);
    if a.is_empty() && b.is_empty() {
        return Err(Error::InvalidInput("resultant of two zero polynomials".into()));
    }
    if a.is_empty() || b.is_empty() {
        return Ok(BigInt::zero());
    }
    let mut s = BigInt::one();
    if a.len() < b.len() {
        let (da, db) = (a.len() - 1, b.len() - 1);
        if da % 2 == 1 && db % 2 == 1 {
            s = -s;
        }
        std::mem::swap(&mut a, &mut b);
    }
    let (da0, db0) = (a.len() - 1, b.len() - 1);
    if db0 == 0 {
        return Ok(s * b[0].pow(da0 as u32));
    }
    let ca = content(&a);
    let cb = content(&b);
    let t = ca.pow(db0 as u32) * cb.pow(da0 as u32);
    for c in a.iter_mut() {
        *c /= &ca;
    }
    for c in b.iter_mut() {
        *c /= &cb;
    }
    let mut g_ = BigInt::one();
    let mut h = BigInt::one();
    loop {
        let da = a.len() - 1;
        let db = b.len() - 1;
        let delta = da - db;
        if da % 2 == 1 && db % 2 == 1 {
            s = -s;
        }
        let r = pseudo_rem(&a, &b);
        if r.is_empty() {
            return Ok(BigInt::zero());
        }
        let divisor = &g_ * h.pow(delta as u32);
        a = b;
        b = r.into_iter().map(|c| c / &divisor).collect();
        g_ = a.last().unwrap().clone();
        h = if delta == 0 {
            h
        } else {
            g_.pow(delta as u32) / h.pow((delta - 1) as u32)
        };
        if b.len() == 1 {
            break;
        }
    }
    let da = a.len() - 1;
    let hh = b[0].pow(da as u32) / h.pow((da - 1) as u32);
    Ok(s * t * hh)
}

/// Clear denominators: returns `(d, p)` with `d * f = p`, `p` integral.
pub fn to_integer_poly(f: &UPoly<Rational>) -> (BigInt, Vec<BigInt>) {
    let d = f.coeffs().iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let p = f.coeffs().iter().map(|c| c.numer() * (&d / c.denom())).collect();
    (d, p)
}

/// `Res(f, g)` over `Q`, computed on integer multiples.
pub fn resultant_q(f: &UPoly<Rational>, g: &UPoly<Rational>) -> Result<Rational> {
    if f.is_zero() && g.is_zero() {
        return Err(Error::InvalidInput("resultant of two zero polynomials".into()));
    }
    if f.is_zero() || g.is_zero() {
        return Ok(Rational::zero());
    }
    let (df, fi) = to_integer_poly(f);
    let (dg, gi) = to_integer_poly(g);
    let r = resultant_int(&fi, &gi)?;
    // Res(df f, dg g) = df^{deg g} dg^{deg f} Res(f, g)
    let scale = df.pow(g.degree().unwrap() as u32) * dg.pow(f.degree().unwrap() as u32);
    Ok(Rational::new(r, scale))
}

/// Discriminant over `Q` through the integer route.
pub fn discriminant_q(f: &UPoly<Rational>) -> Result<Rational> {
    let d = f.degree().filter(|&d| d >= 1).ok_or_else(|| {
        Error::InvalidInput("discriminant of a constant polynomial".into())
    })?;
    if d == 1 {
        return Ok(Rational::one());
    }
    let res = resultant_q(f, &f.derivative())?;
    let mut out = res / f.lc().unwrap();
    if (d * (d - 1) / 2) % 2 == 1 {
        out = -out;
    }
    Ok(out)
}

/// Primitive integer multiple with positive leading coefficient.
pub fn primitive_part(f: &UPoly<Rational>) -> Vec<BigInt> {
    let (_, mut p) = to_integer_poly(f);
    let c = content(&p);
    if !c.is_zero() {
        for x in p.iter_mut() {
            *x /= &c;
        }
    }
    if p.last().is_some_and(|x| x.is_negative()) {
        for x in p.iter_mut() {
            *x = -x.clone();
        }
    }
    p
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(v: &[i64]) -> UPoly<Rational> {
        UPoly::new(v.iter().map(|&c| Rational::from_int(c)).collect())
    }

    #[test]
    fn linear_resultant() {
        // Res(t + a, t + b) = b - a
        assert_eq!(resultant(&q(&[5, 1]), &q(&[10, 1])).unwrap(), Rational::from_int(5));
        assert_eq!(resultant_q(&q(&[5, 1]), &q(&[10, 1])).unwrap(), Rational::from_int(5));
    }

    #[test]
    fn both_zero_is_an_error() {
        assert!(resultant::<Rational>(&UPoly::zero(), &UPoly::zero()).is_err());
        assert!(resultant_int(&[], &[]).is_err());
        assert!(discriminant(&q(&[3])).is_err());
    }

    #[test]
    fn linear_discriminant_is_one() {
        assert_eq!(discriminant(&q(&[5, 1])).unwrap(), Rational::one());
    }

    #[test]
    fn quadratic_discriminant() {
        // b^2 - 4ac
        assert_eq!(discriminant(&q(&[7, 7, 1])).unwrap(), Rational::from_int(21));
        assert_eq!(discriminant_q(&q(&[3, -5, 2])).unwrap(), Rational::from_int(25 - 24));
    }

    fn small_poly() -> impl Strategy<Value = Vec<i64>> {
        prop::collection::vec(-9i64..10, 1..6)
    }

    proptest! {
        #[test]
        fn euclid_and_subresultant_agree(f in small_poly(), g in small_poly()) {
            let (f, g) = (q(&f), q(&g));
            prop_assume!(!f.is_zero() && !g.is_zero());
            prop_assert_eq!(resultant(&f, &g).unwrap(), resultant_q(&f, &g).unwrap());
        }

        #[test]
        fn resultant_antisymmetry(f in small_poly(), g in small_poly()) {
            let (f, g) = (q(&f), q(&g));
            prop_assume!(!f.is_zero() && !g.is_zero());
            let sign = if f.degree().unwrap() * g.degree().unwrap() % 2 == 1 { -1 } else { 1 };
            prop_assert_eq!(
                resultant_q(&f, &g).unwrap(),
                resultant_q(&g, &f).unwrap() * Rational::from_int(sign)
            );
        }

        #[test]
        fn resultant_multiplicative(f in small_poly(), g in small_poly(), h in small_poly()) {
            let (f, g, h) = (q(&f), q(&g), q(&h));
            prop_assume!(!f.is_zero() && !g.is_zero() && !h.is_zero());
            let gh = g.clone() * &h;
            prop_assert_eq!(
                resultant_q(&f, &gh).unwrap(),
                resultant_q(&f, &g).unwrap() * resultant_q(&f, &h).unwrap()
            );
        }
    }
}
