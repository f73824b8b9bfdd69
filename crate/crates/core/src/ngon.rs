//! Valuations along the components of an `e`-gon fiber.
//!
//! Given intersection counts `r_i` (poles negative) on the cyclic chain
//! `Z_0, ..., Z_{e-1}`, the valuations satisfy
//! `(n_{i+1} - n_i) + (n_{i-1} - n_i) + r_i = 0`, and a normalized function has
//! `Σ n_i = 0`.

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

use crate::arith::rational::Rational;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NgonProfile {
    pub e: usize,
    pub r: Vec<i64>,
    #[serde(serialize_with = "ser_rationals")]
    pub n: Vec<Rational>,
    pub integral: bool,
}

fn ser_rationals<S: serde::Serializer>(v: &[Rational], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|x| x.to_string()))
}

/// Solve the cyclic system for `n`, with `Σ n_i = 0`.
pub fn solve_valuations(e: usize, r: &[i64]) -> Result<NgonProfile> {
    if e == 0 {
        return Err(Error::InvalidInput("width e must be at least 1".into()));
    }
    if r.len() != e {
        return Err(Error::DimensionMismatch(format!("expected {e} counts, got {}", r.len())));
    }
    let total: BigInt = r.iter().map(|&x| BigInt::from(x)).sum();
    if !total.is_zero() {
        return Err(Error::InvalidInput(format!("inconsistent profile: counts sum to {total}, not 0")));
    }
    // differences d_i = n_{i+1} - n_i obey d_i - d_{i-1} = -r_i
    let mut partial = vec![BigInt::zero(); e];
    for i in 1..e {
        partial[i] = &partial[i - 1] + BigInt::from(r[i]);
    }
    let s: BigInt = partial.iter().sum();
    let d0 = Rational::new(s, BigInt::from(e));
    let d: Vec<Rational> = partial.iter().map(|p| d0.clone() - Rational::from(p.clone())).collect();
    let mut n = Vec::with_capacity(e);
    let mut acc = Rational::zero();
    for di in d.iter().take(e) {
        n.push(acc.clone());
        acc = acc + di;
    }
    let mean = n.iter().fold(Rational::zero(), |a, x| a + x) / Rational::from_int(e as i64);
    let n: Vec<Rational> = n.into_iter().map(|x| x - &mean).collect();
    let integral = n.iter().all(|x| x.is_integer());
    Ok(NgonProfile { e, r: r.to_vec(), n, integral })
}

/// `n_{i+1} - 2 n_i + n_{i-1} + r_i` for every `i`.
pub fn residuals(r: &[i64], n: &[Rational]) -> Vec<Rational> {
    let e = n.len();
    (0..e)
        .map(|i| {
            let next = &n[(i + 1) % e];
            let prev = &n[(i + e - 1) % e];
            next.clone() + prev - &(n[i].clone() * Rational::from_int(2)) + &Rational::from_int(r[i])
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::field::Field;
    use proptest::prelude::*;

    fn ints(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| Rational::from_int(x)).collect()
    }

    #[test]
    fn section_profile_n5() {
        let p = solve_valuations(5, &[4, -1, -1, -1, -1]).unwrap();
        assert_eq!(p.n, ints(&[2, 0, -1, -1, 0]));
        assert!(p.integral);
    }

    #[test]
    fn h_profile_n5() {
        let p = solve_valuations(5, &[-20, 5, 5, 5, 5]).unwrap();
        assert_eq!(p.n, ints(&[-10, 0, 5, 5, 0]));
    }

    #[test]
    fn zero_profile() {
        for e in 1..10 {
            let p = solve_valuations(e, &vec![0; e]).unwrap();
            assert!(p.n.iter().all(|x| x.is_zero()));
        }
    }

    #[test]
    fn inconsistent_profile_rejected() {
        let err = solve_valuations(3, &[1, 0, 0]).unwrap_err();
        assert!(err.to_string().contains("inconsistent profile"));
        assert!(solve_valuations(3, &[1, -1]).is_err());
        assert!(solve_valuations(0, &[]).is_err());
    }

    #[test]
    fn fractional_solutions_are_reported() {
        let p = solve_valuations(2, &[1, -1]).unwrap();
        assert_eq!(p.n, vec![Rational::new(1, 4), Rational::new(-1, 4)]);
        assert!(!p.integral);
    }

    proptest! {
        #[test]
        fn residual_is_zero(mut r in prop::collection::vec(-50i64..50, 1..40)) {
            let s: i64 = r.iter().sum();
            r[0] -= s;
            let p = solve_valuations(r.len(), &r).unwrap();
            prop_assert!(residuals(&r, &p.n).iter().all(|x| x.is_zero()));
            prop_assert!(p.n.iter().fold(Rational::zero(), |a, x| a + x).is_zero());
        }

        #[test]
        fn linear_in_counts(
            mut r in prop::collection::vec(-50i64..50, 2..30),
            mut s in prop::collection::vec(-50i64..50, 2..30),
            lambda in -7i64..8,
        ) {
            let e = r.len().min(s.len());
            r.truncate(e);
            s.truncate(e);
            let (sr, ss): (i64, i64) = (r.iter().sum(), s.iter().sum());
            r[0] -= sr;
            s[0] -= ss;
            let sum: Vec<i64> = r.iter().zip(&s).map(|(a, b)| a + b).collect();
            let nr = solve_valuations(e, &r).unwrap().n;
            let ns = solve_valuations(e, &s).unwrap().n;
            let nsum = solve_valuations(e, &sum).unwrap().n;
            for i in 0..e {
                prop_assert_eq!(nsum[i].clone(), nr[i].clone() + &ns[i]);
            }
            let scaled: Vec<i64> = r.iter().map(|a| a * lambda).collect();
            let nl = solve_valuations(e, &scaled).unwrap().n;
            for i in 0..e {
                prop_assert_eq!(nl[i].clone(), nr[i].clone() * Rational::from_int(lambda));
            }
        }
    }
}
