//! Theta quotients on the Tate curve `G_m / q^Z` with level structure `μ_N`.
//!
//! `θ(v; Q) = (1 - v) Π_{n>=1} (1 - Q^n v)(1 - Q^n / v)`,
//! `s_O(u) = θ(u; q)^N / θ(u^N; q^N)`,
//! `g_m(u) = Σ_j ζ^{mj} s_O(ζ^{-j} u)`,
//! `h_m(u) = u^{-b} θ(u^N q^{-b}; q^N) / θ(u^N; q^N)` with `b = (-m) mod N`.
//! Everything is evaluated at a scalar `u = u0`.

use crate::arith::cyclo::Cyclo;
use crate::arith::field::Field;
use crate::arith::rational::Rational;
use crate::arith::series::LaurentSeries;
use crate::error::{Error, Result};

/// `q`-power removed from `Π g_m / h_m` so that `v_q(G/H) = (N^2 - 1)/12`.
pub fn gh_shift(n: u64) -> i64 {
    ((n - 1) * (5 * n - 1) / 12) as i64
}

pub fn b_of(n: u64, m: u64) -> u64 {
    (n - m % n) % n
}

/// Multiply the dense series `a` (`q^0 ..`) by `1 + c q^e`, `e > 0`, in place.
fn mul_binomial<F: Field>(a: &mut [F], c: &F, e: usize) {
    for k in (e..a.len()).rev() {
        if a[k - e].is_zero() {
            continue;
        }
        let t = c.clone() * &a[k - e];
        a[k] = a[k].clone() + &t;
    }
}

/// `θ(v q^a; q^s)` to precision `prec`.
pub fn theta_at<F: Field>(v: &F, shift: i64, step: u64, prec: i64) -> Result<LaurentSeries<F>> {
    let vinv = v.inv().ok_or_else(|| Error::InvalidInput("theta at v = 0".into()))?;
    if step == 0 {
        return Err(Error::InvalidInput("theta step must be positive".into()));
    }
    let s = step as i64;
    let one = v.one_like();
    let zero = v.zero_like();
    // factors 1 + c q^e: the leading one, then n >= 1 in both directions
    let mut factors: Vec<(F, i64)> = vec![(-v.clone(), shift)];
    let mut n = 1;
    while s * n - shift.abs() <= 0 {
        factors.push((-v.clone(), s * n + shift));
        factors.push((-vinv.clone(), s * n - shift));
        n += 1;
    }
    // exponents <= 0 are finitely many and multiply out exactly
    let depth: i64 = factors.iter().filter(|(_, e)| *e < 0).map(|(_, e)| -e).sum();
    let len = (prec + depth).max(1);
    while s * n - shift.abs() < len {
        factors.push((-v.clone(), s * n + shift));
        factors.push((-vinv.clone(), s * n - shift));
        n += 1;
    }
    let wide = len + depth + 1;
    let mut dense = vec![zero.clone(); len as usize];
    dense[0] = one.clone();
    let mut exact = LaurentSeries::one(wide, &one);
    for (c, e) in &factors {
        if *e > 0 {
            if *e < len {
                mul_binomial(&mut dense, c, *e as usize);
            }
        } else if *e == 0 {
            exact = exact.scale(&(one.clone() + c));
        } else {
            let mut coeffs = vec![zero.clone(); (wide - e) as usize];
            coeffs[0] = c.clone();
            coeffs[(-e) as usize] = one.clone();
            exact = exact.mul(&LaurentSeries::new(*e, coeffs, zero.clone()));
        }
    }
    if exact.is_zero() {
        return Ok(LaurentSeries::zero(prec, &zero));
    }
    let body = LaurentSeries::new(0, dense, zero);
    Ok(exact.mul(&body).truncate(prec))
}

/// `s_O(u0) = θ(u0; q)^N / θ(u0^N; q^N)`.
pub fn s_o_series<F: Field>(n: u64, u0: &F, prec: i64) -> Result<LaurentSeries<F>> {
    let un = u0.pow_u64(n);
    if (un.clone() - &u0.one_like()).is_zero() {
        return Err(Error::InvalidInput("u0^N = 1 is a pole of s_O".into()));
    }
    let num = theta_at(u0, 0, 1, prec)?.pow(n);
    let den = theta_at(&un, 0, n, prec)?;
    num.div(&den)
}

fn to_cyclo(n: u64, s: &LaurentSeries<Rational>) -> LaurentSeries<Cyclo> {
    let like = Cyclo::zero(n as usize);
    s.map(&like, |c| Cyclo::from_rational(n as usize, c))
}

/// `[s_O(ζ^{-j} u0) : j = 0..N]`. For rational `u0` with `galois` set, only
/// `j = 0, 1` are expanded and the rest are Galois conjugates of `j = 1`.
pub fn translates(n: u64, u0: &Cyclo, prec: i64, galois: bool) -> Result<Vec<LaurentSeries<Cyclo>>> {
    let nn = n as usize;
    match u0.to_rational() {
        Some(r) if galois => {
            let s0 = to_cyclo(n, &s_o_series(n, &r, prec)?);
            let s1 = s_o_series(n, &u0.mul_zeta_pow(-1), prec)?;
            let like = Cyclo::zero(nn);
            let mut out = vec![s0];
            for j in 1..n as i64 {
                out.push(s1.map(&like, |c| c.galois(j)));
            }
            Ok(out)
        }
        _ => (0..n as i64).map(|j| s_o_series(n, &u0.mul_zeta_pow(-j), prec)).collect(),
    }
}

/// `g_m = Σ_j ζ^{mj} s_O(ζ^{-j} u0)` from precomputed translates.
pub fn g_from_translates(n: u64, m: u64, trans: &[LaurentSeries<Cyclo>]) -> LaurentSeries<Cyclo> {
    let mut acc = trans[0].clone();
    for (j, s) in trans.iter().enumerate().skip(1) {
        let k = ((m as usize * j) % n as usize) as i64;
        let like = Cyclo::zero(n as usize);
        acc = acc.add(&s.map(&like, |c| c.mul_zeta_pow(k)));
    }
    acc
}

pub fn g_series(n: u64, m: u64, u0: &Cyclo, prec: i64) -> Result<LaurentSeries<Cyclo>> {
    Ok(g_from_translates(n, m, &translates(n, u0, prec, true)?))
}

/// `h_m(u0)`; `h_0 = 1`.
pub fn h_series<F: Field>(n: u64, m: u64, u0: &F, prec: i64) -> Result<LaurentSeries<F>> {
    let b = b_of(n, m);
    if b == 0 {
        return Ok(LaurentSeries::one(prec, &u0.one_like()));
    }
    let un = u0.pow_u64(n);
    let work = prec + b as i64;
    let num = theta_at(&un, -(b as i64), n, work)?;
    let den = theta_at(&un, 0, n, work)?;
    let scale = u0.pow_i64(-(b as i64)).ok_or_else(|| Error::InvalidInput("u0 = 0".into()))?;
    Ok(num.div(&den)?.scale(&scale).truncate(prec))
}

/// `g_m / h_m` at an arbitrary `u0` in `Q(ζ_N)`.
pub fn ratio_series(n: u64, m: u64, u0: &Cyclo, prec: i64) -> Result<LaurentSeries<Cyclo>> {
    let g = g_series(n, m, u0, prec)?;
    g.div(&h_series(n, m, u0, prec)?)
}

/// Coefficients as rationals, or an error naming the first one that is not.
pub fn rationalize(s: &LaurentSeries<Cyclo>, what: &str) -> Result<LaurentSeries<Rational>> {
    let v = s.valuation();
    let mut out = Vec::new();
    for (i, c) in s.coeffs_from(v)?.iter().enumerate() {
        match c.to_rational() {
            Some(r) => out.push(r),
            None => {
                return Err(Error::CheckFailed(format!(
                    "{what}: coefficient of q^{} is not rational ({c})",
                    v + i as i64
                )))
            }
        }
    }
    Ok(LaurentSeries::new(v, out, Rational::zero()))
}

/// `[g_m / h_m : m = 0..N]` at rational `u0`, each `g_m` certified rational.
pub fn ratios_rational(n: u64, u0: &Rational, prec: i64) -> Result<Vec<LaurentSeries<Rational>>> {
    let u = Cyclo::from_rational(n as usize, u0);
    let trans = translates(n, &u, prec, true)?;
    (0..n)
        .map(|m| {
            let g = rationalize(&g_from_translates(n, m, &trans), &format!("g_{m}"))?;
            g.div(&h_series(n, m, u0, prec)?)
        })
        .collect()
}

/// `G/H = q^{-shift} Π_{m=1}^{N-1} g_m / h_m` from the ratios.
pub fn gh_from_ratios(n: u64, ratios: &[LaurentSeries<Rational>]) -> LaurentSeries<Rational> {
    let mut acc = ratios[1].clone();
    for r in &ratios[2..] {
        acc = acc.mul(r);
    }
    acc.shift(-gh_shift(n))
}

pub fn gh_series(n: u64, u0: &Rational, prec: i64) -> Result<LaurentSeries<Rational>> {
    Ok(gh_from_ratios(n, &ratios_rational(n, u0, prec)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(v: i64) -> Rational {
        Rational::from_int(v)
    }

    #[test]
    fn theta_constant_term_and_inverse() {
        let t = theta_at(&q(2), 0, 1, 1).unwrap();
        assert_eq!(t.coeff(0).unwrap(), q(-1));
        let t = theta_at(&q(2), 0, 1, 10).unwrap();
        let prod = t.mul(&t.invert().unwrap());
        assert!(prod.agrees_with(&LaurentSeries::one(10, &q(1))));
        assert_eq!(prod.prec(), 10);
    }

    #[test]
    fn theta_functional_equation() {
        // θ(v q) = -v^{-1} θ(v)
        for v in [q(2), q(-3), Rational::new(5, 7)] {
            let lhs = theta_at(&v, 1, 1, 20).unwrap();
            let rhs = theta_at(&v, 0, 1, 20).unwrap().scale(&-v.inv().unwrap());
            assert!(lhs.agrees_with(&rhs));
            assert!(lhs.prec() >= 19);
        }
        // and with a negative shift on q^N
        let v = q(3);
        let lhs = theta_at(&v, -2, 5, 30).unwrap();
        let direct = theta_at(&v, 3, 5, 40).unwrap().scale(&-v.clone()).shift(-2);
        assert!(lhs.agrees_with(&direct));
    }

    #[test]
    fn theta_product_over_roots_of_unity() {
        let n = 5u64;
        let u0 = Cyclo::from_int(5, 2);
        let mut acc = theta_at(&u0, 0, 1, 15).unwrap();
        for j in 1..n as i64 {
            acc = acc.mul(&theta_at(&u0.mul_zeta_pow(j), 0, 1, 15).unwrap());
        }
        let rhs = theta_at(&u0.pow_u64(n), 0, n, 15).unwrap();
        assert!(acc.agrees_with(&rhs));
    }

    #[test]
    fn s_o_specialization_and_product() {
        let s = s_o_series(5, &q(2), 12).unwrap();
        assert_eq!(s.coeff(0).unwrap(), Rational::new(1, 31));
        assert_eq!(s.valuation(), 0);
        let u0 = Cyclo::from_int(5, 2);
        let trans = translates(5, &u0, 12, false).unwrap();
        let prod = trans.iter().skip(1).fold(trans[0].clone(), |a, s| a.mul(s));
        assert!(prod.agrees_with(&LaurentSeries::one(12, &Cyclo::one(5))));
        assert!(s_o_series(5, &q(1), 12).is_err());
    }

    #[test]
    fn galois_shortcut_matches_direct() {
        let u0 = Cyclo::from_int(7, 2);
        let fast = translates(7, &u0, 10, true).unwrap();
        let slow = translates(7, &u0, 10, false).unwrap();
        for (a, b) in fast.iter().zip(&slow) {
            assert!(a.agrees_with(b));
        }
    }

    #[test]
    fn g_constant_terms() {
        let n = 5u64;
        let u0 = Cyclo::from_int(5, 2);
        let trans = translates(n, &u0, 8, true).unwrap();
        assert_eq!(g_from_translates(n, 0, &trans).coeff(0).unwrap(), Cyclo::from_int(5, 5));
        let binom = [1i64, 5, 10, 10, 5, 1];
        for m in 1..n {
            let want = Rational::new((-1i64).pow(m as u32) * 5 * binom[m as usize] * 2i64.pow(m as u32), 1 - 32);
            assert_eq!(g_from_translates(n, m, &trans).coeff(0).unwrap(), Cyclo::from_rational(5, &want));
        }
    }

    #[test]
    fn character_laws() {
        let n = 5u64;
        let u0 = Cyclo::from_int(5, 2);
        let zu = u0.mul_zeta_pow(1);
        let prec = 10;
        for m in 0..n {
            let g = g_series(n, m, &u0, prec).unwrap();
            let gz = g_from_translates(n, m, &translates(n, &zu, prec, false).unwrap());
            let like = Cyclo::zero(5);
            assert!(gz.agrees_with(&g.map(&like, |c| c.mul_zeta_pow(m as i64))));
            let h = h_series(n, m, &u0, prec).unwrap();
            let hz = h_series(n, m, &zu, prec).unwrap();
            assert!(hz.agrees_with(&h.map(&like, |c| c.mul_zeta_pow(m as i64))));
            if m > 0 {
                assert_eq!(h.valuation(), -(b_of(n, m) as i64));
            }
        }
        assert!(h_series(n, 0, &u0, prec).unwrap().agrees_with(&LaurentSeries::one(prec, &Cyclo::one(5))));
    }

    #[test]
    fn ratios_are_independent_of_u0() {
        let n = 5u64;
        let a = ratios_rational(n, &q(2), 16).unwrap();
        let b = ratios_rational(n, &q(3), 16).unwrap();
        for (x, y) in a.iter().zip(&b) {
            assert!(x.agrees_with(y));
        }
        assert_eq!(a[0].coeff(0).unwrap(), q(5));
        let gh = gh_from_ratios(n, &a);
        assert_eq!(gh.valuation(), 2);
    }

    #[test]
    fn generic_ratio_matches_rational_path() {
        let n = 5u64;
        let fast = ratios_rational(n, &q(2), 10).unwrap();
        for m in 0..n {
            let slow = ratio_series(n, m, &Cyclo::from_int(5, 2), 10).unwrap();
            let like = Cyclo::zero(5);
            assert!(slow.agrees_with(&fast[m as usize].map(&like, |c| Cyclo::from_rational(5, c))));
        }
    }
}
