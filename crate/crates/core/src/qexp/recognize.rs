//! Reading polynomials in `t` off `q`-expansions, and small exact helpers.

use crate::arith::field::Field;
use crate::arith::poly::UPoly;
use crate::arith::rational::Rational;
use crate::arith::series::LaurentSeries;
use crate::error::{Error, Result};

/// Precision beyond `maxdeg` required before a recognition is trusted.
pub const RECOGNITION_GUARD: i64 = 16;

/// `f` with `φ = f(t)` to the known precision, by greedy elimination from the
/// lowest `q`-order.
pub fn recognize_poly(phi: &LaurentSeries<Rational>, t: &LaurentSeries<Rational>, maxdeg: usize) -> Result<UPoly<Rational>> {
    if t.valuation() != 1 {
        return Err(Error::InvalidInput(format!("v_q(t) = {}, expected 1", t.valuation())));
    }
    if !phi.is_zero() && phi.valuation() < 0 {
        return Err(Error::Recognition { maxdeg, index: phi.valuation() });
    }
    if phi.prec() <= maxdeg as i64 + RECOGNITION_GUARD || t.prec() <= maxdeg as i64 + RECOGNITION_GUARD {
        return Err(Error::InvalidInput(format!(
            "precision {} too small to recognize a polynomial of degree {maxdeg}",
            phi.prec().min(t.prec())
        )));
    }
    let lead = t.leading_coeff().unwrap().clone();
    let mut resid = phi.clone();
    let mut tk = LaurentSeries::one(phi.prec(), &lead);
    let mut coeffs = Vec::with_capacity(maxdeg + 1);
    for d in 0..=maxdeg {
        let a = resid.coeff(d as i64)? / &lead.pow_u64(d as u64);
        if !a.is_zero() {
            resid = resid.sub(&tk.scale(&a));
        }
        coeffs.push(a);
        tk = tk.mul(t);
    }
    if !resid.is_zero() {
        return Err(Error::Recognition { maxdeg, index: resid.valuation() });
    }
    Ok(UPoly::new(coeffs))
}

/// Exact square root of a polynomial with a square leading coefficient.
pub fn poly_sqrt(f: &UPoly<Rational>) -> Option<UPoly<Rational>> {
    let d = f.degree()?;
    if d % 2 == 1 {
        return None;
    }
    let lc = f.lc()?.clone();
    let r = rational_sqrt(&lc)?;
    let h = d / 2;
    // top-down: g_{h-k} from the coefficient of x^{d-k}
    let mut g = vec![Rational::zero(); h + 1];
    g[h] = r.clone();
    let two_r = r.clone() + &r;
    for k in 1..=h {
        let mut s = f.coeff(d - k, &lc);
        for i in 1..k {
            s = s - &(g[h - i].clone() * &g[h - k + i]);
        }
        g[h - k] = s / &two_r;
    }
    let g = UPoly::new(g);
    (g.clone() * &g == *f).then_some(g)
}

fn rational_sqrt(r: &Rational) -> Option<Rational> {
    if r.is_negative() {
        return None;
    }
    let n = r.numer().sqrt();
    let d = r.denom().sqrt();
    (&n * &n == *r.numer() && &d * &d == *r.denom()).then(|| Rational::new(n, d))
}

/// The polynomial of degree `< xs.len()` through the points, by Newton's
/// divided differences.
pub fn interpolate(xs: &[Rational], ys: &[Rational]) -> UPoly<Rational> {
    let n = xs.len();
    let mut dd = ys.to_vec();
    for k in 1..n {
        for i in (k..n).rev() {
            dd[i] = (dd[i].clone() - &dd[i - 1]) / &(xs[i].clone() - &xs[i - k]);
        }
    }
    let mut out = UPoly::constant(dd[n - 1].clone());
    for i in (0..n - 1).rev() {
        out = out * &UPoly::linear_root(&xs[i]) + &UPoly::constant(dd[i].clone());
    }
    out
}
