//! The hauptmodul `t` of `X_0(N)`, the `j`-function, and the relation
//! `j = P(t) / Q(t)`.

use num_bigint::BigInt;
use num_traits::Pow;

use crate::arith::matrix::solve_linear;
use crate::arith::poly::UPoly;
use crate::arith::rational::Rational;
use crate::arith::series::LaurentSeries;
use crate::error::{Error, Result};

pub const SUPPORTED_LEVELS: [u64; 3] = [5, 7, 13];

fn euler_product(prec: i64) -> LaurentSeries<Rational> {
    // Π (1 - q^n) by the pentagonal number theorem
    let mut c = vec![Rational::zero(); prec.max(1) as usize];
    let mut k: i64 = 0;
    loop {
        let mut any = false;
        for kk in if k == 0 { vec![0] } else { vec![k, -k] } {
            let e = kk * (3 * kk - 1) / 2;
            if e < prec {
                c[e as usize] = Rational::from_int(if kk % 2 == 0 { 1 } else { -1 });
                any = true;
            }
        }
        if !any {
            break;
        }
        k += 1;
    }
    LaurentSeries::new(0, c, Rational::zero())
}

/// `t = N^{12/(N-1)} q Π ((1 - q^{Nn}) / (1 - q^n))^{24/(N-1)}`, known to `q^prec`.
pub fn hauptmodul_t(n: u64, prec: i64) -> Result<LaurentSeries<Rational>> {
    if !SUPPORTED_LEVELS.contains(&n) {
        return Err(Error::InvalidInput(format!("hauptmodul available for N in {{5, 7, 13}}, not {n}")));
    }
    let e = euler_product(prec);
    let en = e.subs_power(n).truncate(prec);
    let k = 24 / (n - 1);
    let lead = Rational::from_int(BigInt::from(n).pow((12 / (n - 1)) as u32));
    Ok(en.div(&e)?.pow(k).scale(&lead).shift(1).truncate(prec))
}

fn sigma3(n: u64) -> u64 {
    (1..=n).filter(|d| n.is_multiple_of(*d)).map(|d| d * d * d).sum()
}

/// `j = E_4^3 / Δ`, known to `q^prec`.
pub fn j_series(prec: i64) -> Result<LaurentSeries<Rational>> {
    let work = prec + 2;
    let mut e4 = vec![Rational::one()];
    e4.extend((1..work).map(|n| Rational::from_int(240 * sigma3(n as u64) as i64)));
    let e4 = LaurentSeries::new(0, e4, Rational::zero());
    let delta = euler_product(work).pow(24).shift(1);
    Ok(e4.pow(3).div(&delta)?.truncate(prec))
}

/// `j Q(t) = P(t)` with `deg P <= N + 1`, `Q` monic of least degree `<= N`.
#[derive(Clone, Debug, PartialEq)]
pub struct JRelation {
    pub p: UPoly<Rational>,
    pub q: UPoly<Rational>,
}

impl JRelation {
    /// `P(t) - J Q(t)` as a polynomial in `t` for a given value of `J`.
    pub fn fiber(&self, j: &Rational) -> UPoly<Rational> {
        self.p.clone() - &self.q.scale(j)
    }
}

fn powers(t: &LaurentSeries<Rational>, k: usize) -> Vec<LaurentSeries<Rational>> {
    let mut out = vec![LaurentSeries::one(t.prec() + k as i64, &Rational::one())];
    for _ in 0..k {
        let next = out.last().unwrap().mul(t);
        out.push(next);
    }
    out
}

pub fn fit_j_in_t(n: u64, prec: i64) -> Result<JRelation> {
    if prec < 3 * (n as i64 + 2) {
        return Err(Error::InvalidInput(format!("fit needs precision at least {}", 3 * (n + 2))));
    }
    let t = hauptmodul_t(n, prec)?;
    let j = j_series(prec)?;
    let dp = n as usize + 1;
    let tp = powers(&t, dp);
    let jt: Vec<LaurentSeries<Rational>> = tp.iter().take(n as usize + 1).map(|s| j.mul(s)).collect();
    for dq in 0..=n as usize {
        // unknowns: p_0..p_{dp}, q_0..q_{dq-1}; equation: Σ p_i t^i - Σ q_i j t^i = j t^dq
        let hi = jt[..=dq].iter().map(|s| s.prec()).chain(tp.iter().map(|s| s.prec())).min().unwrap();
        let mut rows = Vec::new();
        let mut rhs = Vec::new();
        for k in -1..hi {
            let mut row: Vec<Rational> = tp.iter().map(|s| s.coeff(k)).collect::<Result<_>>()?;
            for s in &jt[..dq] {
                row.push(-s.coeff(k)?);
            }
            rows.push(row);
            rhs.push(jt[dq].coeff(k)?);
        }
        if let Some(x) = solve_linear(&rows, &rhs)? {
            let p = UPoly::new(x[..=dp].to_vec());
            let mut qc = x[dp + 1..].to_vec();
            qc.push(Rational::one());
            let rel = JRelation { p, q: UPoly::new(qc) };
            let resid = j.mul(&LaurentSeries::compose_poly(&rel.q, &t)).sub(&LaurentSeries::compose_poly(&rel.p, &t));
            if !resid.is_zero() {
                return Err(Error::CheckFailed("j-relation residual is nonzero".into()));
            }
            return Ok(rel);
        }
    }
    Err(Error::CheckFailed(format!("no relation j = P(t)/Q(t) with deg P <= {}, deg Q <= {n}", n + 1)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hauptmodul_leading_terms() {
        for (n, lead) in [(5u64, 125i64), (7, 49), (13, 13)] {
            let t = hauptmodul_t(n, 20).unwrap();
            assert_eq!(t.valuation(), 1);
            assert_eq!(t.coeff(1).unwrap(), Rational::from_int(lead));
            assert_eq!(t.prec(), 20);
        }
        assert!(hauptmodul_t(11, 10).is_err());
    }

    #[test]
    fn hauptmodul_against_direct_product() {
        // brute-force Π (1 - q^{5n})^6 / (1 - q^n)^6 without the pentagonal shortcut
        let prec = 15;
        let mut num = LaurentSeries::one(prec, &Rational::one());
        let mut den = LaurentSeries::one(prec, &Rational::one());
        for k in 1..prec {
            let mut f = vec![Rational::zero(); prec as usize];
            f[0] = Rational::one();
            f[k as usize] = Rational::from_int(-1);
            let f = LaurentSeries::new(0, f, Rational::zero());
            den = den.mul(&f);
            if 5 * k < prec {
                num = num.mul(&f.subs_power(5).truncate(prec));
            }
        }
        let want = num.div(&den).unwrap().pow(6).scale(&Rational::from_int(125)).shift(1).truncate(prec);
        assert!(hauptmodul_t(5, prec).unwrap().agrees_with(&want));
    }

    #[test]
    fn j_expansion() {
        let j = j_series(5).unwrap();
        assert_eq!(j.valuation(), -1);
        assert_eq!(j.coeff(-1).unwrap(), Rational::one());
        assert_eq!(j.coeff(0).unwrap(), Rational::from_int(744));
        assert_eq!(j.coeff(1).unwrap(), Rational::from_int(196884));
        assert_eq!(j.coeff(2).unwrap(), Rational::from_int(21493760));
    }

    #[test]
    fn level_five_relation() {
        let rel = fit_j_in_t(5, 30).unwrap();
        assert_eq!(rel.p.degree(), Some(6));
        assert_eq!(rel.q, UPoly::x(&Rational::one()));
    }

    #[test]
    fn relation_degrees() {
        for n in [7u64, 13] {
            let rel = fit_j_in_t(n, 3 * (n as i64 + 2) + 8).unwrap();
            assert_eq!(rel.p.degree(), Some(n as usize + 1));
            assert!(rel.q.is_monic());
        }
    }
}
