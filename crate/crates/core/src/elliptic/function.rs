//! Functions on a Weierstrass curve, kept as `(a(x) + b(x) y) / d(x)`.

use std::fmt;

use super::curve::{Curve, Point};
use crate::arith::field::Field;
use crate::arith::poly::UPoly;
use crate::arith::series::LaurentSeries;
use crate::error::{Error, Result};

/// `(a + b y) / den`, with `den` monic and no common factor of all three.
#[derive(Clone, PartialEq)]
pub struct CurveFunction<F> {
    pub a: UPoly<F>,
    pub b: UPoly<F>,
    pub den: UPoly<F>,
}

/// The relation `y^2 = rhs(x) - lin(x) y`.
#[derive(Clone)]
pub struct Relation<F> {
    lin: UPoly<F>,
    rhs: UPoly<F>,
    one: F,
}

impl<F: Field> Relation<F> {
    pub fn of(e: &Curve<F>) -> Self {
        Relation {
            lin: UPoly::new(vec![e.a3.clone(), e.a1.clone()]),
            rhs: UPoly::new(vec![e.a6.clone(), e.a4.clone(), e.a2.clone(), e.one()]),
            one: e.one(),
        }
    }

    pub fn constant(&self, c: F) -> CurveFunction<F> {
        CurveFunction { a: UPoly::constant(c), b: UPoly::zero(), den: UPoly::constant(self.one.clone()) }.tidy()
    }

    pub fn one(&self) -> CurveFunction<F> {
        self.constant(self.one.clone())
    }

    /// `(a + b y) / (c + d y)`, rationalized by the conjugate `y -> -y - lin`.
    pub fn fraction(&self, a: UPoly<F>, b: UPoly<F>, c: UPoly<F>, d: UPoly<F>) -> Result<CurveFunction<F>> {
        // (c + d y)(c + d ybar) = c^2 - c d lin - d^2 rhs
        let norm = c.clone() * &c - c.clone() * &d * &self.lin - d.clone() * &d * &self.rhs;
        if norm.is_zero() {
            return Err(Error::InvalidInput("denominator vanishes identically on the curve".into()));
        }
        let conj = CurveFunction { a: c - d.clone() * &self.lin, b: -d, den: UPoly::constant(self.one.clone()) };
        let num = self.mul(&CurveFunction { a, b, den: UPoly::constant(self.one.clone()) }, &conj);
        Ok(CurveFunction { a: num.a, b: num.b, den: norm }.tidy())
    }

    pub fn mul(&self, f: &CurveFunction<F>, g: &CurveFunction<F>) -> CurveFunction<F> {
        let bb = f.b.clone() * &g.b;
        let a = f.a.clone() * &g.a + bb.clone() * &self.rhs;
        let b = f.a.clone() * &g.b + f.b.clone() * &g.a - bb * &self.lin;
        CurveFunction { a, b, den: f.den.clone() * &g.den }.tidy()
    }

    /// Divide by a nonzero polynomial in `x`.
    pub fn div_x(&self, f: &CurveFunction<F>, d: &UPoly<F>) -> CurveFunction<F> {
        CurveFunction { a: f.a.clone(), b: f.b.clone(), den: f.den.clone() * d }.tidy()
    }

    pub fn eval(&self, f: &CurveFunction<F>, p: &Point<F>) -> Option<F> {
        let Point::Affine(x, y) = p else {
            return None;
        };
        let num = f.a.eval(x) + &(f.b.eval(x) * y);
        num.checked_div(&f.den.eval(x))
    }
}

impl<F: Field> CurveFunction<F> {
    fn tidy(mut self) -> Self {
        let g = self.den.gcd(&self.a.gcd(&self.b));
        if g.degree().unwrap_or(0) > 0 {
            self.a = self.a.div_exact(&g).unwrap();
            self.b = self.b.div_exact(&g).unwrap();
            self.den = self.den.div_exact(&g).unwrap();
        }
        let lc = self.den.lc().expect("nonzero denominator").clone();
        if !lc.is_one() {
            let inv = lc.inv().unwrap();
            self.a = self.a.scale(&inv);
            self.b = self.b.scale(&inv);
            self.den = self.den.scale(&inv);
        }
        self
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.degree() == Some(0)
    }

    /// Check the `L(N O)` certificate: polynomial, `deg a <= N/2`,
    /// `deg b <= (N-3)/2`.
    pub fn in_riemann_roch(&self, n: usize) -> bool {
        let ok_a = self.a.degree().is_none_or(|d| 2 * d <= n);
        let ok_b = self.b.degree().is_none_or(|d| n >= 3 && 2 * d + 3 <= n);
        self.is_polynomial() && ok_a && ok_b
    }

    /// Coordinates on `x^0..x^{(N-1)/2}, y, xy, ..., x^{(N-3)/2} y` for odd `N`.
    pub fn basis_coefficients(&self, n: usize, like: &F) -> Result<Vec<F>> {
        if !self.in_riemann_roch(n) {
            return Err(Error::CheckFailed(format!("function is not in L({n} O)")));
        }
        let zero = like.zero_like();
        let mut out: Vec<F> = (0..=n / 2).map(|i| self.a.coeff(i, &zero)).collect();
        if n >= 3 {
            out.extend((0..=(n - 3) / 2).map(|i| self.b.coeff(i, &zero)));
        }
        Ok(out)
    }
}

impl<F: Field> fmt::Debug for CurveFunction<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(({}) + ({})*y) / ({})", self.a, self.b, self.den)
    }
}

/// `l_{T,S} / v_{T+S}`: divisor `(T) + (S) - (T+S) - (O)`.
fn line_ratio<F: Field>(e: &Curve<F>, rel: &Relation<F>, t: &Point<F>, s: &Point<F>) -> CurveFunction<F> {
    let (Point::Affine(xt, _), Point::Affine(_, _)) = (t, s) else {
        return rel.one();
    };
    let one = e.one();
    match e.line(t, s) {
        None => CurveFunction { a: UPoly::new(vec![-xt.clone(), one.clone()]), b: UPoly::zero(), den: UPoly::constant(one) },
        Some((lambda, nu)) => {
            let sum = e.add(t, s);
            let x3 = sum.x().expect("non-vertical line meets a third affine point").clone();
            CurveFunction {
                a: UPoly::new(vec![-nu, -lambda]),
                b: UPoly::constant(one.clone()),
                den: UPoly::new(vec![-x3, one]),
            }
            .tidy()
        }
    }
}

fn check_order<F: Field>(e: &Curve<F>, p: &Point<F>, n: u64) -> Result<()> {
    match e.order_of(p, n) {
        Some(o) if o == n => Ok(()),
        other => Err(Error::InvalidInput(format!(
            "point has order {} but {n} was required",
            other.map_or_else(|| format!("> {n}"), |o| o.to_string())
        ))),
    }
}

/// The section `s_P` of `O(N O)`: a polynomial function with divisor
/// `N (P) - N (O)`, built by double-and-add over the bits of `N`.
pub fn miller_section<F: Field>(e: &Curve<F>, p: &Point<F>, n: u64) -> Result<CurveFunction<F>> {
    let rel = Relation::of(e);
    if p.is_infinity() {
        return Ok(rel.one());
    }
    check_order(e, p, n)?;
    let mut f = rel.one();
    let mut t = p.clone();
    for i in (0..63 - n.leading_zeros()).rev() {
        f = rel.mul(&rel.mul(&f, &f), &line_ratio(e, &rel, &t, &t));
        t = e.add(&t, &t);
        if (n >> i) & 1 == 1 {
            f = rel.mul(&f, &line_ratio(e, &rel, &t, p));
            t = e.add(&t, p);
        }
    }
    debug_assert!(t.is_infinity());
    finish(f, n as usize)
}

fn finish<F: Field>(f: CurveFunction<F>, n: usize) -> Result<CurveFunction<F>> {
    if !f.is_polynomial() {
        return Err(Error::CheckFailed("Miller function kept an affine pole".into()));
    }
    if !f.in_riemann_roch(n) {
        return Err(Error::CheckFailed(format!("Miller function fails the L({n} O) degree bound")));
    }
    Ok(f)
}

/// The same section by the quadratic-time product `Π l_{iP,P} / v_{(i+1)P}`.
pub fn naive_section<F: Field>(e: &Curve<F>, p: &Point<F>, n: u64) -> Result<CurveFunction<F>> {
    let rel = Relation::of(e);
    if p.is_infinity() {
        return Ok(rel.one());
    }
    check_order(e, p, n)?;
    let mut f = rel.one();
    let mut t = p.clone();
    for _ in 1..n {
        f = rel.mul(&f, &line_ratio(e, &rel, &t, p));
        t = e.add(&t, p);
    }
    finish(f, n as usize)
}

/// Order of vanishing of a polynomial function at an affine point that is
/// not 2-torsion, from its expansion in the local parameter `z = x - x(P)`.
pub fn order_at<F: Field>(e: &Curve<F>, f: &CurveFunction<F>, p: &Point<F>, prec: i64) -> Result<i64> {
    let Point::Affine(x0, y0) = p else {
        return Err(Error::InvalidInput("local expansion needs an affine point".into()));
    };
    let zero = e.zero();
    let one = e.one();
    let shift = UPoly::new(vec![x0.clone(), one.clone()]);
    let ser = |g: &UPoly<F>| LaurentSeries::from_poly(&g.compose(&shift), prec, &zero);
    let rel = Relation::of(e);
    let lin = ser(&rel.lin);
    let rhs = ser(&rel.rhs);
    let two = LaurentSeries::monomial(one.from_i64_like(2), 0, prec);
    let mut y = LaurentSeries::monomial(y0.clone(), 0, prec);
    // Newton: y <- y - G(y) / G'(y), G(y) = y^2 + lin y - rhs
    let mut known = 1;
    while known < prec {
        let g = y.mul(&y).add(&lin.mul(&y)).sub(&rhs);
        let dg = two.mul(&y).add(&lin);
        y = y.sub(&g.div(&dg).map_err(|_| Error::InvalidInput("point is 2-torsion".into()))?);
        known *= 2;
    }
    let val = ser(&f.a).add(&ser(&f.b).mul(&y)).div(&ser(&f.den))?;
    if val.is_zero() {
        return Err(Error::PrecisionExceeded { index: val.prec(), prec });
    }
    Ok(val.valuation())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::gf::Fp;

    fn torsion_point(e: &Curve<Fp>, n: u64, p: u64) -> Option<Point<Fp>> {
        for x in 0..p as i64 {
            for y in 0..p as i64 {
                let pt = Point::Affine(Fp::new(x, p), Fp::new(y, p));
                if e.contains(&pt) && e.order_of(&pt, n) == Some(n) {
                    return Some(pt);
                }
            }
        }
        None
    }

    fn curve_with_torsion(n: u64, p: u64) -> (Curve<Fp>, Point<Fp>) {
        for a4 in 1..p as i64 {
            for a6 in 1..p as i64 {
                let Ok(e) = Curve::new([1, 0, 1, a4, a6].map(|v| Fp::new(v, p))) else {
                    continue;
                };
                if let Some(pt) = torsion_point(&e, n, p) {
                    return (e, pt);
                }
            }
        }
        panic!("no curve with {n}-torsion over F_{p}");
    }

    #[test]
    fn identity_gives_constant() {
        let e = Curve::short(Fp::new(1, 11), Fp::new(3, 11)).unwrap();
        let s = miller_section(&e, &Point::Infinity, 5).unwrap();
        assert_eq!(s, Relation::of(&e).one());
    }

    #[test]
    fn wrong_order_is_rejected() {
        let (e, p) = curve_with_torsion(5, 31);
        assert!(miller_section(&e, &p, 7).is_err());
    }

    #[test]
    fn miller_matches_naive_product() {
        for (n, p) in [(5u64, 31u64), (7, 41), (5, 11), (3, 7)] {
            let (e, pt) = curve_with_torsion(n, p);
            let m = miller_section(&e, &pt, n).unwrap();
            let nv = naive_section(&e, &pt, n).unwrap();
            let like = e.one();
            let cm = m.basis_coefficients(n as usize, &like).unwrap();
            let cn = nv.basis_coefficients(n as usize, &like).unwrap();
            // proportional vectors
            let k = cm.iter().position(|c| !c.is_zero()).unwrap();
            let ratio = cn[k] * cm[k].inv().unwrap();
            assert!(!ratio.is_zero());
            for (a, b) in cm.iter().zip(&cn) {
                assert_eq!(*a * ratio, *b);
            }
        }
    }

    #[test]
    fn vanishes_to_order_n_at_p() {
        for (n, p) in [(5u64, 31u64), (7, 41), (3, 7)] {
            let (e, pt) = curve_with_torsion(n, p);
            let s = miller_section(&e, &pt, n).unwrap();
            assert_eq!(order_at(&e, &s, &pt, 2 * n as i64 + 4).unwrap(), n as i64);
            // no zero at the other torsion points
            for m in 2..n as i64 {
                let q = e.mul(m, &pt);
                assert!(!Relation::of(&e).eval(&s, &q).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn fraction_rationalizes() {
        let e = Curve::short(Fp::new(2, 13), Fp::new(5, 13)).unwrap();
        let rel = Relation::of(&e);
        let one = Fp::new(1, 13);
        // 1 / y = (-y) / (x^3 + 2x + 5)
        let f = rel
            .fraction(UPoly::constant(one), UPoly::zero(), UPoly::zero(), UPoly::constant(one))
            .unwrap();
        for x in 0..13 {
            for y in 1..13 {
                let pt = Point::Affine(Fp::new(x, 13), Fp::new(y, 13));
                if e.contains(&pt) {
                    assert_eq!(rel.eval(&f, &pt).unwrap(), Fp::new(y, 13).inv().unwrap());
                }
            }
        }
    }
}
