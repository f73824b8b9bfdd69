use std::fmt;

use rand::Rng;

use crate::arith::ffpoly;
use crate::arith::field::{Field, FiniteField};
use crate::arith::poly::UPoly;
use crate::error::{Error, Result};

/// `y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6`.
#[derive(Clone, PartialEq)]
pub struct Curve<F> {
    pub a1: F,
    pub a2: F,
    pub a3: F,
    pub a4: F,
    pub a6: F,
    disc: F,
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Point<F> {
    Infinity,
    Affine(F, F),
}

impl<F: Field> Point<F> {
    pub fn is_infinity(&self) -> bool {
        matches!(self, Point::Infinity)
    }

    pub fn x(&self) -> Option<&F> {
        match self {
            Point::Infinity => None,
            Point::Affine(x, _) => Some(x),
        }
    }

    pub fn y(&self) -> Option<&F> {
        match self {
            Point::Infinity => None,
            Point::Affine(_, y) => Some(y),
        }
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> Point<G> {
        match self {
            Point::Infinity => Point::Infinity,
            Point::Affine(x, y) => Point::Affine(f(x), f(y)),
        }
    }
}

impl<F: Field> fmt::Debug for Point<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Point::Infinity => write!(f, "O"),
            Point::Affine(x, y) => write!(f, "({x}, {y})"),
        }
    }
}

/// The b- and c-covariants.
#[derive(Clone, Debug, PartialEq)]
pub struct Covariants<F> {
    pub b2: F,
    pub b4: F,
    pub b6: F,
    pub b8: F,
    pub c4: F,
}

fn covariants<F: Field>(a1: &F, a2: &F, a3: &F, a4: &F, a6: &F) -> (Covariants<F>, F) {
    let k = |n: i64| a1.from_i64_like(n);
    let b2 = a1.square() + &(k(4) * a2);
    let b4 = k(2) * a4 + &(a1.clone() * a3);
    let b6 = a3.square() + &(k(4) * a6);
    let b8 = a1.square() * a6 + &(k(4) * a2 * a6) - &(a1.clone() * a3 * a4) + &(a2.clone() * &a3.square())
        - &a4.square();
    let c4 = b2.square() - &(k(24) * &b4);
    let disc = -(b2.square() * &b8) - &(k(8) * &b4.pow_u64(3)) - &(k(27) * &b6.square())
        + &(k(9) * &b2 * &b4 * &b6);
    (Covariants { b2, b4, b6, b8, c4 }, disc)
}

impl<F: Field> Curve<F> {
    /// A nonsingular curve from `[a1, a2, a3, a4, a6]`.
    pub fn new(a: [F; 5]) -> Result<Self> {
        let [a1, a2, a3, a4, a6] = a;
        let (_, disc) = covariants(&a1, &a2, &a3, &a4, &a6);
        if disc.is_zero() {
            return Err(Error::SingularCurve(format!(
                "of y^2 + ({a1})xy + ({a3})y = x^3 + ({a2})x^2 + ({a4})x + ({a6})"
            )));
        }
        Ok(Curve { a1, a2, a3, a4, a6, disc })
    }

    /// Short form `y^2 = x^3 + a x + b`.
    pub fn short(a: F, b: F) -> Result<Self> {
        let z = a.zero_like();
        Curve::new([z.clone(), z.clone(), z, a, b])
    }

    pub fn coefficients(&self) -> [&F; 5] {
        [&self.a1, &self.a2, &self.a3, &self.a4, &self.a6]
    }

    pub fn covariants(&self) -> Covariants<F> {
        covariants(&self.a1, &self.a2, &self.a3, &self.a4, &self.a6).0
    }

    pub fn discriminant(&self) -> &F {
        &self.disc
    }

    pub fn j_invariant(&self) -> F {
        let c4 = self.covariants().c4;
        c4.pow_u64(3).checked_div(&self.disc).expect("nonzero discriminant")
    }

    pub fn zero(&self) -> F {
        self.a1.zero_like()
    }

    pub fn one(&self) -> F {
        self.a1.one_like()
    }

    /// Apply a field map to every coefficient (used for base extension).
    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> Curve<G> {
        Curve::new([f(&self.a1), f(&self.a2), f(&self.a3), f(&self.a4), f(&self.a6)])
            .expect("a field embedding preserves nonsingularity")
    }

    /// `x^3 + a2 x^2 + a4 x + a6`.
    pub fn rhs(&self, x: &F) -> F {
        ((x.clone() + &self.a2) * x + &self.a4) * x + &self.a6
    }

    /// `a1 x + a3`.
    pub fn lin(&self, x: &F) -> F {
        self.a1.clone() * x + &self.a3
    }

    pub fn contains(&self, p: &Point<F>) -> bool {
        match p {
            Point::Infinity => true,
            Point::Affine(x, y) => (y.clone() * y + &(self.lin(x) * y)) == self.rhs(x),
        }
    }

    pub fn neg(&self, p: &Point<F>) -> Point<F> {
        match p {
            Point::Infinity => Point::Infinity,
            Point::Affine(x, y) => Point::Affine(x.clone(), -y.clone() - &self.lin(x)),
        }
    }

    /// Slope and intercept of the line through `p` and `q` (tangent if equal),
    /// or `None` when the line is vertical.
    pub fn line(&self, p: &Point<F>, q: &Point<F>) -> Option<(F, F)> {
        let (Point::Affine(x1, y1), Point::Affine(x2, y2)) = (p, q) else {
            return None;
        };
        if x1 != x2 {
            let dx = x2.clone() - x1;
            let inv = dx.inv().unwrap();
            let lambda = (y2.clone() - y1) * &inv;
            let nu = (y1.clone() * x2 - &(y2.clone() * x1)) * &inv;
            return Some((lambda, nu));
        }
        let den = y1.clone() + y2 + &self.lin(x1);
        if den.is_zero() {
            return None;
        }
        let inv = den.inv().unwrap();
        let k = |n: i64| x1.from_i64_like(n);
        let lambda = (k(3) * &x1.square() + &(k(2) * &self.a2 * x1) + &self.a4 - &(self.a1.clone() * y1)) * &inv;
        let nu = (-x1.pow_u64(3) + &(self.a4.clone() * x1) + &(k(2) * &self.a6) - &(self.a3.clone() * y1)) * &inv;
        Some((lambda, nu))
    }

    pub fn add(&self, p: &Point<F>, q: &Point<F>) -> Point<F> {
        match (p, q) {
            (Point::Infinity, _) => q.clone(),
            (_, Point::Infinity) => p.clone(),
            (Point::Affine(x1, _), Point::Affine(x2, _)) => {
                if x1 == x2 && *q != *p {
                    return Point::Infinity;
                }
                let Some((lambda, nu)) = self.line(p, q) else {
                    return Point::Infinity;
                };
                let x3 = lambda.square() + &(self.a1.clone() * &lambda) - &self.a2 - x1 - x2;
                let y3 = -((lambda + &self.a1) * &x3) - &nu - &self.a3;
                Point::Affine(x3, y3)
            }
        }
    }

    pub fn sub(&self, p: &Point<F>, q: &Point<F>) -> Point<F> {
        self.add(p, &self.neg(q))
    }

    /// `[n] p` by double-and-add.
    pub fn mul(&self, n: i64, p: &Point<F>) -> Point<F> {
        let base = if n < 0 { self.neg(p) } else { p.clone() };
        let mut e = n.unsigned_abs();
        let mut acc = Point::Infinity;
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.add(&acc, &b);
            }
            e >>= 1;
            if e > 0 {
                b = self.add(&b, &b);
            }
        }
        acc
    }

    /// Exact order of `p`, if at most `bound`.
    pub fn order_of(&self, p: &Point<F>, bound: u64) -> Option<u64> {
        let mut acc = p.clone();
        for n in 1..=bound {
            if acc.is_infinity() {
                return Some(n);
            }
            acc = self.add(&acc, p);
        }
        None
    }

    /// `4x^3 + b2 x^2 + 2 b4 x + b6`, the square of `2y + a1 x + a3` on the curve.
    pub fn two_torsion_poly(&self) -> UPoly<F> {
        let c = self.covariants();
        let k = |n: i64| self.a1.from_i64_like(n);
        UPoly::new(vec![c.b6, k(2) * &c.b4, c.b2, k(4)])
    }
}

impl<F: FiniteField> Curve<F> {
    /// The `y` values over `x`, sorted by coordinates.
    pub fn lift_x<R: Rng + ?Sized>(&self, x: &F, rng: &mut R) -> Vec<F> {
        let f = UPoly::new(vec![-self.rhs(x), self.lin(x), self.one()]);
        ffpoly::roots(&f, rng)
    }

    /// A uniformly random affine point, by rejection on `x`.
    pub fn random_point<R: Rng + ?Sized>(&self, rng: &mut R) -> Point<F> {
        loop {
            let x = self.a1.random_like(rng);
            let ys = self.lift_x(&x, rng);
            if ys.is_empty() {
                continue;
            }
            let y = ys[rng.gen_range(0..ys.len())].clone();
            return Point::Affine(x, y);
        }
    }
}

impl<F: Field> fmt::Debug for Curve<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "y^2 + ({})xy + ({})y = x^3 + ({})x^2 + ({})x + ({})",
            self.a1, self.a3, self.a2, self.a4, self.a6
        )
    }
}

/// A curve with the given `j`-invariant: the universal family for
/// `j != 0, 1728`, and fixed models at `j = 0, 1728` (all characteristics).
pub fn curve_from_j<F: Field>(j: &F) -> Curve<F> {
    let p = j.characteristic();
    let z = j.zero_like();
    let one = j.one_like();
    let k = |n: i64| j.from_i64_like(n);
    let special = |a: [F; 5]| Curve::new(a).expect("fixed model is nonsingular");
    if j.is_zero() {
        return match p {
            2 => special([z.clone(), z.clone(), one, z.clone(), z]),
            3 => special([z.clone(), z.clone(), z.clone(), one, z]),
            _ => special([z.clone(), z.clone(), z.clone(), z, one]),
        };
    }
    let jm = j.clone() - &k(1728);
    if jm.is_zero() {
        return special([z.clone(), z.clone(), z.clone(), one, z]);
    }
    let inv = jm.inv().unwrap();
    special([one, z.clone(), z, -(k(36) * &inv), -inv])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::gf::{Fp, GfCtx};
    use crate::arith::rational::Rational;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn fp(v: i64, p: u64) -> Fp {
        Fp::new(v, p)
    }

    fn all_points(e: &Curve<Fp>, p: u64) -> Vec<Point<Fp>> {
        let mut pts = vec![Point::Infinity];
        for x in 0..p as i64 {
            for y in 0..p as i64 {
                let pt = Point::Affine(fp(x, p), fp(y, p));
                if e.contains(&pt) {
                    pts.push(pt);
                }
            }
        }
        pts
    }

    #[test]
    fn nonsingular_and_singular() {
        assert!(Curve::short(fp(0, 5), fp(1, 5)).is_ok());
        let q = Rational::zero();
        let err = Curve::short(q.clone(), q).unwrap_err();
        assert!(err.to_string().contains("discriminant"));
        // y^2 + y = x^3 - x^2 over F_2
        let e = Curve::new([fp(0, 2), fp(-1, 2), fp(1, 2), fp(0, 2), fp(0, 2)]).unwrap();
        assert_eq!(e.discriminant().value(), 1);
    }

    #[test]
    fn discriminant_of_short_form() {
        // -16 (4a^3 + 27b^2)
        let e = Curve::short(Rational::from_int(-1), Rational::from_int(1)).unwrap();
        assert_eq!(*e.discriminant(), Rational::from_int(-16 * (-4 + 27)));
        assert_eq!(e.j_invariant(), Rational::new(-6912, 23));
    }

    #[test]
    fn group_law_axioms_over_f31() {
        let e = Curve::new([fp(1, 31), fp(3, 31), fp(5, 31), fp(7, 31), fp(11, 31)]).unwrap();
        let pts = all_points(&e, 31);
        let n = pts.len() as i64;
        for p in pts.iter().step_by(3) {
            assert_eq!(e.add(p, &Point::Infinity), *p);
            assert!(e.add(p, &e.neg(p)).is_infinity());
            assert!(e.mul(n, p).is_infinity());
            for q in pts.iter().step_by(7) {
                let s = e.add(p, q);
                assert!(e.contains(&s));
                assert_eq!(s, e.add(q, p));
                for r in pts.iter().step_by(11) {
                    assert_eq!(e.add(&s, r), e.add(p, &e.add(q, r)));
                }
            }
        }
    }

    #[test]
    fn curve_from_j_has_that_j() {
        for p in [2u64, 3, 5, 7, 31] {
            for j in 0..p as i64 {
                let e = curve_from_j(&fp(j, p));
                assert_eq!(e.j_invariant(), fp(j, p), "p={p} j={j}");
            }
        }
        let e = curve_from_j(&Rational::from_int(1600));
        assert_eq!(e.j_invariant(), Rational::from_int(1600));
    }

    #[test]
    fn lift_matches_enumeration() {
        let ctx = GfCtx::new(2, 3).unwrap();
        let e = curve_from_j(&ctx.gen());
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for x in ctx.elements() {
            let ys = e.lift_x(&x, &mut rng);
            let brute: Vec<_> = ctx
                .elements()
                .into_iter()
                .filter(|y| e.contains(&Point::Affine(x.clone(), y.clone())))
                .collect();
            assert_eq!(ys.len(), brute.len());
            for y in ys {
                assert!(e.contains(&Point::Affine(x.clone(), y)));
            }
        }
    }
}
