//! Division polynomials in `x` alone.
//!
//! `f_n = ψ_n` for odd `n` and `f_n = ψ_n / ψ_2` for even `n`, where
//! `ψ_2^2 = 4x^3 + b2 x^2 + 2 b4 x + b6`.

use std::collections::HashMap;

use super::curve::Curve;
use crate::arith::field::Field;
use crate::arith::poly::UPoly;

struct Recurrence<'a, F: Field> {
    memo: HashMap<u64, UPoly<F>>,
    b_sq: &'a UPoly<F>,
}

impl<F: Field> Recurrence<'_, F> {
    fn get(&mut self, n: u64) -> UPoly<F> {
        if let Some(f) = self.memo.get(&n) {
            return f.clone();
        }
        let m = n / 2;
        let f = if n % 2 == 1 {
            let (a, b, c, d) = (self.get(m + 2), self.get(m), self.get(m - 1), self.get(m + 1));
            let t1 = a * &b.pow(3);
            let t2 = c * &d.pow(3);
            if m.is_multiple_of(2) {
                t1 * self.b_sq - t2
            } else {
                t1 - t2 * self.b_sq
            }
        } else {
            let (fm, a, b, c, d) = (self.get(m), self.get(m + 2), self.get(m - 1), self.get(m - 2), self.get(m + 1));
            fm * &(a * &b.pow(2) - c * &d.pow(2))
        };
        self.memo.insert(n, f.clone());
        f
    }
}

/// `f_n` for `n >= 1`; for odd `n` its roots are the `x`-coordinates of the
/// nonzero `n`-torsion and its degree is `(n^2 - 1)/2` (when `char ∤ n`).
pub fn division_polynomial<F: Field>(e: &Curve<F>, n: u64) -> UPoly<F> {
    assert!(n >= 1, "division polynomial index must be positive");
    let c = e.covariants();
    let like = e.one();
    let k = |v: i64| like.from_i64_like(v);
    let mut memo = HashMap::new();
    memo.insert(0, UPoly::zero());
    memo.insert(1, UPoly::constant(like.clone()));
    memo.insert(2, UPoly::constant(like.clone()));
    memo.insert(3, UPoly::new(vec![c.b8.clone(), k(3) * &c.b6, k(3) * &c.b4, c.b2.clone(), k(3)]));
    memo.insert(
        4,
        UPoly::new(vec![
            c.b4.clone() * &c.b8 - &c.b6.square(),
            c.b2.clone() * &c.b8 - &(c.b4.clone() * &c.b6),
            k(10) * &c.b8,
            k(10) * &c.b6,
            k(5) * &c.b4,
            c.b2.clone(),
            k(2),
        ]),
    );
    let b = e.two_torsion_poly();
    let b_sq = b.clone() * &b;
    let mut rec = Recurrence { memo, b_sq: &b_sq };
    rec.get(n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::gf::Fp;
    use crate::arith::rational::Rational;
    use crate::elliptic::curve::Point;

    #[test]
    fn small_indices() {
        let e = Curve::short(Rational::from_int(2), Rational::from_int(3)).unwrap();
        assert_eq!(division_polynomial(&e, 1), UPoly::constant(Rational::one()));
        // 3x^4 + 6a x^2 + 12b x - a^2
        let want: Vec<Rational> = [-4, 36, 12, 0, 3].iter().map(|&v| Rational::from_int(v)).collect();
        assert_eq!(division_polynomial(&e, 3), UPoly::new(want));
    }

    #[test]
    fn degrees() {
        let e = Curve::new([1, 2, 3, 4, 5].map(Rational::from_int)).unwrap();
        for (n, d) in [(5, 12), (7, 24), (13, 84)] {
            assert_eq!(division_polynomial(&e, n).degree(), Some(d));
        }
    }

    #[test]
    fn three_torsion_on_a_rational_example() {
        // y^2 = x^3 + 1 has the rational 3-torsion points (0, ±1)
        let e = Curve::short(Rational::zero(), Rational::one()).unwrap();
        let p = Point::Affine(Rational::zero(), Rational::one());
        assert!(e.mul(3, &p).is_infinity());
        assert!(division_polynomial(&e, 3).eval(&Rational::zero()).is_zero());
    }

    #[test]
    fn roots_are_torsion_x_coordinates() {
        // brute force over F_p in general Weierstrass form, including char 2 and 3
        for (p, a) in [(31u64, [1, 3, 5, 7, 11]), (2, [1, 0, 1, 1, 1]), (3, [1, 1, 0, 2, 1]), (11, [0, 1, 1, 4, 9])] {
            let Ok(e) = Curve::new(a.map(|v| Fp::new(v, p))) else {
                continue;
            };
            for n in [5u64, 7] {
                if p % n == 0 {
                    continue;
                }
                let f = division_polynomial(&e, n);
                assert_eq!(f.degree(), Some(((n * n - 1) / 2) as usize));
                for x in 0..p as i64 {
                    for y in 0..p as i64 {
                        let pt = Point::Affine(Fp::new(x, p), Fp::new(y, p));
                        if !e.contains(&pt) {
                            continue;
                        }
                        let torsion = e.mul(n as i64, &pt).is_infinity();
                        assert_eq!(f.eval(&Fp::new(x, p)).is_zero(), torsion, "p={p} n={n} x={x}");
                    }
                }
            }
        }
    }
}
