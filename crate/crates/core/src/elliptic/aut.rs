//! Automorphisms of a Weierstrass curve and their action on subgroups.
//!
//! An isomorphism is a substitution `x = u^2 x' + r`, `y = u^3 y' + u^2 s x' + t`.
//! Candidates are solved from the transformation formulas for `a1..a6` and
//! then verified in full.

use rand::Rng;

use super::curve::{Curve, Point};
use super::torsion::Subgroup;
use crate::arith::ffpoly;
use crate::arith::field::{Field, FiniteField};
use crate::arith::poly::UPoly;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Iso<F> {
    pub u: F,
    pub r: F,
    pub s: F,
    pub t: F,
}

impl<F: Field> Iso<F> {
    /// The curve obtained from `e` by this substitution.
    pub fn transform(&self, e: &Curve<F>) -> Option<[F; 5]> {
        let (u, r, s, t) = (&self.u, &self.r, &self.s, &self.t);
        let [a1, a2, a3, a4, a6] = e.coefficients();
        let k = |n: i64| u.from_i64_like(n);
        let ui = u.inv()?;
        let b1 = a1.clone() + &(k(2) * s);
        let b2 = a2.clone() - &(s.clone() * a1) + &(k(3) * r) - &s.square();
        let b3 = a3.clone() + &(r.clone() * a1) + &(k(2) * t);
        let b4 = a4.clone() - &(s.clone() * a3) + &(k(2) * r * a2) - &((t.clone() + &(r.clone() * s)) * a1)
            + &(k(3) * &r.square())
            - &(k(2) * s * t);
        let b6 = a6.clone() + &(r.clone() * a4) + &(r.square() * a2) + &r.pow_u64(3) - &(t.clone() * a3) - &t.square()
            - &(r.clone() * t * a1);
        Some([
            b1 * &ui,
            b2 * &ui.pow_u64(2),
            b3 * &ui.pow_u64(3),
            b4 * &ui.pow_u64(4),
            b6 * &ui.pow_u64(6),
        ])
    }

    pub fn is_automorphism_of(&self, e: &Curve<F>) -> bool {
        match self.transform(e) {
            Some(a) => a.iter().zip(e.coefficients()).all(|(x, y)| x == y),
            None => false,
        }
    }

    pub fn apply(&self, p: &Point<F>) -> Point<F> {
        match p {
            Point::Infinity => Point::Infinity,
            Point::Affine(x, y) => {
                let u2 = self.u.square();
                let nx = u2.clone() * x + &self.r;
                let ny = u2.clone() * &self.u * y + &(u2 * &self.s * x) + &self.t;
                Point::Affine(nx, ny)
            }
        }
    }
}

/// Expected `|Aut(E)|` over an algebraically closed field.
pub fn geometric_aut_order<F: Field>(e: &Curve<F>) -> usize {
    let j = e.j_invariant();
    let p = j.characteristic();
    if j.is_zero() {
        match p {
            2 => 24,
            3 => 12,
            _ => 6,
        }
    } else if p != 2 && p != 3 && (j.clone() - &j.from_i64_like(1728)).is_zero() {
        4
    } else {
        2
    }
}

fn roots_of<F: FiniteField, R: Rng + ?Sized>(coeffs: Vec<F>, rng: &mut R) -> Vec<F> {
    let f = UPoly::new(coeffs);
    match f.degree() {
        None => Vec::new(),
        Some(0) => Vec::new(),
        Some(_) => ffpoly::roots(&f, rng),
    }
}

/// All automorphisms of `e` defined over its field, sorted by coordinates.
pub fn automorphisms<F: FiniteField, R: Rng + ?Sized>(e: &Curve<F>, rng: &mut R) -> Vec<Iso<F>> {
    let one = e.one();
    let zero = e.zero();
    let k = |n: i64| one.from_i64_like(n);
    let [a1, a2, a3, a4, a6] = e.coefficients();
    let p = one.characteristic();
    let mut cands: Vec<Iso<F>> = Vec::new();
    if geometric_aut_order(e) == 2 {
        cands.push(Iso { u: one.clone(), r: zero.clone(), s: zero.clone(), t: zero.clone() });
        cands.push(Iso { u: -one.clone(), r: zero.clone(), s: -a1.clone(), t: -a3.clone() });
    } else if p == 2 {
        let mut cube_roots = vec![k(-1)];
        cube_roots.extend(vec![zero.clone(); 2]);
        cube_roots.push(one.clone());
        for u in roots_of(cube_roots, rng) {
            let c = u.square() * a2 + a2;
            let u4 = u.pow_u64(4);
            let s_poly = vec![c.square() + a4 + &(u4 * a4), a3.clone(), zero.clone(), zero.clone(), one.clone()];
            for s in roots_of(s_poly, rng) {
                let r = s.square() + &c;
                let konst = a6.clone() + &(r.clone() * a4) + &(r.square() * a2) + &r.pow_u64(3) + &(u.pow_u64(6) * a6);
                for t in roots_of(vec![konst, a3.clone(), one.clone()], rng) {
                    cands.push(Iso { u: u.clone(), r: r.clone(), s: s.clone(), t });
                }
            }
        }
    } else {
        let half = k(2).inv().unwrap();
        let mut unity = vec![k(-1)];
        unity.extend(vec![zero.clone(); 11]);
        unity.push(one.clone());
        for u in roots_of(unity, rng) {
            let s = (u.clone() - &one) * a1 * &half;
            if p == 3 {
                // r is free in the a2 relation; t is affine in r; a6 is cubic in r
                let c0 = (u.pow_u64(3) * a3 - a3) * &half;
                let c1 = -(a1.clone() * &half);
                let t_of = UPoly::new(vec![c0, c1]);
                let x = UPoly::x(&one);
                let cst = |v: F| UPoly::constant(v);
                let rhs = cst(a6.clone()) + &(x.clone() * &cst(a4.clone())) + &(x.pow(2) * &cst(a2.clone())) + &x.pow(3)
                    - &(t_of.clone() * &cst(a3.clone()))
                    - &(t_of.clone() * &t_of)
                    - &(x.clone() * &t_of * &cst(a1.clone()))
                    - &cst(u.pow_u64(6) * a6);
                for r in roots_of(rhs.into_coeffs(), rng) {
                    let t = t_of.eval(&r);
                    cands.push(Iso { u: u.clone(), r, s: s.clone(), t });
                }
            } else {
                let r = (u.square() * a2 - a2 + &(s.clone() * a1) + &s.square()) * &k(3).inv().unwrap();
                let t = (u.pow_u64(3) * a3 - a3 - &(r.clone() * a1)) * &half;
                cands.push(Iso { u: u.clone(), r, s: s.clone(), t });
            }
        }
    }
    let mut out: Vec<Iso<F>> = cands.into_iter().filter(|i| i.is_automorphism_of(e)).collect();
    out.sort_by_key(|i| (i.u.coords(), i.r.coords(), i.s.coords(), i.t.coords()));
    out.dedup();
    out
}

/// Partition of subgroup indices into orbits under `auts`; each orbit sorted,
/// orbits ordered by their least index.
pub fn subgroup_orbits<F: Field>(groups: &[Subgroup<F>], auts: &[Iso<F>]) -> Vec<Vec<usize>> {
    let n = groups.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], i: usize) -> usize {
        let mut r = i;
        while parent[r] != r {
            r = parent[r];
        }
        parent[i] = r;
        r
    }
    for (i, g) in groups.iter().enumerate() {
        for a in auts {
            let img = a.apply(g.generator());
            if let Some(j) = groups.iter().position(|h| h.contains(&img)) {
                let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                if ri != rj {
                    parent[ri.max(rj)] = ri.min(rj);
                }
            }
        }
    }
    let mut orbits: Vec<Vec<usize>> = Vec::new();
    for i in 0..n {
        let r = find(&mut parent, i);
        match orbits.iter_mut().find(|o| find(&mut parent, o[0]) == r) {
            Some(o) => o.push(i),
            None => orbits.push(vec![i]),
        }
    }
    orbits
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::gf::GfCtx;
    use crate::elliptic::curve::curve_from_j;
    use crate::elliptic::torsion::full_torsion;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn full_groups_over_quadratic_extensions() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for (p, j, want) in [(2u64, 0i64, 24usize), (3, 0, 12), (7, 0, 6), (7, 1728, 4), (31, 0, 6), (31, 1728, 4)] {
            let ctx = GfCtx::new(p, 2).unwrap();
            let e = curve_from_j(&ctx.from_int(j));
            let auts = automorphisms(&e, &mut rng);
            assert_eq!(auts.len(), want, "p={p} j={j}");
            assert_eq!(geometric_aut_order(&e), want);
            for _ in 0..5 {
                let pt = e.random_point(&mut rng);
                for a in &auts {
                    let img = a.apply(&pt);
                    assert!(e.contains(&img));
                    let q = e.random_point(&mut rng);
                    assert_eq!(a.apply(&e.add(&pt, &q)), e.add(&img, &a.apply(&q)));
                }
            }
        }
    }

    #[test]
    fn generic_curve_has_plus_minus_one() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for p in [2u64, 3, 31] {
            let ctx = GfCtx::new(p, 1).unwrap();
            let e = curve_from_j(&ctx.one());
            let auts = automorphisms(&e, &mut rng);
            assert_eq!(auts.len(), 2, "p={p}");
            let pt = e.random_point(&mut rng);
            assert!(auts.iter().any(|a| a.apply(&pt) == e.neg(&pt)));
        }
    }

    #[test]
    fn orbits_are_singletons_for_generic_j() {
        let ctx = GfCtx::new(31, 1).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let e = curve_from_j(&ctx.from_int(7));
        let (ext, groups) = full_torsion(&e, 5, 1, 1, 48, &mut rng).unwrap();
        let auts = automorphisms(&ext.curve, &mut rng);
        assert_eq!(subgroup_orbits(&groups, &auts), (0..6).map(|i| vec![i]).collect::<Vec<_>>());
    }

    #[test]
    fn j_zero_orbits_in_char_two() {
        // the 6 subgroups of E[5] on y^2 + y = x^3 under Aut / {±1} of order 12
        let ctx = GfCtx::new(2, 1).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let e = curve_from_j(&ctx.zero());
        let (ext, groups) = full_torsion(&e, 5, 2, 1, 48, &mut rng).unwrap();
        let auts = automorphisms(&ext.curve, &mut rng);
        assert_eq!(auts.len(), 24);
        let orbits = subgroup_orbits(&groups, &auts);
        let total: usize = orbits.iter().map(|o| o.len()).sum();
        assert_eq!(total, 6);
        assert!(orbits.len() < 6);
    }
}
