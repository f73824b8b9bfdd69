//! Cyclic subgroups and the extension fields that contain them.

use std::collections::HashSet;
use std::sync::Arc;

use num_bigint::BigUint;
use rand::Rng;

use super::curve::{Curve, Point};
use super::divpoly::division_polynomial;
use crate::arith::ffpoly;
use crate::arith::field::{Field, FiniteField};
use crate::arith::gf::{Embedding, Gf, GfCtx};
use crate::arith::poly::UPoly;
use crate::error::{Error, Result};

/// A cyclic subgroup `C = <P>` of odd order `N`.
#[derive(Clone)]
pub struct Subgroup<F> {
    pub n: u64,
    /// `[O, P, 2P, ..., (N-1)P]`.
    pub points: Vec<Point<F>>,
    /// `D_C(x) = Π (x - x(Q))` over one `Q` from each pair `{Q, -Q}` in `C \ {O}`.
    pub kernel: UPoly<F>,
}

impl<F: Field> std::fmt::Debug for Subgroup<F> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Subgroup").field("n", &self.n).field("points", &self.points).finish()
    }
}

impl<F: Field> Subgroup<F> {
    pub fn new(e: &Curve<F>, p: &Point<F>, n: u64) -> Result<Self> {
        if n.is_multiple_of(2) {
            return Err(Error::InvalidInput(format!("subgroup order {n} must be odd")));
        }
        if e.order_of(p, n) != Some(n) {
            return Err(Error::InvalidInput(format!("generator does not have order {n}")));
        }
        let mut points = vec![Point::Infinity];
        for _ in 1..n {
            points.push(e.add(points.last().unwrap(), p));
        }
        let mut kernel = UPoly::constant(e.one());
        for q in &points[1..=(n as usize - 1) / 2] {
            kernel = kernel * &UPoly::linear_root(q.x().unwrap());
        }
        Ok(Subgroup { n, points, kernel })
    }

    pub fn generator(&self) -> &Point<F> {
        &self.points[1]
    }

    pub fn contains(&self, q: &Point<F>) -> bool {
        self.points.contains(q)
    }

    /// `x`-coordinates of the nonzero points, one per `±` pair.
    pub fn x_coords(&self) -> Vec<&F> {
        self.points[1..=(self.n as usize - 1) / 2].iter().map(|q| q.x().unwrap()).collect()
    }
}

impl<F: FiniteField> Subgroup<F> {
    /// Lexicographically least coefficient string among the `x`-coordinates.
    pub fn label(&self) -> String {
        self.x_coords().iter().map(|x| x.coeff_string()).min().expect("nontrivial subgroup")
    }
}

/// Embed `src` into the degree-`k` field, sending its generator to the
/// least (by coordinates) root of its modulus.
pub fn embed_into<R: Rng + ?Sized>(src: &Arc<GfCtx>, k: usize, rng: &mut R) -> Result<Embedding> {
    if src.degree() == k {
        return Ok(Embedding::identity(src));
    }
    let dst = GfCtx::new(src.characteristic(), k)?;
    let m = UPoly::new(src.modulus().iter().map(|&c| dst.from_int(c as i64)).collect());
    let roots = ffpoly::roots(&m, rng);
    let first = roots
        .into_iter()
        .next()
        .ok_or_else(|| Error::InvalidInput(format!("GF({}^{}) does not embed in degree {k}", src.characteristic(), src.degree())))?;
    Embedding::new(src, first)
}

pub fn map_curve(e: &Curve<Gf>, emb: &Embedding) -> Curve<Gf> {
    e.map(|a| emb.apply(a))
}

/// Smallest multiple of `k` with `p^k >= min_order`.
pub fn grow_to_order(p: u64, k: usize, min_order: u64) -> usize {
    let mut t = 1;
    while BigUint::from(p).pow((k * t) as u32) < BigUint::from(min_order) {
        t += 1;
    }
    k * t
}

fn lcm(a: usize, b: usize) -> usize {
    ffpoly::lcm_all(&[a, b])
}

/// A curve base-changed to an extension, together with the embedding.
#[derive(Clone, Debug)]
pub struct Extended {
    pub embedding: Embedding,
    pub curve: Curve<Gf>,
}

impl Extended {
    pub fn degree(&self) -> usize {
        self.embedding.dst().degree()
    }
}

/// All `N + 1` cyclic subgroups of order `N` (prime, odd), over the smallest
/// extension of the curve's field whose degree is a multiple of `multiple`,
/// contains all of `E[N]`, and has at least `min_order` elements.
pub fn full_torsion<R: Rng + ?Sized>(
    e: &Curve<Gf>,
    n: u64,
    multiple: usize,
    min_order: u64,
    cap: usize,
    rng: &mut R,
) -> Result<(Extended, Vec<Subgroup<Gf>>)> {
    let base = e.a1.ctx().clone();
    let p = base.characteristic();
    if p.is_multiple_of(n) {
        return Err(Error::InvalidInput(format!("characteristic {p} divides N = {n}")));
    }
    let psi = division_polynomial(e, n);
    let degs = ffpoly::factor_degrees(&psi.monic());
    let mut k = lcm(base.degree() * ffpoly::lcm_all(&degs), multiple.max(1));
    k = grow_to_order(p, k, min_order);
    loop {
        if k > cap {
            return Err(Error::SearchCap(format!(
                "E[{n}] needs an extension of degree {k} over F_{p}, above the cap {cap}"
            )));
        }
        let emb = embed_into(&base, k, rng)?;
        let curve = map_curve(e, &emb);
        let psi_k = psi.map(|c| emb.apply(c));
        let xs = ffpoly::roots(&psi_k, rng);
        if xs.len() != psi.degree().unwrap() {
            return Err(Error::CheckFailed("division polynomial failed to split".into()));
        }
        let mut lifted = Vec::with_capacity(xs.len());
        for x in &xs {
            match curve.lift_x(x, rng).into_iter().next() {
                Some(y) => lifted.push(Point::Affine(x.clone(), y)),
                None => break,
            }
        }
        if lifted.len() < xs.len() {
            k *= 2;
            continue;
        }
        let mut seen: HashSet<Vec<u64>> = HashSet::new();
        let mut groups = Vec::new();
        for pt in &lifted {
            if seen.contains(&pt.x().unwrap().coords()) {
                continue;
            }
            let c = Subgroup::new(&curve, pt, n)?;
            for x in c.x_coords() {
                seen.insert(x.coords());
            }
            groups.push(c);
        }
        if groups.len() as u64 != n + 1 {
            return Err(Error::CheckFailed(format!("found {} subgroups of order {n}, expected {}", groups.len(), n + 1)));
        }
        groups.sort_by_key(|c| c.label());
        return Ok((Extended { embedding: emb, curve }, groups));
    }
}

/// One point of exact order `N` over the smallest suitable extension (degree
/// a multiple of `multiple`, at least `min_order` elements), found by seeded
/// root extraction on the division polynomial.
pub fn find_order_n_point<R: Rng + ?Sized>(
    e: &Curve<Gf>,
    n: u64,
    multiple: usize,
    min_order: u64,
    cap: usize,
    rng: &mut R,
) -> Result<(Extended, Point<Gf>)> {
    let base = e.a1.ctx().clone();
    let p = base.characteristic();
    if n == 1 {
        let emb = Embedding::identity(&base);
        return Ok((Extended { embedding: emb, curve: e.clone() }, Point::Infinity));
    }
    if p.is_multiple_of(n) {
        return Err(Error::InvalidInput(format!("characteristic {p} divides N = {n}")));
    }
    let psi = division_polynomial(e, n);
    let mut degs = ffpoly::factor_degrees(&psi.monic());
    degs.sort();
    degs.dedup();
    for d in degs {
        let mut k = grow_to_order(p, lcm(base.degree() * d, multiple.max(1)), min_order);
        for _ in 0..2 {
            if k > cap {
                break;
            }
            let emb = embed_into(&base, k, rng)?;
            let curve = map_curve(e, &emb);
            let psi_k = psi.map(|c| emb.apply(c));
            for x in ffpoly::roots(&psi_k, rng) {
                if let Some(y) = curve.lift_x(&x, rng).into_iter().next() {
                    let pt = Point::Affine(x, y);
                    if curve.order_of(&pt, n) == Some(n) {
                        return Ok((Extended { embedding: emb, curve }, pt));
                    }
                }
            }
            k *= 2;
        }
    }
    Err(Error::SearchCap(format!("no order-{n} point over extensions up to degree {cap}")))
}
