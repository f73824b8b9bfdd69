//! Seeded random `(E, C)` pairs over small prime fields.

use rand::Rng;

use super::curve::{Curve, Point};
use super::survey::MIN_FIELD_ORDER;
use super::torsion::{full_torsion, Extended, Subgroup};
use crate::arith::gf::{Gf, GfCtx};
use crate::error::{Error, Result};

/// A random curve over `F_p` with all of `E[N]`, its subgroups, one chosen
/// subgroup and a translate `Q` in `E[N] \ C`.
pub struct RandomPair {
    pub p: u64,
    pub ext: Extended,
    pub groups: Vec<Subgroup<Gf>>,
    pub chosen: usize,
    pub translate: Point<Gf>,
}

impl RandomPair {
    pub fn curve(&self) -> &Curve<Gf> {
        &self.ext.curve
    }

    pub fn subgroup(&self) -> &Subgroup<Gf> {
        &self.groups[self.chosen]
    }
}

/// Draw curves `y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6` until one has
/// `E[N]` over an extension of degree at most `cap`; `None` after `tries`.
pub fn random_pair<R: Rng + ?Sized>(p: u64, n: u64, cap: usize, tries: usize, rng: &mut R) -> Result<Option<RandomPair>> {
    let ctx = GfCtx::new(p, 1)?;
    for _ in 0..tries {
        let a: [_; 5] = std::array::from_fn(|_| ctx.from_int(rng.gen_range(0..p) as i64));
        let Ok(e) = Curve::new(a) else { continue };
        let (ext, groups) = match full_torsion(&e, n, 1, MIN_FIELD_ORDER, cap, rng) {
            Ok(v) => v,
            Err(Error::SearchCap(_)) => continue,
            Err(x) => return Err(x),
        };
        let chosen = rng.gen_range(0..groups.len());
        let other = (chosen + rng.gen_range(1..groups.len())) % groups.len();
        let k = rng.gen_range(1..n as i64);
        let q0 = ext.curve.mul(k, groups[other].generator());
        let shift = rng.gen_range(0..n as usize);
        let translate = ext.curve.add(&q0, &groups[chosen].points[shift]);
        return Ok(Some(RandomPair { p, ext, groups, chosen, translate }));
    }
    Ok(None)
}
