//! Prime fields and their finite extensions.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigUint;
use rand::Rng;

use super::field::{FiniteField, Field};
use super::fpoly;
use crate::error::{Error, Result};

/// Largest characteristic supported; keeps `k * p^2` sums inside `u64`.
pub const MAX_CHARACTERISTIC: u64 = 1 << 20;

pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Element of `F_p`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fp {
    v: u64,
    p: u64,
}

impl Fp {
    pub fn new(v: i64, p: u64) -> Self {
        Fp { v: v.rem_euclid(p as i64) as u64, p }
    }

    pub fn value(&self) -> u64 {
        self.v
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }
}

impl fmt::Debug for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.v, self.p)
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.v)
    }
}

impl Add for Fp {
    type Output = Fp;
    fn add(self, rhs: Fp) -> Fp {
        Fp { v: (self.v + rhs.v) % self.p, p: self.p }
    }
}
impl Add<&Fp> for Fp {
    type Output = Fp;
    fn add(self, rhs: &Fp) -> Fp {
        self + *rhs
    }
}
impl Sub for Fp {
    type Output = Fp;
    fn sub(self, rhs: Fp) -> Fp {
        Fp { v: (self.v + self.p - rhs.v) % self.p, p: self.p }
    }
}
impl Sub<&Fp> for Fp {
    type Output = Fp;
    fn sub(self, rhs: &Fp) -> Fp {
        self - *rhs
    }
}
impl Mul for Fp {
    type Output = Fp;
    fn mul(self, rhs: Fp) -> Fp {
        Fp { v: self.v * rhs.v % self.p, p: self.p }
    }
}
impl Mul<&Fp> for Fp {
    type Output = Fp;
    fn mul(self, rhs: &Fp) -> Fp {
        self * *rhs
    }
}
impl Neg for Fp {
    type Output = Fp;
    fn neg(self) -> Fp {
        Fp { v: (self.p - self.v) % self.p, p: self.p }
    }
}

impl Field for Fp {
    fn zero_like(&self) -> Self {
        Fp { v: 0, p: self.p }
    }
    fn one_like(&self) -> Self {
        Fp { v: 1 % self.p, p: self.p }
    }
    fn from_i64_like(&self, n: i64) -> Self {
        Fp::new(n, self.p)
    }
    fn is_zero(&self) -> bool {
        self.v == 0
    }
    fn inv(&self) -> Option<Self> {
        (self.v != 0).then(|| Fp { v: fpoly::inv_mod(self.v, self.p), p: self.p })
    }
    fn characteristic(&self) -> u64 {
        self.p
    }
}

impl FiniteField for Fp {
    fn order(&self) -> BigUint {
        BigUint::from(self.p)
    }
    fn degree(&self) -> usize {
        1
    }
    fn random_like<R: Rng + ?Sized>(&self, rng: &mut R) -> Self {
        Fp { v: rng.gen_range(0..self.p), p: self.p }
    }
    fn coords(&self) -> Vec<u64> {
        vec![self.v]
    }
    fn from_coords_like(&self, coords: &[u64]) -> Self {
        Fp { v: coords.first().copied().unwrap_or(0) % self.p, p: self.p }
    }
    fn frobenius(&self) -> Self {
        *self
    }
}

/// `F_{p^k}` presented as `F_p[x]/(m(x))` with `m` the lexicographically
/// first monic irreducible of degree `k`.
#[derive(PartialEq, Eq)]
pub struct GfCtx {
    p: u64,
    k: usize,
    modulus: Vec<u64>,
}

impl fmt::Debug for GfCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{}) mod {:?}", self.p, self.k, self.modulus)
    }
}

fn ctx_cache() -> &'static Mutex<HashMap<(u64, usize), Arc<GfCtx>>> {
    static CACHE: OnceLock<Mutex<HashMap<(u64, usize), Arc<GfCtx>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

impl GfCtx {
    /// The canonical field of order `p^k`. Contexts are cached per `(p, k)`.
    pub fn new(p: u64, k: usize) -> Result<Arc<GfCtx>> {
        if !is_prime_u64(p) || p >= MAX_CHARACTERISTIC {
            return Err(Error::InvalidInput(format!("characteristic {p} is not a supported prime")));
        }
        if k == 0 {
            return Err(Error::InvalidInput("extension degree must be at least 1".into()));
        }
        if let Some(ctx) = ctx_cache().lock().unwrap().get(&(p, k)) {
            return Ok(ctx.clone());
        }
        let modulus = fpoly::first_irreducible(p, k);
        let ctx = Arc::new(GfCtx { p, k, modulus });
        ctx_cache().lock().unwrap().insert((p, k), ctx.clone());
        Ok(ctx)
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.k
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn order(&self) -> BigUint {
        BigUint::from(self.p).pow(self.k as u32)
    }

    pub fn zero(self: &Arc<Self>) -> Gf {
        Gf { ctx: self.clone(), c: vec![0; self.k] }
    }

    pub fn one(self: &Arc<Self>) -> Gf {
        self.from_int(1)
    }

    pub fn from_int(self: &Arc<Self>, n: i64) -> Gf {
        let mut c = vec![0; self.k];
        c[0] = n.rem_euclid(self.p as i64) as u64;
        Gf { ctx: self.clone(), c }
    }

    /// The class of `x` (a generator of the field over `F_p` when `k > 1`).
    pub fn gen(self: &Arc<Self>) -> Gf {
        self.from_coords(&[0, 1])
    }

    pub fn from_coords(self: &Arc<Self>, coords: &[u64]) -> Gf {
        let reduced: Vec<u64> = coords.iter().map(|c| c % self.p).collect();
        let r = fpoly::rem(&reduced, &self.modulus, self.p);
        let mut c = vec![0; self.k];
        c[..r.len()].copy_from_slice(&r);
        Gf { ctx: self.clone(), c }
    }

    /// All field elements in coordinate order; intended for tiny fields.
    pub fn elements(self: &Arc<Self>) -> Vec<Gf> {
        let q = self.p.pow(self.k as u32);
        (0..q)
            .map(|mut i| {
                let mut c = vec![0; self.k];
                for slot in c.iter_mut() {
                    *slot = i % self.p;
                    i /= self.p;
                }
                Gf { ctx: self.clone(), c }
            })
            .collect()
    }

    fn reduce_wide(&self, mut wide: Vec<u64>) -> Vec<u64> {
        let (p, k) = (self.p, self.k);
        let m = &self.modulus;
        // lazy reduction: entries stay below (k + 1) * p^2
        for top in (k..wide.len()).rev() {
            let t = wide[top] % p;
            if t != 0 {
                let neg = p - t;
                for j in 0..k {
                    wide[top - k + j] += neg * m[j];
                }
            }
        }
        wide.truncate(k);
        for c in wide.iter_mut() {
            *c %= p;
        }
        wide.resize(k, 0);
        wide
    }
}

/// Element of `F_{p^k}`.
#[derive(Clone)]
pub struct Gf {
    ctx: Arc<GfCtx>,
    c: Vec<u64>,
}

impl Gf {
    pub fn ctx(&self) -> &Arc<GfCtx> {
        &self.ctx
    }

    fn same_field(&self, other: &Gf) -> bool {
        Arc::ptr_eq(&self.ctx, &other.ctx) || *self.ctx == *other.ctx
    }

    /// True when the element lies in `F_p`.
    pub fn in_prime_field(&self) -> bool {
        self.c[1..].iter().all(|&x| x == 0)
    }
}

impl PartialEq for Gf {
    fn eq(&self, other: &Gf) -> bool {
        self.same_field(other) && self.c == other.c
    }
}

impl Eq for Gf {}

impl std::hash::Hash for Gf {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.ctx.p.hash(state);
        self.ctx.k.hash(state);
        self.c.hash(state);
    }
}

impl fmt::Debug for Gf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.coeff_string())
    }
}

impl fmt::Display for Gf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.ctx.k == 1 {
            write!(f, "{}", self.c[0])
        } else {
            write!(f, "{}", self.coeff_string())
        }
    }
}

impl Add for Gf {
    type Output = Gf;
    fn add(self, rhs: Gf) -> Gf {
        self + &rhs
    }
}
impl Add<&Gf> for Gf {
    type Output = Gf;
    fn add(mut self, rhs: &Gf) -> Gf {
        debug_assert!(self.same_field(rhs));
        let p = self.ctx.p;
        for (a, b) in self.c.iter_mut().zip(&rhs.c) {
            *a += b;
            if *a >= p {
                *a -= p;
            }
        }
        self
    }
}
impl Sub for Gf {
    type Output = Gf;
    fn sub(self, rhs: Gf) -> Gf {
        self - &rhs
    }
}
impl Sub<&Gf> for Gf {
    type Output = Gf;
    fn sub(mut self, rhs: &Gf) -> Gf {
        debug_assert!(self.same_field(rhs));
        let p = self.ctx.p;
        for (a, b) in self.c.iter_mut().zip(&rhs.c) {
            *a = if *a >= *b { *a - b } else { *a + p - b };
        }
        self
    }
}
impl Mul for Gf {
    type Output = Gf;
    fn mul(self, rhs: Gf) -> Gf {
        self * &rhs
    }
}
impl Mul<&Gf> for Gf {
    type Output = Gf;
    fn mul(self, rhs: &Gf) -> Gf {
        debug_assert!(self.same_field(rhs));
        let k = self.ctx.k;
        if k == 1 {
            let p = self.ctx.p;
            return Gf { c: vec![self.c[0] * rhs.c[0] % p], ctx: self.ctx };
        }
        let p = self.ctx.p;
        let mut wide = vec![0u64; 2 * k - 1];
        for (i, &a) in self.c.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in rhs.c.iter().enumerate() {
                wide[i + j] += a * b;
            }
            // keep the accumulators bounded
            if i % 64 == 63 {
                for w in wide.iter_mut() {
                    *w %= p;
                }
            }
        }
        for w in wide.iter_mut() {
            *w %= p;
        }
        let c = self.ctx.reduce_wide(wide);
        Gf { ctx: self.ctx, c }
    }
}
impl Neg for Gf {
    type Output = Gf;
    fn neg(mut self) -> Gf {
        let p = self.ctx.p;
        for a in self.c.iter_mut() {
            *a = (p - *a) % p;
        }
        self
    }
}

impl Field for Gf {
    fn zero_like(&self) -> Self {
        self.ctx.zero()
    }
    fn one_like(&self) -> Self {
        self.ctx.one()
    }
    fn from_i64_like(&self, n: i64) -> Self {
        self.ctx.from_int(n)
    }
    fn is_zero(&self) -> bool {
        self.c.iter().all(|&x| x == 0)
    }
    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let p = self.ctx.p;
        if self.ctx.k == 1 {
            return Some(Gf { ctx: self.ctx.clone(), c: vec![fpoly::inv_mod(self.c[0], p)] });
        }
        let mut a = self.c.clone();
        fpoly::trim(&mut a);
        let r = fpoly::inv_poly_mod(&a, &self.ctx.modulus, p)?;
        let mut c = vec![0; self.ctx.k];
        c[..r.len()].copy_from_slice(&r);
        Some(Gf { ctx: self.ctx.clone(), c })
    }
    fn characteristic(&self) -> u64 {
        self.ctx.p
    }
}

impl FiniteField for Gf {
    fn order(&self) -> BigUint {
        self.ctx.order()
    }
    fn degree(&self) -> usize {
        self.ctx.k
    }
    fn random_like<R: Rng + ?Sized>(&self, rng: &mut R) -> Self {
        let c = (0..self.ctx.k).map(|_| rng.gen_range(0..self.ctx.p)).collect();
        Gf { ctx: self.ctx.clone(), c }
    }
    fn coords(&self) -> Vec<u64> {
        self.c.clone()
    }
    fn from_coords_like(&self, coords: &[u64]) -> Self {
        self.ctx.from_coords(coords)
    }
}

/// A field embedding `F_{p^d} -> F_{p^k}` (`d | k`) fixed by the image of the
/// source generator.
#[derive(Clone, Debug)]
pub struct Embedding {
    src: Arc<GfCtx>,
    dst: Arc<GfCtx>,
    gen_powers: Vec<Gf>,
}

impl Embedding {
    /// Build the embedding sending the source generator to `image`, which must
    /// be a root of the source modulus.
    pub fn new(src: &Arc<GfCtx>, image: Gf) -> Result<Embedding> {
        let dst = image.ctx().clone();
        if src.p != dst.p || !dst.k.is_multiple_of(src.k) {
            return Err(Error::InvalidInput(format!(
                "no embedding of GF({}^{}) into GF({}^{})",
                src.p, src.k, dst.p, dst.k
            )));
        }
        let mut gen_powers = Vec::with_capacity(src.k + 1);
        let mut acc = dst.one();
        for _ in 0..=src.k {
            gen_powers.push(acc.clone());
            acc = acc * &image;
        }
        // check m(image) = 0
        let mut val = dst.zero();
        for (i, &c) in src.modulus.iter().enumerate() {
            val = val + &(gen_powers[i].clone() * &dst.from_int(c as i64));
        }
        if !val.is_zero() {
            return Err(Error::InvalidInput("embedding image is not a root of the source modulus".into()));
        }
        gen_powers.truncate(src.k);
        Ok(Embedding { src: src.clone(), dst, gen_powers })
    }

    pub fn identity(ctx: &Arc<GfCtx>) -> Embedding {
        let gen_powers = (0..ctx.k)
            .map(|i| {
                let mut c = vec![0; ctx.k];
                c[i] = 1;
                Gf { ctx: ctx.clone(), c }
            })
            .collect();
        Embedding { src: ctx.clone(), dst: ctx.clone(), gen_powers }
    }

    pub fn src(&self) -> &Arc<GfCtx> {
        &self.src
    }

    pub fn dst(&self) -> &Arc<GfCtx> {
        &self.dst
    }

    pub fn apply(&self, a: &Gf) -> Gf {
        debug_assert!(a.same_field(&self.src.zero()));
        let mut out = self.dst.zero();
        for (c, pw) in a.c.iter().zip(&self.gen_powers) {
            if *c != 0 {
                out = out + &(pw.clone() * &self.dst.from_int(*c as i64));
            }
        }
        out
    }

    /// Composition `other ∘ self`.
    pub fn then(&self, other: &Embedding) -> Embedding {
        let gen_powers = self.gen_powers.iter().map(|g| other.apply(g)).collect();
        Embedding { src: self.src.clone(), dst: other.dst.clone(), gen_powers }
    }
}
