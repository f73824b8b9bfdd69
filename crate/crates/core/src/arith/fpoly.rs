//! Dense polynomials over a prime field `F_p` as little-endian `u64` slices.
//!
//! Only what the extension-field layer needs: modular products, Euclid,
//! and the Rabin irreducibility test used to pick defining moduli.

pub(crate) fn trim(a: &mut Vec<u64>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

pub(crate) fn inv_mod(a: u64, p: u64) -> u64 {
    debug_assert!(!a.is_multiple_of(p));
    pow_mod(a, p - 2, p)
}

pub(crate) fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

pub(crate) fn mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    trim(&mut out);
    out
}

pub(crate) fn sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let n = a.len().max(b.len());
    let mut out: Vec<u64> = (0..n)
        .map(|i| {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            (x + p - y) % p
        })
        .collect();
    trim(&mut out);
    out
}

/// Remainder of `a` modulo a nonzero `m`.
pub(crate) fn rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let mut r = a.to_vec();
    trim(&mut r);
    let dm = m.len() - 1;
    let lc_inv = inv_mod(m[dm], p);
    while r.len() > dm {
        let top = r.len() - 1;
        let t = r[top] * lc_inv % p;
        if t != 0 {
            for (j, &mj) in m.iter().enumerate() {
                let idx = top - dm + j;
                r[idx] = (r[idx] + (p - t) * mj) % p;
            }
        }
        r.pop();
        trim(&mut r);
    }
    r
}

pub(crate) fn divrem(a: &[u64], m: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
    let mut r = a.to_vec();
    trim(&mut r);
    let dm = m.len() - 1;
    if r.len() <= dm {
        return (Vec::new(), r);
    }
    let lc_inv = inv_mod(m[dm], p);
    let mut q = vec![0u64; r.len() - dm];
    while r.len() > dm {
        let top = r.len() - 1;
        let t = r[top] * lc_inv % p;
        q[top - dm] = t;
        if t != 0 {
            for (j, &mj) in m.iter().enumerate() {
                let idx = top - dm + j;
                r[idx] = (r[idx] + (p - t) * mj) % p;
            }
        }
        r.pop();
        trim(&mut r);
    }
    trim(&mut q);
    (q, r)
}

pub(crate) fn gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        let r = rem(&a, &b, p);
        a = b;
        b = r;
    }
    if let Some(&lc) = a.last() {
        let inv = inv_mod(lc, p);
        for c in a.iter_mut() {
            *c = *c * inv % p;
        }
    }
    a
}

/// Inverse of `a` modulo `m`, if `gcd(a, m) = 1`.
pub(crate) fn inv_poly_mod(a: &[u64], m: &[u64], p: u64) -> Option<Vec<u64>> {
    // Extended Euclid tracking only the coefficient of `a`.
    let mut r0 = m.to_vec();
    let mut r1 = rem(a, m, p);
    let mut s0: Vec<u64> = Vec::new();
    let mut s1: Vec<u64> = vec![1];
    while !r1.is_empty() {
        let (q, r) = divrem(&r0, &r1, p);
        let s = sub(&s0, &mul(&q, &s1, p), p);
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s;
    }
    if r0.len() != 1 {
        return None;
    }
    let inv = inv_mod(r0[0], p);
    let mut out: Vec<u64> = s0.iter().map(|c| c * inv % p).collect();
    trim(&mut out);
    Some(rem(&out, m, p))
}

pub(crate) fn mulmod(a: &[u64], b: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    rem(&mul(a, b, p), m, p)
}

pub(crate) fn powmod(base: &[u64], mut e: u64, m: &[u64], p: u64) -> Vec<u64> {
    let mut acc = rem(&[1], m, p);
    let mut b = rem(base, m, p);
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(&acc, &b, m, p);
        }
        e >>= 1;
        if e > 0 {
            b = mulmod(&b, &b, m, p);
        }
    }
    acc
}

fn prime_divisors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Rabin's test for a monic `f` of degree `k >= 1`.
pub(crate) fn is_irreducible(f: &[u64], p: u64) -> bool {
    let k = f.len() - 1;
    if k == 1 {
        return true;
    }
    if f[0] == 0 {
        return false;
    }
    let x = vec![0, 1];
    // frob[i] = x^{p^i} mod f
    let mut frob = Vec::with_capacity(k + 1);
    frob.push(rem(&x, f, p));
    for i in 1..=k {
        let next = powmod(&frob[i - 1], p, f, p);
        frob.push(next);
    }
    if rem(&sub(&frob[k], &x, p), f, p) != Vec::<u64>::new() {
        return false;
    }
    prime_divisors(k).into_iter().all(|r| {
        let h = sub(&frob[k / r], &x, p);
        gcd(f, &h, p).len() == 1
    })
}

/// The monic irreducible of degree `k` over `F_p` whose coefficient vector
/// `(c_{k-1}, ..., c_0)` is lexicographically least.
pub(crate) fn first_irreducible(p: u64, k: usize) -> Vec<u64> {
    let mut idx: u128 = 0;
    loop {
        let mut f = vec![0u64; k + 1];
        f[k] = 1;
        let mut t = idx;
        for c in f.iter_mut().take(k) {
            *c = (t % p as u128) as u64;
            t /= p as u128;
        }
        if k == 1 || is_irreducible(&f, p) {
            return f;
        }
        idx += 1;
    }
}
