//! Polynomials over finite fields: distinct-degree factorization, seeded
//! root finding, irreducibility.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::One;
use rand::Rng;

use super::field::{Field, FiniteField};
use super::poly::UPoly;

/// `base^e mod m`.
pub fn powmod<F: Field>(base: &UPoly<F>, e: &BigUint, m: &UPoly<F>) -> UPoly<F> {
    let like = m.lc().expect("nonzero modulus").clone();
    let mut acc = UPoly::constant(like.one_like()).rem(m);
    let base = base.rem(m);
    for i in (0..e.bits()).rev() {
        acc = acc.mulmod(&acc, m);
        if e.bit(i) {
            acc = acc.mulmod(&base, m);
        }
    }
    acc
}

/// `x^q mod f`, `q` the order of the coefficient field.
fn x_to_q<F: FiniteField>(f: &UPoly<F>) -> UPoly<F> {
    let like = f.lc().unwrap();
    powmod(&UPoly::x(like), &like.order(), f)
}

/// Distinct-degree factorization of a squarefree monic `f`: pairs `(d, g_d)`
/// where `g_d` is the product of the irreducible factors of degree `d`.
pub fn distinct_degree_factorization<F: FiniteField>(f: &UPoly<F>) -> Vec<(usize, UPoly<F>)> {
    let mut out = Vec::new();
    let Some(deg) = f.degree() else {
        return out;
    };
    if deg == 0 {
        return out;
    }
    let like = f.lc().unwrap().clone();
    let x = UPoly::x(&like);
    let q = like.order();
    let mut rest = f.monic();
    let mut h = x.clone();
    let mut d = 0;
    while let Some(rd) = rest.degree() {
        if rd == 0 {
            break;
        }
        d += 1;
        if 2 * d > rd {
            out.push((rd, rest.clone()));
            break;
        }
        h = powmod(&h, &q, &rest);
        let g = rest.gcd(&(h.clone() - &x));
        if g.degree().unwrap_or(0) > 0 {
            rest = rest.div_exact(&g).expect("gcd divides");
            h = h.rem(&rest);
            out.push((d, g));
        }
    }
    out
}

/// Degrees of the irreducible factors of a squarefree `f`, with multiplicity.
pub fn factor_degrees<F: FiniteField>(f: &UPoly<F>) -> Vec<usize> {
    let mut out = Vec::new();
    for (d, g) in distinct_degree_factorization(f) {
        for _ in 0..g.degree().unwrap() / d {
            out.push(d);
        }
    }
    out
}

/// Squarefree part `f / gcd(f, f')`, assuming `f'` is nonzero.
pub fn squarefree_part<F: FiniteField>(f: &UPoly<F>) -> UPoly<F> {
    let d = f.derivative();
    if d.is_zero() {
        return f.monic();
    }
    let g = f.gcd(&d);
    f.div_exact(&g).expect("gcd divides").monic()
}

/// Irreducibility over the coefficient field.
pub fn is_irreducible<F: FiniteField>(f: &UPoly<F>) -> bool {
    let Some(n) = f.degree() else {
        return false;
    };
    if n == 0 {
        return false;
    }
    if n == 1 {
        return true;
    }
    let fm = f.monic();
    if fm.gcd(&fm.derivative()).degree() != Some(0) {
        return false;
    }
    let dd = distinct_degree_factorization(&fm);
    dd.len() == 1 && dd[0].0 == n
}

/// Distinct roots of `f` in its coefficient field, sorted by coordinates.
pub fn roots<F: FiniteField, R: Rng + ?Sized>(f: &UPoly<F>, rng: &mut R) -> Vec<F> {
    let Some(deg) = f.degree() else {
        return Vec::new();
    };
    if deg == 0 {
        return Vec::new();
    }
    let like = f.lc().unwrap().clone();
    let x = UPoly::x(&like);
    let g = f.monic().gcd(&(x_to_q(&f.monic()) - &x));
    let mut out = Vec::new();
    split_linear(&g, rng, &mut out);
    out.sort_by_key(|a| a.coords());
    out
}

/// Split a product of distinct linear factors.
fn split_linear<F: FiniteField, R: Rng + ?Sized>(g: &UPoly<F>, rng: &mut R, out: &mut Vec<F>) {
    let Some(d) = g.degree() else {
        return;
    };
    match d {
        0 => {}
        1 => {
            let g = g.monic();
            out.push(-g.coeffs()[0].clone());
        }
        _ => loop {
            let h = splitting_candidate(g, rng);
            let s = g.gcd(&h);
            let sd = s.degree().unwrap_or(0);
            if sd > 0 && sd < d {
                let t = g.div_exact(&s).expect("gcd divides");
                split_linear(&s, rng, out);
                split_linear(&t, rng, out);
                return;
            }
        },
    }
}

/// A polynomial whose gcd with `g` is a random proper factor about half the
/// time: `(x + a)^{(q-1)/2} - 1` for odd `q`, the trace of `a x` for `q = 2^k`.
fn splitting_candidate<F: FiniteField, R: Rng + ?Sized>(g: &UPoly<F>, rng: &mut R) -> UPoly<F> {
    let like = g.lc().unwrap().clone();
    let a = like.random_like(rng);
    if like.characteristic() == 2 {
        let ax = UPoly::monomial(a, 1);
        let mut term = ax.rem(g);
        let mut acc = term.clone();
        for _ in 1..like.degree() {
            term = term.mulmod(&term, g);
            acc = acc + &term;
        }
        acc
    } else {
        let base = UPoly::new(vec![a, like.one_like()]);
        let e = (like.order() - BigUint::one()) >> 1;
        powmod(&base, &e, g) - &UPoly::constant(like.one_like())
    }
}

/// Least common multiple of a list of degrees.
pub fn lcm_all(ds: &[usize]) -> usize {
    ds.iter().fold(1, |acc, &d| acc.lcm(&d))
}
