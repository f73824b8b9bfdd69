//! The exceptional polynomials `f_1, f_2` in the hauptmodul `t` and their
//! images `F_1, F_2` in `j`, with the invariant table and series checks.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use super::modular::{fit_j_in_t, hauptmodul_t, JRelation, SUPPORTED_LEVELS};
use super::recognize::{interpolate, poly_sqrt, recognize_poly, RECOGNITION_GUARD};
use super::theta::{g_from_translates, g_series, gh_from_ratios, gh_shift, h_series, ratios_rational, translates};
use crate::arith::cyclo::Cyclo;
use crate::arith::factor::{factor_integer, Factorization, DEFAULT_TRIAL_BOUND};
use crate::arith::ffpoly;
use crate::arith::field::Field;
use crate::arith::gf::{is_prime_u64, Fp};
use crate::arith::poly::UPoly;
use crate::arith::rational::Rational;
use crate::arith::resultant::{discriminant_q, primitive_part, resultant_q};
use crate::arith::series::LaurentSeries;
use crate::check::Check;
pub use crate::elliptic::survey::degree_bounds;
use crate::error::{Error, Result};

/// Primes tried as trial divisors before the generic bound.
pub const FACTOR_HINTS: [u64; 8] = [43, 139, 421, 591751, 47, 3491, 5939, 244603];

/// Upper end of the search for a prime with irreducible reduction.
pub const IRREDUCIBILITY_SEARCH: u64 = 500;

const PRIMARY_U0: i64 = 2;
const SECONDARY_U0: i64 = 3;
const EXTRA_PREC: i64 = 16;

pub fn default_prec(n: u64) -> i64 {
    match n {
        5 => 48,
        7 => 64,
        _ => 128,
    }
}

pub fn gh_valuation(n: u64) -> i64 {
    ((n * n - 1) / 12) as i64
}

/// Least `prec` (the precision of `G/H` in `q`) that supports recognition.
pub fn min_prec(n: u64) -> i64 {
    gh_valuation(n) + 2 * degree_bounds(n).1 as i64 + RECOGNITION_GUARD + 1
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Invariant {
    pub name: String,
    pub value: BigInt,
    pub factorization: Factorization,
}

#[derive(Clone, Debug)]
pub struct ExceptionalPolys {
    pub n: u64,
    pub prec: i64,
    pub f1: UPoly<Rational>,
    pub f2: UPoly<Rational>,
    pub big_f1: Vec<BigInt>,
    pub big_f2: Vec<BigInt>,
    pub relation: JRelation,
    pub gh_valuation: i64,
    pub invariants: Vec<Invariant>,
    pub checks: Vec<Check>,
}

impl ExceptionalPolys {
    pub fn all_ok(&self) -> bool {
        !self.checks.iter().any(Check::failed)
    }

    pub fn invariant(&self, name: &str) -> Option<&Invariant> {
        self.invariants.iter().find(|i| i.name == name)
    }
}

struct Recognized {
    ratios: Vec<LaurentSeries<Rational>>,
    gh: LaurentSeries<Rational>,
    f1: UPoly<Rational>,
    f2: UPoly<Rational>,
}

fn recognize_at(n: u64, u0: i64, prec: i64) -> Result<Recognized> {
    let (b1, b2) = degree_bounds(n);
    let v = gh_valuation(n);
    let ratios = ratios_rational(n, &Rational::from_int(u0), prec + gh_shift(n))?;
    let t = hauptmodul_t(n, prec + gh_shift(n) + 1)?;
    let f1 = recognize_poly(&ratios[0], &t, b1)?;
    let gh = gh_from_ratios(n, &ratios);
    if gh.valuation() < v {
        return Err(Error::CheckFailed(format!("v_q(G/H) = {} < {v}", gh.valuation())));
    }
    let phi = gh.div(&t.pow(v as u64))?;
    let sq = recognize_poly(&phi, &t, 2 * b2)?;
    if sq.is_zero() {
        return Err(Error::CheckFailed("G/H vanishes to the working precision".into()));
    }
    let f2 = poly_sqrt(&sq.monic())
        .ok_or_else(|| Error::CheckFailed(format!("G/H / t^{v} is not a constant times a square: {sq}")))?;
    Ok(Recognized { ratios, gh, f1, f2 })
}

/// `Res_t(f(t), P(t) - J Q(t))` as a primitive integer polynomial in `J`.
pub fn push_to_j(f: &UPoly<Rational>, rel: &JRelation) -> Result<Vec<BigInt>> {
    let d = f.degree().ok_or_else(|| Error::InvalidInput("zero polynomial".into()))?;
    let xs: Vec<Rational> = (0..=d as i64).map(Rational::from_int).collect();
    let ys = xs.iter().map(|j| resultant_q(f, &rel.fiber(j))).collect::<Result<Vec<_>>>()?;
    Ok(primitive_part(&interpolate(&xs, &ys)))
}

/// `[F_1, F_2]` without the checks or the invariant table.
pub fn pushforwards(n: u64, prec: i64) -> Result<[Vec<BigInt>; 2]> {
    if !SUPPORTED_LEVELS.contains(&n) {
        return Err(Error::InvalidInput(format!("exceptional polynomials are computed for N in {{5, 7, 13}}, not {n}")));
    }
    let r = recognize_at(n, PRIMARY_U0, prec.max(min_prec(n)))?;
    let relation = fit_j_in_t(n, 3 * (n as i64 + 2) + EXTRA_PREC)?;
    Ok([push_to_j(&r.f1, &relation)?, push_to_j(&r.f2, &relation)?])
}

pub fn int_poly(c: &[BigInt]) -> UPoly<Rational> {
    UPoly::new(c.iter().map(|x| Rational::from_int(x.clone())).collect())
}

fn integral(r: Rational, what: &str) -> Result<BigInt> {
    r.to_integer().ok_or_else(|| Error::CheckFailed(format!("{what} is not an integer: {r}")))
}

/// A prime `p < IRREDUCIBILITY_SEARCH` with `f mod p` irreducible of full degree.
pub fn irreducibility_witness(c: &[BigInt]) -> Option<u64> {
    let d = c.len().checked_sub(1)?;
    (2..IRREDUCIBILITY_SEARCH).filter(|&p| is_prime_u64(p)).find(|&p| {
        let pb = BigInt::from(p);
        let red: Vec<Fp> = c.iter().map(|x| Fp::new(x.mod_floor(&pb).to_i64().unwrap(), p)).collect();
        let f = UPoly::new(red);
        f.degree() == Some(d) && ffpoly::is_irreducible(&f)
    })
}

fn invariant_table(f1: &UPoly<Rational>, f2: &UPoly<Rational>, g1: &[BigInt], g2: &[BigInt]) -> Result<Vec<Invariant>> {
    let hints: Vec<BigInt> = FACTOR_HINTS.iter().map(|&h| BigInt::from(h)).collect();
    let (h1, h2) = (int_poly(g1), int_poly(g2));
    let zero = Rational::zero();
    let rows = vec![
        ("f1(0)", f1.eval(&zero)),
        ("f2(0)", f2.eval(&zero)),
        ("Disc f1", discriminant_q(f1)?),
        ("Disc f2", discriminant_q(f2)?),
        ("Res(f1, f2)", resultant_q(f1, f2)?),
        ("Disc F1", discriminant_q(&h1)?),
        ("Disc F2", discriminant_q(&h2)?),
        ("Res(F1, F2)", resultant_q(&h1, &h2)?),
    ];
    rows.into_iter()
        .map(|(name, r)| {
            let value = integral(r, name)?;
            let factorization = factor_integer(&value, DEFAULT_TRIAL_BOUND, &hints);
            Ok(Invariant { name: name.into(), value, factorization })
        })
        .collect()
}

fn character_law_check(n: u64) -> Result<bool> {
    let prec = 12;
    let u0 = Cyclo::from_int(n as usize, PRIMARY_U0);
    let zu = u0.mul_zeta_pow(1);
    let like = Cyclo::zero(n as usize);
    let tz = translates(n, &zu, prec, false)?;
    for m in 0..n {
        let g = g_series(n, m, &u0, prec)?;
        let gz = g_from_translates(n, m, &tz);
        let h = h_series(n, m, &u0, prec)?;
        let hz = h_series(n, m, &zu, prec)?;
        let twist = |s: &LaurentSeries<Cyclo>| s.map(&like, |c| c.mul_zeta_pow(m as i64));
        if !gz.agrees_with(&twist(&g)) || !hz.agrees_with(&twist(&h)) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `(g_m/h_m) / (g_{N-m}/h_{N-m}) = ±q^{N-2m}` for `m = 1..N-1`.
fn inverse_pair_check(n: u64, ratios: &[LaurentSeries<Rational>]) -> Result<bool> {
    for m in 1..n as usize {
        let r = ratios[m].div(&ratios[n as usize - m])?;
        let e = n as i64 - 2 * m as i64;
        if r.valuation() != e || r.coeff(e)?.abs() != Rational::one() {
            return Ok(false);
        }
        if r.coeffs_from(e + 1)?.iter().any(|c| !c.is_zero()) {
            return Ok(false);
        }
    }
    Ok(true)
}

fn squarefree(f: &UPoly<Rational>) -> bool {
    f.gcd(&f.derivative()).degree() == Some(0)
}

pub fn compute_exceptional_polys(n: u64, prec: i64) -> Result<ExceptionalPolys> {
    if !SUPPORTED_LEVELS.contains(&n) {
        return Err(Error::InvalidInput(format!("exceptional polynomials are computed for N in {{5, 7, 13}}, not {n}")));
    }
    if prec < min_prec(n) {
        return Err(Error::InvalidInput(format!("precision {prec} below the minimum {} for N = {n}", min_prec(n))));
    }
    let (b1, b2) = degree_bounds(n);
    let v = gh_valuation(n);
    let main = recognize_at(n, PRIMARY_U0, prec)?;
    let relation = fit_j_in_t(n, 3 * (n as i64 + 2) + EXTRA_PREC)?;
    let (f1, f2) = (main.f1.clone(), main.f2.clone());
    let big_f1 = push_to_j(&f1, &relation)?;
    let big_f2 = push_to_j(&f2, &relation)?;
    let invariants = invariant_table(&f1, &f2, &big_f1, &big_f2)?;

    let mut checks = vec![
        Check::new("g_m and h_m transform by zeta^m", character_law_check(n)?),
        Check::new("g_m coefficients rational", true),
    ];
    let other = recognize_at(n, SECONDARY_U0, prec)?;
    let same = main.ratios.iter().zip(&other.ratios).all(|(a, b)| a.agrees_with(b));
    checks.push(Check::new(format!("u-independence (u0 = {PRIMARY_U0}, {SECONDARY_U0})"), same));
    checks.push(Check::new("g_m/h_m over g_{N-m}/h_{N-m} = +-q^{N-2m}", inverse_pair_check(n, &main.ratios)?));
    checks.push(Check::new(format!("v_q(G/H) = {v}"), main.gh.valuation() == v));
    checks.push(Check::new(format!("f1(0) = {n}"), f1.eval(&Rational::zero()) == Rational::from_int(n as i64)));
    checks.push(Check::new("f2(0) != 0", !f2.eval(&Rational::zero()).is_zero()));
    checks.push(Check::new(format!("deg f1 = {b1}"), f1.degree() == Some(b1)));
    checks.push(Check::new(format!("deg f2 = {b2}"), f2.degree() == Some(b2)));
    checks.push(Check::new(
        "f1, f2 squarefree and coprime",
        squarefree(&f1) && squarefree(&f2) && f1.gcd(&f2).degree() == Some(0),
    ));
    checks.push(Check::new(
        "deg F_i = deg f_i",
        big_f1.len() == b1 + 1 && big_f2.len() == b2 + 1,
    ));
    let wider = recognize_at(n, PRIMARY_U0, prec + EXTRA_PREC)?;
    checks.push(Check::new(format!("stable at precision {}", prec + EXTRA_PREC), wider.f1 == f1 && wider.f2 == f2));
    let integral_f = |f: &UPoly<Rational>| f.coeffs().iter().map(|c| c.to_integer()).collect::<Option<Vec<_>>>();
    for (name, c) in [
        ("f1", integral_f(&f1)),
        ("f2", integral_f(&f2)),
        ("F1", Some(big_f1.clone())),
        ("F2", Some(big_f2.clone())),
    ] {
        let witness = c.as_deref().and_then(irreducibility_witness);
        checks.push(match witness {
            Some(p) => Check::new(format!("{name} irreducible over Q (mod {p})"), true),
            None => Check::inconclusive(format!("{name} irreducible over Q")),
        });
    }
    Ok(ExceptionalPolys { n, prec, f1, f2, big_f1, big_f2, relation, gh_valuation: main.gh.valuation(), invariants, checks })
}

/// `15j^4 - 28857j^3 + ...` from ascending integer coefficients.
pub fn format_int_poly(c: &[BigInt], var: &str) -> String {
    let mut out = String::new();
    for (i, a) in c.iter().enumerate().rev() {
        if a.is_zero() {
            continue;
        }
        let mag = a.abs();
        if out.is_empty() {
            if a.is_negative() {
                out.push('-');
            }
        } else {
            out.push_str(if a.is_negative() { " - " } else { " + " });
        }
        let unit = mag == BigInt::from(1);
        match i {
            0 => out.push_str(&mag.to_string()),
            _ => {
                if !unit {
                    out.push_str(&mag.to_string());
                }
                out.push_str(var);
                if i > 1 {
                    out.push_str(&format!("^{i}"));
                }
            }
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// `format_int_poly` for a polynomial with integer coefficients.
pub fn format_rational_poly(f: &UPoly<Rational>, var: &str) -> String {
    let (d, c) = crate::arith::resultant::to_integer_poly(f);
    let body = format_int_poly(&c, var);
    if d == BigInt::from(1) {
        body
    } else {
        format!("({body})/{d}")
    }
}
