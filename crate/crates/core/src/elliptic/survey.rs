//! Codimension tables over a finite field.
//!
//! Each `j` gets one curve (twists are irrelevant) and all `N + 1` cyclic
//! subgroups of `E[N]`. Pairs `(E, C)` are counted up to isomorphism, so
//! subgroups are merged along `Aut(E)`-orbits; a row is labeled by the least
//! label in its orbit.

use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::aut::{automorphisms, geometric_aut_order, subgroup_orbits};
use super::curve::curve_from_j;
use super::rank::analyze_pair;
use super::torsion::full_torsion;
use crate::arith::ffpoly;
use crate::arith::field::FiniteField;
use crate::arith::gf::{Gf, GfCtx};
use crate::arith::poly::UPoly;
pub use crate::check::Check;
use crate::error::{Error, Result};

/// Smallest analysis field; keeps sampling off `C` and off the poles easy.
pub const MIN_FIELD_ORDER: u64 = 1024;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Scope {
    /// Every `j` in `F_p`.
    All,
    /// Explicit `j`s given by coordinates; the field degree is the length.
    List(Vec<Vec<u64>>),
    /// Roots over the algebraic closure of these integer polynomials in `j`
    /// (coefficients least degree first), one row set per Galois conjugate.
    Roots(Vec<Vec<BigInt>>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurveyConfig {
    pub p: u64,
    pub n: u64,
    pub ext_cap: usize,
    pub seed: u64,
    pub scope: Scope,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Row {
    pub j: String,
    pub subgroup: String,
    pub c: usize,
    #[serde(skip)]
    pub vanishing: Vec<usize>,
    #[serde(skip)]
    pub key: Vec<u64>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Aggregate {
    pub c0: usize,
    pub c1: usize,
    pub c2: usize,
    pub c_other: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SurveyReport {
    pub command: String,
    #[serde(rename = "N")]
    pub n: u64,
    pub p: u64,
    pub extension_degrees: Vec<usize>,
    pub seed: u64,
    pub rows: Vec<Row>,
    pub aggregate: Aggregate,
    pub checks: Vec<Check>,
    pub partial: bool,
}

impl SurveyReport {
    /// Points of the `c = 1` divisor part: rows whose trivial character vanishes.
    pub fn d1(&self) -> usize {
        self.rows.iter().filter(|r| r.vanishing.first() == Some(&0)).count()
    }

    /// Points of `D_2`, counted by pairs `{χ, χ^{-1}}` of vanishing nontrivial characters.
    pub fn d2(&self) -> usize {
        self.rows.iter().map(|r| r.vanishing.iter().filter(|&&m| m != 0).count()).sum::<usize>() / 2
    }

    pub fn exceptional(&self) -> Vec<&Row> {
        self.rows.iter().filter(|r| r.c > 0).collect()
    }

    pub fn all_ok(&self) -> bool {
        self.checks.iter().all(|c| c.ok())
    }
}

/// `deg D_1 <= (N^2 - 1)/24` and `deg D_2 <= (N - 3)(N^2 - 1)/48`.
pub fn degree_bounds(n: u64) -> (usize, usize) {
    (((n * n - 1) / 24) as usize, ((n - 3) * (n * n - 1) / 48) as usize)
}

#[derive(Default)]
struct Tally {
    counting: bool,
    models: bool,
    symmetric_set: bool,
    symmetric_values: bool,
    product: bool,
    orbit_constant: bool,
    aut_complete: bool,
    gaps: Vec<String>,
    degrees: Vec<usize>,
}

fn frobenius_pow(x: &Gf, i: usize) -> Gf {
    (0..i).fold(x.clone(), |a, _| a.frobenius())
}

/// Degree of the smallest subfield containing `x`.
fn field_degree(x: &Gf) -> usize {
    let mut y = x.frobenius();
    let mut d = 1;
    while &y != x {
        y = y.frobenius();
        d += 1;
    }
    d
}

fn process_j(j: &Gf, conjugates: bool, cfg: &SurveyConfig, rng: &mut ChaCha8Rng, t: &mut Tally) -> Result<Vec<Row>> {
    let e = curve_from_j(j);
    let multiple = if geometric_aut_order(&e) > 2 { 2 } else { 1 };
    let (ext, groups) = match full_torsion(&e, cfg.n, multiple, MIN_FIELD_ORDER, cfg.ext_cap, rng) {
        Ok(v) => v,
        Err(Error::SearchCap(msg)) => {
            t.gaps.push(format!("j={}: {msg}", j.coeff_string()));
            return Ok(Vec::new());
        }
        Err(e) => return Err(e),
    };
    t.degrees.push(ext.degree());
    let auts = automorphisms(&ext.curve, rng);
    t.aut_complete &= auts.len() == geometric_aut_order(&ext.curve);
    let n = cfg.n as usize;
    let mut analyses = Vec::with_capacity(groups.len());
    for c in &groups {
        let a = analyze_pair(&ext.curve, c, rng)?;
        t.counting &= a.counting_identity();
        t.models &= a.models_agree(n);
        t.symmetric_values &= a.symmetric;
        t.product &= a.product_constant;
        t.symmetric_set &= a.vanishing.iter().all(|m| a.vanishing.contains(&((n - m) % n)));
        analyses.push(a);
    }
    let reps = if conjugates { field_degree(j) } else { 1 };
    let mut rows = Vec::new();
    for orbit in subgroup_orbits(&groups, &auts) {
        let first = &analyses[orbit[0]];
        t.orbit_constant &= orbit.iter().all(|&i| analyses[i].c == first.c && analyses[i].vanishing == first.vanishing);
        for i in 0..reps {
            let ji = frobenius_pow(j, i);
            let label = orbit
                .iter()
                .flat_map(|&g| groups[g].x_coords().into_iter().map(|x| frobenius_pow(x, i).coeff_string()))
                .min()
                .unwrap();
            rows.push(Row { j: ji.coeff_string(), subgroup: label, c: first.c, vanishing: first.vanishing.clone(), key: ji.coords() });
        }
    }
    Ok(rows)
}

fn reduce_mod_p(f: &[BigInt], ctx: &Arc<GfCtx>) -> UPoly<Gf> {
    let p = BigInt::from(ctx.characteristic());
    UPoly::new(f.iter().map(|c| ctx.from_int(c.mod_floor(&p).to_i64().unwrap())).collect())
}

/// Representatives of the Galois orbits of roots of `Π f_i mod p`, each in
/// the field of its own degree.
pub fn exceptional_js(p: u64, polys: &[Vec<BigInt>], rng: &mut ChaCha8Rng) -> Result<Vec<Gf>> {
    let base = GfCtx::new(p, 1)?;
    let mut prod = UPoly::constant(base.one());
    for f in polys {
        let g = reduce_mod_p(f, &base);
        if g.is_zero() {
            return Err(Error::InvalidInput(format!("polynomial vanishes identically mod {p}")));
        }
        prod = prod * &g;
    }
    if prod.degree().unwrap_or(0) == 0 {
        return Ok(Vec::new());
    }
    let sf = ffpoly::squarefree_part(&prod.monic());
    let mut reps = Vec::new();
    for (d, g) in ffpoly::distinct_degree_factorization(&sf) {
        let ctx = GfCtx::new(p, d)?;
        let gd = g.map(|c| ctx.from_int(c.coords()[0] as i64));
        let mut roots = ffpoly::roots(&gd, rng);
        while let Some(r) = roots.first().cloned() {
            let orbit: Vec<Gf> = (0..d).map(|i| frobenius_pow(&r, i)).collect();
            roots.retain(|x| !orbit.contains(x));
            reps.push(r);
        }
    }
    Ok(reps)
}

pub fn survey(cfg: &SurveyConfig) -> Result<SurveyReport> {
    if cfg.n < 3 || cfg.n.is_multiple_of(2) {
        return Err(Error::InvalidInput(format!("N = {} must be odd and at least 3", cfg.n)));
    }
    if cfg.p.is_multiple_of(cfg.n) {
        return Err(Error::InvalidInput(format!("characteristic {} divides N = {}", cfg.p, cfg.n)));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let base = GfCtx::new(cfg.p, 1)?;
    let (js, conjugates): (Vec<Gf>, bool) = match &cfg.scope {
        Scope::All => (base.elements(), false),
        Scope::List(items) => {
            let mut v = Vec::new();
            for coords in items {
                let ctx = GfCtx::new(cfg.p, coords.len().max(1))?;
                v.push(ctx.from_coords(coords));
            }
            (v, false)
        }
        Scope::Roots(polys) => (exceptional_js(cfg.p, polys, &mut rng)?, true),
    };
    let mut t = Tally {
        counting: true,
        models: true,
        symmetric_set: true,
        symmetric_values: true,
        product: true,
        orbit_constant: true,
        aut_complete: true,
        ..Default::default()
    };
    let mut rows = Vec::new();
    for j in &js {
        rows.extend(process_j(j, conjugates, cfg, &mut rng, &mut t)?);
    }
    rows.sort_by(|a, b| (a.key.len(), &a.key, &a.subgroup).cmp(&(b.key.len(), &b.key, &b.subgroup)));
    let mut agg = Aggregate::default();
    for r in &rows {
        match r.c {
            0 => agg.c0 += 1,
            1 => agg.c1 += 1,
            2 => agg.c2 += 1,
            _ => agg.c_other += 1,
        }
    }
    t.degrees.sort();
    t.degrees.dedup();
    let mut report = SurveyReport {
        command: "survey".into(),
        n: cfg.n,
        p: cfg.p,
        extension_degrees: t.degrees.clone(),
        seed: cfg.seed,
        rows,
        aggregate: agg,
        checks: Vec::new(),
        partial: !t.gaps.is_empty(),
    };
    let (b1, b2) = degree_bounds(cfg.n);
    let (d1, d2) = (report.d1(), report.d2());
    report.checks = vec![
        Check::new("characters = rank-deficiency", t.counting),
        Check::new("evaluation rank = basis rank", t.models),
        Check::new("vanishing set closed under m -> N-m", t.symmetric_set),
        Check::new("g_m(-X) = g_{N-m}(X)", t.symmetric_values),
        Check::new("product of sections constant", t.product),
        Check::new("c constant on Aut-orbits", t.orbit_constant),
        Check::new("Aut(E) fully rational over the analysis field", t.aut_complete),
        Check::new(format!("deg D1 = {d1} <= {b1}"), d1 <= b1),
        Check::new(format!("deg D2 = {d2} <= {b2}"), d2 <= b2),
    ];
    for g in &t.gaps {
        report.checks.push(Check::partial(format!("extension cap: {g}")));
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(p: u64, n: u64, scope: Scope) -> SurveyConfig {
        SurveyConfig { p, n, ext_cap: 48, seed: 1, scope }
    }

    #[test]
    fn all_j_mod_31() {
        let r = survey(&cfg(31, 5, Scope::All)).unwrap();
        assert!(r.all_ok(), "{:?}", r.checks);
        assert!(!r.partial);
        let ex: Vec<(&str, usize)> = r.exceptional().iter().map(|x| (x.j.as_str(), x.c)).collect();
        assert_eq!(ex, vec![("[3]", 2), ("[19]", 1)]);
        // j = 0 and j = 1728 have extra automorphisms merging subgroups
        assert!(r.rows.len() < 31 * 6);
        assert_eq!(r.aggregate, Aggregate { c0: r.rows.len() - 2, c1: 1, c2: 1, c_other: 0 });
    }

    #[test]
    fn explicit_list_and_determinism() {
        let a = survey(&cfg(11, 5, Scope::List(vec![vec![5], vec![4], vec![2]]))).unwrap();
        let b = survey(&cfg(11, 5, Scope::List(vec![vec![5], vec![4], vec![2]]))).unwrap();
        assert_eq!(a, b);
        let ex: Vec<(&str, usize)> = a.exceptional().iter().map(|x| (x.j.as_str(), x.c)).collect();
        assert_eq!(ex, vec![("[4]", 2), ("[5]", 1)]);
    }

    #[test]
    fn cap_gives_partial_report() {
        let mut c = cfg(31, 5, Scope::List(vec![vec![7]]));
        c.ext_cap = 1;
        let r = survey(&c).unwrap();
        assert!(r.partial);
        assert!(r.rows.is_empty());
        assert!(r.checks.iter().any(|c| c.status == "PARTIAL"));
    }

    #[test]
    fn roots_scope_finds_conjugates() {
        let polys = vec![vec![BigInt::from(-1600), BigInt::from(1)], vec![BigInt::from(25), BigInt::from(2)]];
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let js = exceptional_js(31, &polys, &mut rng).unwrap();
        assert_eq!(js.iter().map(|j| j.coeff_string()).collect::<Vec<_>>(), vec!["[3]", "[19]"]);
        // x^2 + 1 is irreducible mod 31: one representative of degree 2
        let js = exceptional_js(31, &[vec![BigInt::from(1), BigInt::from(0), BigInt::from(1)]], &mut rng).unwrap();
        assert_eq!(js.len(), 1);
        assert_eq!(js[0].ctx().degree(), 2);
    }

    #[test]
    fn bounds() {
        assert_eq!(degree_bounds(5), (1, 1));
        assert_eq!(degree_bounds(7), (2, 4));
        assert_eq!(degree_bounds(13), (7, 35));
    }
}
