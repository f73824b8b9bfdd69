//! The four subcommands: argument resolution, engine calls, rendering.

use std::fmt::Write as _;
use std::sync::Arc;

use num_bigint::BigInt;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use torsec::arith::field::FiniteField;
use torsec::arith::gf::{is_prime_u64, Gf, GfCtx};
use torsec::check::Check;
use torsec::elliptic::aut::{automorphisms, geometric_aut_order, subgroup_orbits};
use torsec::elliptic::rank::analyze_pair;
use torsec::elliptic::survey::{self, Scope, SurveyConfig, SurveyReport, MIN_FIELD_ORDER};
use torsec::elliptic::torsion::full_torsion;
use torsec::elliptic::{curve_from_j, Curve};
use torsec::ngon::{residuals, solve_valuations};
use torsec::qexp::exceptional::{
    compute_exceptional_polys, default_prec, format_int_poly, format_rational_poly, min_prec, pushforwards,
    ExceptionalPolys,
};
use torsec::qexp::modular::SUPPORTED_LEVELS;

use crate::config::Config;
use crate::goldens::qexp_golden;
use crate::{CliError, Format, NgonArgs, Outcome, QexpArgs, RankArgs, SurveyArgs, UsageError};

pub const DEFAULT_N: u64 = 5;
pub const DEFAULT_SEED: u64 = 1;
pub const DEFAULT_EXT_CAP: usize = 96;

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(UsageError(msg.into()))
}

fn json<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("report serializes")
}

fn check_lines(out: &mut String, checks: &[Check]) {
    for c in checks {
        let _ = writeln!(out, "{}: {}", c.name, c.status);
    }
}

fn field_params(n: u64, p: u64) -> Result<(), CliError> {
    if n < 3 || n.is_multiple_of(2) {
        return Err(usage(format!("N = {n} must be odd and at least 3")));
    }
    if !is_prime_u64(p) {
        return Err(usage(format!("p = {p} is not prime")));
    }
    if p.is_multiple_of(n) {
        return Err(usage(format!("p = {p} divides N = {n}")));
    }
    Ok(())
}

/// `5`, `-3` or `1:0:2` (coordinates, least degree first) reduced mod `p`.
pub fn parse_coords(s: &str, p: u64) -> Result<Vec<u64>, CliError> {
    s.trim()
        .split(':')
        .map(|c| {
            c.trim()
                .parse::<i64>()
                .map(|v| v.rem_euclid(p as i64) as u64)
                .map_err(|_| usage(format!("bad field element '{s}'")))
        })
        .collect()
}

fn element(ctx: &Arc<GfCtx>, coords: &[u64]) -> Gf {
    ctx.from_coords(coords)
}

#[derive(Serialize)]
struct SubgroupRow {
    subgroup: String,
    c: usize,
    vanishing: Vec<usize>,
    orbit: usize,
}

#[derive(Serialize)]
struct RankReport {
    command: &'static str,
    #[serde(rename = "N")]
    n: u64,
    p: u64,
    j: String,
    extension_degree: usize,
    seed: u64,
    subgroups: Vec<SubgroupRow>,
    checks: Vec<Check>,
}

pub fn rank(a: &RankArgs, cfg: &Config) -> Result<Outcome, CliError> {
    let n = cfg.pick(a.n, "n")?.unwrap_or(DEFAULT_N);
    let p = cfg.pick(a.p, "p")?.ok_or_else(|| usage("--p is required"))?;
    field_params(n, p)?;
    let ext_cap = cfg.pick(a.ext_cap, "ext-cap")?.unwrap_or(DEFAULT_EXT_CAP);
    let seed = cfg.pick(a.seed, "seed")?.unwrap_or(DEFAULT_SEED);
    let which = cfg.pick(a.subgroup.clone(), "subgroup")?.unwrap_or_else(|| "auto".into());
    let e: Curve<Gf> = match (cfg.pick(a.j.clone(), "j")?, cfg.pick(a.curve.clone(), "curve")?) {
        (Some(j), None) => {
            let c = parse_coords(&j, p)?;
            curve_from_j(&element(&GfCtx::new(p, c.len())?, &c))
        }
        (None, Some(spec)) => {
            let parts = spec.split(',').map(|s| parse_coords(s, p)).collect::<Result<Vec<_>, _>>()?;
            if parts.len() != 5 {
                return Err(usage("--curve takes five coefficients a1,a2,a3,a4,a6"));
            }
            let ctx = GfCtx::new(p, parts.iter().map(Vec::len).max().unwrap())?;
            let a: [Gf; 5] = std::array::from_fn(|i| element(&ctx, &parts[i]));
            Curve::new(a).map_err(|e| usage(e.to_string()))?
        }
        _ => return Err(usage("give exactly one of --j and --curve")),
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let multiple = if geometric_aut_order(&e) > 2 { 2 } else { 1 };
    let (ext, groups) = full_torsion(&e, n, multiple, MIN_FIELD_ORDER, ext_cap, &mut rng)?;
    let auts = automorphisms(&ext.curve, &mut rng);
    let orbits = subgroup_orbits(&groups, &auts);
    let chosen: Vec<usize> = if which == "auto" {
        (0..groups.len()).collect()
    } else {
        let k: usize = which.parse().map_err(|_| usage(format!("--subgroup must be 'auto' or an index, not '{which}'")))?;
        if k >= groups.len() {
            return Err(usage(format!("--subgroup {k} out of range 0..{}", groups.len())));
        }
        vec![k]
    };
    let nn = n as usize;
    let (mut counting, mut models, mut sym_set, mut sym_val, mut product) = (true, true, true, true, true);
    let mut rows = Vec::new();
    let mut results = vec![None; groups.len()];
    for &i in &chosen {
        let r = analyze_pair(&ext.curve, &groups[i], &mut rng)?;
        counting &= r.counting_identity();
        models &= r.models_agree(nn);
        sym_val &= r.symmetric;
        product &= r.product_constant;
        sym_set &= r.vanishing.iter().all(|m| r.vanishing.contains(&((nn - m) % nn)));
        let orbit = orbits.iter().position(|o| o.contains(&i)).unwrap();
        rows.push(SubgroupRow { subgroup: groups[i].label(), c: r.c, vanishing: r.vanishing.clone(), orbit });
        results[i] = Some((r.c, r.vanishing));
    }
    let orbit_constant = orbits.iter().all(|o| {
        let seen: Vec<_> = o.iter().filter_map(|&i| results[i].clone()).collect();
        seen.windows(2).all(|w| w[0] == w[1])
    });
    let checks = vec![
        Check::new("characters = rank-deficiency", counting),
        Check::new("evaluation rank = basis rank", models),
        Check::new("vanishing set closed under m -> N-m", sym_set),
        Check::new("g_m(-X) = g_{N-m}(X)", sym_val),
        Check::new("product of sections constant", product),
        Check::new("c constant on Aut-orbits", orbit_constant),
    ];
    let j = e.j_invariant().coeff_string();
    let report = RankReport {
        command: "rank",
        n,
        p,
        j: j.clone(),
        extension_degree: ext.degree(),
        seed,
        subgroups: rows,
        checks: checks.clone(),
    };
    let mut text = String::new();
    let _ = writeln!(text, "N = {n}, p = {p}, j = {j}, E[N] over F_{p}^{}", ext.degree());
    let _ = writeln!(text, "{} automorphisms, {} subgroup orbits", auts.len(), orbits.len());
    for r in &report.subgroups {
        let van: Vec<String> = r.vanishing.iter().map(|m| m.to_string()).collect();
        let _ = writeln!(text, "c = {}  vanishing {{{}}}  orbit {}  C = {}", r.c, van.join(", "), r.orbit, r.subgroup);
    }
    check_lines(&mut text, &checks);
    Ok(Outcome { json: json(&report), text, checks, default_format: Format::Text })
}

/// `all`, `exceptional`, or `j=<e1>,<e2>,...`.
pub fn parse_scope(s: &str, p: u64, n: u64, prec: Option<i64>) -> Result<Scope, CliError> {
    match s.trim() {
        "all" => Ok(Scope::All),
        "exceptional" => {
            if !SUPPORTED_LEVELS.contains(&n) {
                return Err(usage(format!("the exceptional scope needs N in {{5, 7, 13}}, not {n}")));
            }
            let prec = prec.unwrap_or_else(|| default_prec(n));
            let polys: [Vec<BigInt>; 2] = pushforwards(n, prec)?;
            Ok(Scope::Roots(polys.to_vec()))
        }
        other => {
            let list = other
                .strip_prefix("j=")
                .ok_or_else(|| usage(format!("unknown scope '{other}'; use all, exceptional or j=<list>")))?;
            let items = list.split(',').filter(|x| !x.trim().is_empty()).map(|x| parse_coords(x, p));
            let items = items.collect::<Result<Vec<_>, _>>()?;
            if items.is_empty() {
                return Err(usage("empty j list"));
            }
            Ok(Scope::List(items))
        }
    }
}

pub fn survey_text(r: &SurveyReport) -> String {
    let mut t = String::new();
    let _ = writeln!(t, "survey N = {}, p = {}, seed = {}, extension degrees {:?}", r.n, r.p, r.seed, r.extension_degrees);
    let _ = writeln!(t, "{:<24} {:>3}  subgroup", "j", "c");
    for row in &r.rows {
        let _ = writeln!(t, "{:<24} {:>3}  {}", row.j, row.c, row.subgroup);
    }
    let a = &r.aggregate;
    let _ = writeln!(t, "aggregate: c0 = {}, c1 = {}, c2 = {}, other = {}", a.c0, a.c1, a.c2, a.c_other);
    check_lines(&mut t, &r.checks);
    if r.partial {
        let _ = writeln!(t, "partial: true");
    }
    t
}

pub fn survey(a: &SurveyArgs, cfg: &Config) -> Result<Outcome, CliError> {
    let n = cfg.pick(a.n, "n")?.unwrap_or(DEFAULT_N);
    let p = cfg.pick(a.p, "p")?.ok_or_else(|| usage("--p is required"))?;
    field_params(n, p)?;
    let scope = cfg.pick(a.scope.clone(), "scope")?.unwrap_or_else(|| "all".into());
    let prec = cfg.pick(a.prec, "prec")?;
    let sc = SurveyConfig {
        p,
        n,
        ext_cap: cfg.pick(a.ext_cap, "ext-cap")?.unwrap_or(DEFAULT_EXT_CAP),
        seed: cfg.pick(a.seed, "seed")?.unwrap_or(DEFAULT_SEED),
        scope: parse_scope(&scope, p, n, prec)?,
    };
    let report = survey::survey(&sc)?;
    Ok(Outcome { json: json(&report), text: survey_text(&report), checks: report.checks.clone(), default_format: Format::Json })
}

#[derive(Serialize)]
struct InvariantRow {
    name: String,
    value: String,
    factorization: String,
}

#[derive(Serialize)]
struct QexpReport {
    command: &'static str,
    #[serde(rename = "N")]
    n: u64,
    prec: i64,
    f1: String,
    f2: String,
    #[serde(rename = "F1")]
    big_f1: String,
    #[serde(rename = "F2")]
    big_f2: String,
    #[serde(rename = "P")]
    p: String,
    #[serde(rename = "Q")]
    q: String,
    gh_valuation: i64,
    invariants: Vec<InvariantRow>,
    checks: Vec<Check>,
}

/// Comparisons against the compiled reference values.
pub fn golden_checks(e: &ExceptionalPolys) -> Vec<Check> {
    let Some(g) = qexp_golden(e.n) else { return Vec::new() };
    let mut out = Vec::new();
    let got = [
        ("f1", format_rational_poly(&e.f1, "t"), g.f1),
        ("f2", format_rational_poly(&e.f2, "t"), g.f2),
        ("F1", format_int_poly(&e.big_f1, "j"), g.big_f1),
        ("F2", format_int_poly(&e.big_f2, "j"), g.big_f2),
    ];
    for (name, have, want) in got {
        if let Some(w) = want {
            out.push(Check::new(format!("golden {name} = {w}"), have == w));
        }
    }
    out.push(Check::new(
        format!("golden degrees ({}, {})", g.degrees.0, g.degrees.1),
        e.f1.degree() == Some(g.degrees.0) && e.f2.degree() == Some(g.degrees.1),
    ));
    out.push(Check::new(format!("golden v_q(G/H) = {}", g.gh_valuation), e.gh_valuation == g.gh_valuation));
    for (name, want) in g.invariants {
        let have = e.invariant(name).map(|i| i.factorization.to_string());
        out.push(Check::new(format!("golden {name} = {want}"), have.as_deref() == Some(*want)));
    }
    out
}

pub fn qexp_report(e: &ExceptionalPolys) -> (String, String, Vec<Check>) {
    let mut checks = e.checks.clone();
    checks.extend(golden_checks(e));
    let report = QexpReport {
        command: "qexp",
        n: e.n,
        prec: e.prec,
        f1: format_rational_poly(&e.f1, "t"),
        f2: format_rational_poly(&e.f2, "t"),
        big_f1: format_int_poly(&e.big_f1, "j"),
        big_f2: format_int_poly(&e.big_f2, "j"),
        p: format_rational_poly(&e.relation.p, "t"),
        q: format_rational_poly(&e.relation.q, "t"),
        gh_valuation: e.gh_valuation,
        invariants: e
            .invariants
            .iter()
            .map(|i| InvariantRow { name: i.name.clone(), value: i.value.to_string(), factorization: i.factorization.to_string() })
            .collect(),
        checks: checks.clone(),
    };
    let mut t = String::new();
    let _ = writeln!(t, "N = {}, precision {}", e.n, e.prec);
    let _ = writeln!(t, "j = P(t)/Q(t) with Q = {}", report.q);
    let w = 12;
    for (k, v) in [("f1(t)", &report.f1), ("f2(t)", &report.f2), ("F1(j)", &report.big_f1), ("F2(j)", &report.big_f2)] {
        let _ = writeln!(t, "{k:>w$} = {v}");
    }
    for i in &report.invariants {
        let _ = writeln!(t, "{:>w$} = {}", i.name, i.factorization);
    }
    check_lines(&mut t, &checks);
    (json(&report), t, checks)
}

pub fn qexp(a: &QexpArgs, cfg: &Config) -> Result<Outcome, CliError> {
    let n = cfg.pick(a.n, "n")?.ok_or_else(|| usage("--n is required"))?;
    if !SUPPORTED_LEVELS.contains(&n) {
        return Err(usage(format!("qexp supports N in {{5, 7, 13}}, not {n}")));
    }
    let prec = cfg.pick(a.prec, "prec")?.unwrap_or_else(|| default_prec(n));
    if prec < min_prec(n) {
        return Err(usage(format!("--prec {prec} is below the minimum {} for N = {n}", min_prec(n))));
    }
    let e = compute_exceptional_polys(n, prec)?;
    let (json, text, checks) = qexp_report(&e);
    Ok(Outcome { json, text, checks, default_format: Format::Text })
}

pub fn ngon(a: &NgonArgs, cfg: &Config) -> Result<Outcome, CliError> {
    let r_text = cfg.pick(a.r.clone(), "r")?.ok_or_else(|| usage("--r is required"))?;
    let r = r_text
        .split(',')
        .map(|x| x.trim().parse::<i64>().map_err(|_| usage(format!("bad count '{x}' in --r"))))
        .collect::<Result<Vec<_>, _>>()?;
    let e = cfg.pick(a.e, "e")?.unwrap_or(r.len());
    let prof = solve_valuations(e, &r)?;
    let zero = residuals(&r, &prof.n).iter().all(|x| x.numer() == &BigInt::from(0));
    let checks = vec![Check::new("residuals vanish", zero)];
    #[derive(Serialize)]
    struct NgonReport<'a> {
        command: &'static str,
        #[serde(flatten)]
        profile: &'a torsec::ngon::NgonProfile,
        checks: &'a [Check],
    }
    let report = NgonReport { command: "ngon", profile: &prof, checks: &checks };
    let ns: Vec<String> = prof.n.iter().map(|x| x.to_string()).collect();
    let mut text = format!("n = ({})\n", ns.join(", "));
    let _ = writeln!(text, "integral: {}", if prof.integral { "yes" } else { "no" });
    check_lines(&mut text, &checks);
    Ok(Outcome { json: json(&report), text, checks, default_format: Format::Text })
}
