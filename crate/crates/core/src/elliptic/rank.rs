//! `c_{E,C}` from the two section models.
//!
//! `O(N O)`: the Miller sections `s_{mP}` written on the monomial basis of
//! `L(N O)`; `c = N - rank`. `O(C)`: the coherent sections
//! `s_P(X) = 1 / D_C(x(X - P))`, evaluated at sample points; their character
//! sums `g_m = Σ_j ω^{mj} s_{jP}` vanish for exactly `c` residues `m`.

use num_bigint::BigUint;
use num_traits::One;
use rand::Rng;

use super::curve::{Curve, Point};
use super::function::miller_section;
use super::torsion::Subgroup;
use crate::arith::factor::small_factor;
use crate::arith::field::{Field, FiniteField};
use crate::arith::matrix::matrix_rank;
use crate::error::{Error, Result};

/// Rows: basis coordinates of `s_{mP}` for `m = 0..N`.
pub fn section_matrix<F: Field>(e: &Curve<F>, c: &Subgroup<F>) -> Result<Vec<Vec<F>>> {
    let points: Vec<&Point<F>> = c.points.iter().collect();
    sections_for(e, &points, c.n)
}

/// Basis coordinates of the Miller sections of arbitrary order-`N` points.
pub fn sections_for<F: Field>(e: &Curve<F>, points: &[&Point<F>], n: u64) -> Result<Vec<Vec<F>>> {
    let like = e.one();
    points
        .iter()
        .map(|p| miller_section(e, p, n)?.basis_coefficients(n as usize, &like))
        .collect()
}

/// `c_{E,C} = N - rank` of the section matrix.
pub fn rank_c<F: Field>(e: &Curve<F>, c: &Subgroup<F>) -> Result<usize> {
    Ok(c.n as usize - matrix_rank(&section_matrix(e, c)?)?)
}

/// `N - rank` after scaling each section by a random nonzero constant.
pub fn rescaled_c<F: FiniteField, R: Rng + ?Sized>(e: &Curve<F>, c: &Subgroup<F>, rng: &mut R) -> Result<usize> {
    let mut m = section_matrix(e, c)?;
    for row in m.iter_mut() {
        let k = loop {
            let k = e.one().random_like(rng);
            if !k.is_zero() {
                break k;
            }
        };
        for v in row.iter_mut() {
            *v = v.clone() * &k;
        }
    }
    Ok(c.n as usize - matrix_rank(&m)?)
}

/// `N - rank` of the sections attached to the coset `Q + C`, `Q` in `E[N]`.
pub fn coset_c<F: Field>(e: &Curve<F>, c: &Subgroup<F>, q: &Point<F>) -> Result<usize> {
    let shifted: Vec<Point<F>> = c.points.iter().map(|p| e.add(p, q)).collect();
    if shifted.iter().any(Point::is_infinity) {
        return Err(Error::InvalidInput("translate lies in C".into()));
    }
    let refs: Vec<&Point<F>> = shifted.iter().collect();
    Ok(c.n as usize - matrix_rank(&sections_for(e, &refs, c.n)?)?)
}

/// `M` distinct random affine points outside `C`.
pub fn sample_points<F: FiniteField, R: Rng + ?Sized>(
    e: &Curve<F>,
    c: &Subgroup<F>,
    m: usize,
    rng: &mut R,
) -> Result<Vec<Point<F>>> {
    let mut out: Vec<Point<F>> = Vec::with_capacity(m);
    let budget = 64 * m + 256;
    for _ in 0..budget {
        if out.len() == m {
            return Ok(out);
        }
        let x = e.one().random_like(rng);
        let ys = e.lift_x(&x, rng);
        if ys.is_empty() {
            continue;
        }
        let pt = Point::Affine(x, ys[rng.gen_range(0..ys.len())].clone());
        if c.contains(&pt) || out.contains(&pt) {
            continue;
        }
        out.push(pt);
    }
    Err(Error::InvalidInput(format!(
        "field of order {} is too small to sample {m} points off C; use an extension of higher degree",
        e.one().order()
    )))
}

/// `M x N` matrix of `s_{jP}(X_i) = 1 / D_C(x(X_i - jP))`.
pub fn coherent_section_values<F: Field>(e: &Curve<F>, c: &Subgroup<F>, samples: &[Point<F>]) -> Result<Vec<Vec<F>>> {
    samples
        .iter()
        .map(|x| {
            c.points
                .iter()
                .map(|p| {
                    let d = e.sub(x, p);
                    let Point::Affine(dx, _) = &d else {
                        return Err(Error::InvalidInput("sample point lies in C".into()));
                    };
                    c.kernel
                        .eval(dx)
                        .inv()
                        .ok_or_else(|| Error::InvalidInput("sample point lies in C".into()))
                })
                .collect()
        })
        .collect()
}

/// `g_m(X_i)` for every sample row and `m = 0..N`.
pub fn character_values<F: Field>(values: &[Vec<F>], omega: &F) -> Vec<Vec<F>> {
    let n = values.first().map_or(0, |r| r.len());
    let powers: Vec<F> = (0..n as u64).map(|k| omega.pow_u64(k)).collect();
    values
        .iter()
        .map(|row| {
            (0..n)
                .map(|m| {
                    let zero = omega.zero_like();
                    row.iter()
                        .enumerate()
                        .fold(zero, |acc, (j, v)| acc + &(powers[(m * j) % n].clone() * v))
                })
                .collect()
        })
        .collect()
}

/// A primitive `N`-th root of unity in the field of `like`.
pub fn primitive_root_of_unity<F: FiniteField, R: Rng + ?Sized>(like: &F, n: u64, rng: &mut R) -> Result<F> {
    let q1 = like.order() - BigUint::one();
    if (&q1 % n) != BigUint::from(0u32) {
        return Err(Error::InvalidInput(format!("no primitive {n}-th root of unity in a field of order {}", like.order())));
    }
    let cofactor = &q1 / n;
    let primes: Vec<u64> = small_factor(n).into_iter().map(|(p, _)| p).collect();
    loop {
        let g = like.random_like(rng);
        if g.is_zero() {
            continue;
        }
        let w = g.pow_big(&cofactor);
        if primes.iter().all(|&l| !w.pow_u64(n / l).is_one()) {
            return Ok(w);
        }
    }
}

/// Residues `m` whose `g_m` vanishes at every sample of two independent
/// resamplings.
pub fn char_vanishing<F: FiniteField, R: Rng + ?Sized>(
    e: &Curve<F>,
    c: &Subgroup<F>,
    omega: &F,
    rng: &mut R,
) -> Result<Vec<usize>> {
    let m = c.n as usize + 4;
    let mut zero_everywhere = vec![true; c.n as usize];
    for _ in 0..2 {
        let samples = sample_points(e, c, m, rng)?;
        let g = character_values(&coherent_section_values(e, c, &samples)?, omega);
        for row in &g {
            for (k, v) in row.iter().enumerate() {
                if !v.is_zero() {
                    zero_everywhere[k] = false;
                }
            }
        }
    }
    Ok((0..c.n as usize).filter(|&k| zero_everywhere[k]).collect())
}

/// Everything computed for one `(E, C)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairAnalysis {
    pub c: usize,
    pub eval_ranks: [usize; 2],
    pub vanishing: Vec<usize>,
    pub symmetric: bool,
    pub product_constant: bool,
}

impl PairAnalysis {
    /// `|{m : g_m = 0}| = c`.
    pub fn counting_identity(&self) -> bool {
        self.vanishing.len() == self.c
    }

    /// Evaluation rank in the `O(C)` model equals the basis rank.
    pub fn models_agree(&self, n: usize) -> bool {
        self.eval_ranks.iter().all(|&r| r + self.c == n)
    }

    /// Whether `g_0` vanishes.
    pub fn trivial_character_vanishes(&self) -> bool {
        self.vanishing.first() == Some(&0)
    }

    pub fn nontrivial_pairs(&self) -> usize {
        self.vanishing.iter().filter(|&&m| m != 0).count() / 2
    }
}

/// Exact rank, evaluation ranks on two samplings, character vanishing, and
/// the symmetry and product checks. The field must contain `μ_N`.
pub fn analyze_pair<F: FiniteField, R: Rng + ?Sized>(
    e: &Curve<F>,
    c: &Subgroup<F>,
    rng: &mut R,
) -> Result<PairAnalysis> {
    let n = c.n as usize;
    let omega = primitive_root_of_unity(&e.one(), c.n, rng)?;
    let cval = rank_c(e, c)?;
    let mut eval_ranks = [0; 2];
    let mut symmetric = true;
    let mut product_constant = true;
    for slot in eval_ranks.iter_mut() {
        let samples = sample_points(e, c, n + 4, rng)?;
        let vals = coherent_section_values(e, c, &samples)?;
        *slot = matrix_rank(&vals)?;
        let negs: Vec<Point<F>> = samples.iter().map(|x| e.neg(x)).collect();
        let g = character_values(&vals, &omega);
        let gneg = character_values(&coherent_section_values(e, c, &negs)?, &omega);
        for (row, nrow) in g.iter().zip(&gneg) {
            for m in 0..n {
                if nrow[m] != row[(n - m) % n] {
                    symmetric = false;
                }
            }
        }
        let products: Vec<F> = vals.iter().map(|r| r.iter().fold(e.one(), |a, v| a * v)).collect();
        if products.windows(2).any(|w| w[0] != w[1]) {
            product_constant = false;
        }
    }
    let vanishing = char_vanishing(e, c, &omega, rng)?;
    Ok(PairAnalysis { c: cval, eval_ranks, vanishing, symmetric, product_constant })
}
