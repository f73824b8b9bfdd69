use super::field::Field;
use crate::error::{Error, Result};

/// Rank by Gaussian elimination. Pivots are the first nonzero entry scanning
/// columns left to right, so the elimination order is deterministic.
pub fn matrix_rank<F: Field>(rows: &[Vec<F>]) -> Result<usize> {
    let Some(first) = rows.first() else {
        return Ok(0);
    };
    let ncols = first.len();
    if rows.iter().any(|r| r.len() != ncols) {
        return Err(Error::DimensionMismatch("rows of differing length".into()));
    }
    let mut m: Vec<Vec<F>> = rows.to_vec();
    let mut rank = 0;
    for col in 0..ncols {
        let Some(piv) = (rank..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, piv);
        let inv = m[rank][col].inv().expect("pivot is nonzero");
        for r in rank + 1..m.len() {
            if m[r][col].is_zero() {
                continue;
            }
            let factor = m[r][col].clone() * &inv;
            for c in col..ncols {
                let t = factor.clone() * &m[rank][c];
                m[r][c] = m[r][c].clone() - &t;
            }
        }
        rank += 1;
        if rank == m.len() {
            break;
        }
    }
    Ok(rank)
}

/// One solution of `A x = b` (free variables set to zero), or `None` if the
/// system is inconsistent.
pub fn solve_linear<F: Field>(a: &[Vec<F>], b: &[F]) -> Result<Option<Vec<F>>> {
    if a.len() != b.len() {
        return Err(Error::DimensionMismatch("right-hand side length".into()));
    }
    let Some(first) = a.first() else {
        return Ok(Some(Vec::new()));
    };
    let ncols = first.len();
    if a.iter().any(|r| r.len() != ncols) {
        return Err(Error::DimensionMismatch("rows of differing length".into()));
    }
    let zero = b[0].zero_like();
    let mut m: Vec<Vec<F>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let mut pivots = Vec::new();
    let mut rank = 0;
    for col in 0..ncols {
        let Some(piv) = (rank..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, piv);
        let inv = m[rank][col].inv().unwrap();
        for c in col..=ncols {
            m[rank][c] = m[rank][c].clone() * &inv;
        }
        for r in 0..m.len() {
            if r == rank || m[r][col].is_zero() {
                continue;
            }
            let factor = m[r][col].clone();
            for c in col..=ncols {
                let t = factor.clone() * &m[rank][c];
                m[r][c] = m[r][c].clone() - &t;
            }
        }
        pivots.push(col);
        rank += 1;
        if rank == m.len() {
            break;
        }
    }
    if m[rank..].iter().any(|r| !r[ncols].is_zero()) {
        return Ok(None);
    }
    let mut x = vec![zero; ncols];
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = m[r][ncols].clone();
    }
    Ok(Some(x))
}
