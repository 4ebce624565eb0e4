//! Rank computation, symmetry tests, and rank-one factorization.
//!
//! Exact fields use Gaussian elimination with exact pivots. Floating
//! fields count singular values above `tol * sigma_1`; the singular values
//! come from a one-sided Jacobi iteration, which handles real and complex
//! matrices through one code path.

use num::complex::Complex64;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::FieldElement;

/// Outcome of rank analysis. Factors are present exactly when
/// `rank <= 1` and the matrix is nonzero, and satisfy `M = u v^T`.
#[derive(Debug, Clone, PartialEq)]
pub struct RankOneFactorization {
    pub rank: usize,
    pub factors: Option<RankOneFactors>,
}

/// Column vectors with `M = u v^T`; `u` is normalized so that its first
/// significant entry equals one and `v` carries the scale.
#[derive(Debug, Clone, PartialEq)]
pub struct RankOneFactors {
    pub u: Matrix,
    pub v: Matrix,
}

/// Rank of `mat`. `tol` is ignored for exact fields.
pub fn rank(mat: &Matrix, tol: f64) -> usize {
    if mat.field().is_exact() {
        exact_rank(mat)
    } else {
        numerical_rank(mat, tol)
    }
}

fn exact_rank(mat: &Matrix) -> usize {
    let (rows, cols) = mat.dims();
    let mut work: Vec<Vec<FieldElement>> = (0..rows)
        .map(|r| (0..cols).map(|c| mat.get(r, c).clone()).collect())
        .collect();
    let mut rank = 0;
    for col in 0..cols {
        let Some(pivot_row) = (rank..rows).find(|&r| !work[r][col].is_zero()) else {
            continue;
        };
        work.swap(rank, pivot_row);
        let pivot_row = work[rank].clone();
        for row in work.iter_mut().skip(rank + 1) {
            if row[col].is_zero() {
                continue;
            }
            let factor = row[col].div(&pivot_row[col]).expect("nonzero pivot");
            for (entry, pv) in row.iter_mut().zip(&pivot_row).skip(col) {
                *entry = &*entry - &(&factor * pv);
            }
        }
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

fn numerical_rank(mat: &Matrix, tol: f64) -> usize {
    let sv = singular_values(mat);
    let sigma1 = sv.first().copied().unwrap_or(0.0);
    if sigma1 == 0.0 {
        return 0;
    }
    sv.iter().filter(|&&s| s > tol * sigma1).count()
}

/// Singular values of a floating matrix, sorted in descending order,
/// by one-sided (Hestenes) Jacobi on the columns.
pub(crate) fn singular_values(mat: &Matrix) -> Vec<f64> {
    let (rows, cols) = mat.dims();
    // Work on the version with at least as many rows as columns;
    // conjugate transposition preserves singular values.
    let (rows, cols, at) = if rows >= cols {
        (rows, cols, false)
    } else {
        (cols, rows, true)
    };
    let mut col_major: Vec<Complex64> = Vec::with_capacity(rows * cols);
    for c in 0..cols {
        for r in 0..rows {
            let e = if at { mat.get(c, r).conj() } else { mat.get(r, c).clone() };
            col_major.push(e.to_complex64().expect("floating field"));
        }
    }
    const EPS: f64 = 1e-14;
    const MAX_SWEEPS: usize = 60;
    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..cols {
            for q in p + 1..cols {
                let mut alpha = 0.0;
                let mut beta = 0.0;
                let mut gamma = Complex64::new(0.0, 0.0);
                for i in 0..rows {
                    let ap = col_major[p * rows + i];
                    let aq = col_major[q * rows + i];
                    alpha += ap.norm_sqr();
                    beta += aq.norm_sqr();
                    gamma += ap.conj() * aq;
                }
                let g = gamma.norm();
                if g <= EPS * (alpha * beta).sqrt() || g == 0.0 {
                    continue;
                }
                rotated = true;
                // Phase-align column q, then apply the real Jacobi rotation
                // that diagonalizes [[alpha, g], [g, beta]].
                let phase = gamma / g;
                let zeta = (beta - alpha) / (2.0 * g);
                let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                for i in 0..rows {
                    let ap = col_major[p * rows + i];
                    let aq = col_major[q * rows + i] * phase.conj();
                    col_major[p * rows + i] = ap * c - aq * s;
                    col_major[q * rows + i] = ap * s + aq * c;
                }
            }
        }
        if !rotated {
            break;
        }
    }

    let mut sv: Vec<f64> = (0..cols)
        .map(|j| {
            (0..rows)
                .map(|i| col_major[j * rows + i].norm_sqr())
                .sum::<f64>()
                .sqrt()
        })
        .collect();
    sv.sort_by(|a, b| b.partial_cmp(a).expect("finite singular values"));
    sv
}

/// Whether `mat` equals its (plain, non-conjugate) transpose.
pub fn is_symmetric(mat: &Matrix, tol: f64) -> Result<bool> {
    let (rows, cols) = mat.dims();
    if rows != cols {
        return Err(Error::NotSquare { rows, cols });
    }
    if mat.field().is_exact() {
        for r in 0..rows {
            for c in r + 1..cols {
                if mat.get(r, c) != mat.get(c, r) {
                    return Ok(false);
                }
            }
        }
        return Ok(true);
    }
    let scale = mat.max_abs().expect("floating field").max(1.0);
    for r in 0..rows {
        for c in r + 1..cols {
            let diff = (mat.get(r, c) - mat.get(c, r))
                .abs_value()
                .expect("floating field");
            if diff > tol * scale {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Index of the pivot entry used for factorization and normalization:
/// exact fields take the first nonzero entry in row-major order, floating
/// fields the first entry of largest magnitude.
fn pivot_position(mat: &Matrix) -> Option<(usize, usize)> {
    let (rows, cols) = mat.dims();
    if mat.field().is_exact() {
        for r in 0..rows {
            for c in 0..cols {
                if !mat.get(r, c).is_zero() {
                    return Some((r, c));
                }
            }
        }
        None
    } else {
        let mut best = None;
        let mut best_abs = 0.0;
        for r in 0..rows {
            for c in 0..cols {
                let a = mat.get(r, c).abs_value().expect("floating field");
                if a > best_abs {
                    best_abs = a;
                    best = Some((r, c));
                }
            }
        }
        best
    }
}

/// First significant entry of a column vector: nonzero for exact fields,
/// magnitude above `tol * max` for floating fields.
pub(crate) fn first_significant(v: &Matrix, tol: f64) -> Option<usize> {
    if v.field().is_exact() {
        (0..v.rows()).find(|&i| !v.get(i, 0).is_zero())
    } else {
        let scale = v.max_abs().expect("floating field");
        if scale == 0.0 {
            return None;
        }
        (0..v.rows()).find(|&i| v.get(i, 0).abs_value().expect("floating field") > tol * scale)
    }
}

/// Rank analysis plus, for rank <= 1, the outer-product factorization.
///
/// A rank above one is a normal outcome, not an error. Factors are built
/// from the pivot cross `u = M[:,j*] / M[i*,j*]`, `v = M[i*,:]^T`, then
/// rescaled so the first significant entry of `u` is exactly one; the
/// same input always yields the same factors.
pub fn rank_one_factor(mat: &Matrix, tol: f64) -> RankOneFactorization {
    let r = rank(mat, tol);
    if r != 1 {
        return RankOneFactorization {
            rank: r,
            factors: None,
        };
    }
    let (pi, pj) = pivot_position(mat).expect("rank-one matrix is nonzero");
    let pivot = mat.get(pi, pj).clone();
    let field = mat.field();
    let u0 = Matrix::from_fn(mat.rows(), 1, field, |i, _| {
        mat.get(i, pj).div(&pivot).expect("nonzero pivot")
    })
    .expect("column vector");
    let v0 = Matrix::from_fn(mat.cols(), 1, field, |j, _| mat.get(pi, j).clone())
        .expect("column vector");
    // Renormalize: first significant entry of u becomes one, v absorbs it.
    let ip = first_significant(&u0, tol).expect("nonzero u");
    let alpha = u0.get(ip, 0).clone();
    let u = u0.scalar_mul(&alpha.inv().expect("significant entry")).expect("same field");
    let v = v0.scalar_mul(&alpha).expect("same field");
    RankOneFactorization {
        rank: 1,
        factors: Some(RankOneFactors { u, v }),
    }
}
