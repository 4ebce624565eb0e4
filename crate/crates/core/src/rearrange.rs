//! Rearrangement operators for Kronecker-structured matrices.
//!
//! A matrix built from `k` factors of size `m x n` has `m^k` rows and `n^k`
//! columns. Each row index decomposes into `k` base-`m` digits (factor 1
//! most significant) and each column index into `k` base-`n` digits. The
//! `j`-th rearrangement moves the `j`-th digit pair to a `vec` position of
//! its own and packs the remaining digit pairs, in original factor order,
//! into the `vec` position of their Kronecker product. On elementary
//! tensors this sends `A_1 ⊗ ... ⊗ A_k` to
//! `vec(A_j) vec(A_1 ⊗ ... ⊗ A_{j-1} ⊗ A_{j+1} ⊗ ... ⊗ A_k)^T`,
//! and extends linearly; every operator here is a linear bijection on
//! entry positions, so no arithmetic beyond copying (or summing, for the
//! sum variant) is performed.

use crate::error::{Error, Result};
use crate::matrix::{Matrix, MAX_ENTRIES};

/// Factor geometry: `k` Kronecker factors of size `m x n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Shape {
    m: usize,
    n: usize,
    k: u32,
}

impl Shape {
    pub fn new(m: usize, n: usize, k: u32) -> Result<Self> {
        if m == 0 || n == 0 {
            return Err(Error::EmptyMatrix);
        }
        if k == 0 {
            return Err(Error::OrderZero);
        }
        let shape = Shape { m, n, k };
        // m^k * n^k must stay under the entry cap.
        let rows = checked_pow(m, k).ok_or(Error::SizeCap { rows: m, cols: n })?;
        let cols = checked_pow(n, k).ok_or(Error::SizeCap { rows: m, cols: n })?;
        match rows.checked_mul(cols) {
            Some(total) if total <= MAX_ENTRIES => Ok(shape),
            _ => Err(Error::SizeCap { rows, cols }),
        }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    /// Row count of a matrix with this shape: `m^k`.
    pub fn rows(&self) -> usize {
        self.m.pow(self.k)
    }

    /// Column count of a matrix with this shape: `n^k`.
    pub fn cols(&self) -> usize {
        self.n.pow(self.k)
    }

    /// Dimensions of a rearranged matrix: `mn x (mn)^(k-1)`.
    pub fn rearranged_dims(&self) -> (usize, usize) {
        (self.m * self.n, (self.m * self.n).pow(self.k - 1))
    }

    fn check_matrix(&self, mat: &Matrix) -> Result<()> {
        if mat.dims() != (self.rows(), self.cols()) {
            return Err(Error::DimensionMismatch {
                expected_rows: self.rows(),
                expected_cols: self.cols(),
                rows: mat.rows(),
                cols: mat.cols(),
            });
        }
        Ok(())
    }
}

fn checked_pow(base: usize, exp: u32) -> Option<usize> {
    let mut acc = 1usize;
    for _ in 0..exp {
        acc = acc.checked_mul(base)?;
    }
    Some(acc)
}

/// The entry-position bijection behind the `j`-th rearrangement.
///
/// All indices are 0-based. A position `(row, col)` of the big matrix maps
/// to `(rho, gamma)` in the rearranged matrix: `rho = r_j + c_j * m` is the
/// `vec` index of the `j`-th digit pair, and `gamma = rrow + rcol * m^(k-1)`
/// where `rrow`/`rcol` recompose the remaining digits in original factor
/// order over bases `m`/`n`.
#[derive(Debug, Clone)]
pub struct FactorIndexMap {
    shape: Shape,
    j: usize,
    m_pows: Vec<usize>,
    n_pows: Vec<usize>,
}

impl FactorIndexMap {
    pub fn new(shape: Shape, j: usize) -> Result<Self> {
        let k = shape.k();
        if j == 0 || j > k as usize {
            return Err(Error::FactorOutOfRange { j, k });
        }
        let pows = |b: usize| (0..=k).map(|e| b.pow(e)).collect();
        Ok(FactorIndexMap {
            shape,
            j,
            m_pows: pows(shape.m()),
            n_pows: pows(shape.n()),
        })
    }

    pub fn shape(&self) -> Shape {
        self.shape
    }

    pub fn factor(&self) -> usize {
        self.j
    }

    /// Maps a position of the `m^k x n^k` matrix to its rearranged position.
    pub fn to_rearranged(&self, row: usize, col: usize) -> (usize, usize) {
        let (m, n, k) = (self.shape.m, self.shape.n, self.shape.k as usize);
        let mut rj = 0;
        let mut cj = 0;
        let mut rrow = 0;
        let mut rcol = 0;
        for i in 1..=k {
            let rd = row / self.m_pows[k - i] % m;
            let cd = col / self.n_pows[k - i] % n;
            if i == self.j {
                rj = rd;
                cj = cd;
            } else {
                rrow = rrow * m + rd;
                rcol = rcol * n + cd;
            }
        }
        (rj + cj * m, rrow + rcol * self.m_pows[k - 1])
    }

    /// Inverse of [`FactorIndexMap::to_rearranged`].
    pub fn from_rearranged(&self, rho: usize, gamma: usize) -> (usize, usize) {
        let (m, n, k) = (self.shape.m, self.shape.n, self.shape.k as usize);
        let rj = rho % m;
        let cj = rho / m;
        let rrow = gamma % self.m_pows[k - 1];
        let rcol = gamma / self.m_pows[k - 1];
        let mut row = 0;
        let mut col = 0;
        let mut pos = 0;
        for i in 1..=k {
            let (rd, cd) = if i == self.j {
                (rj, cj)
            } else {
                pos += 1;
                (
                    rrow / self.m_pows[k - 1 - pos] % m,
                    rcol / self.n_pows[k - 1 - pos] % n,
                )
            };
            row = row * m + rd;
            col = col * n + cd;
        }
        (row, col)
    }
}

/// The rearrangement `R` for `k = 2`: sends `A ⊗ B` to `vec(A) vec(B)^T`.
///
/// `mat` must be `m^2 x n^2`; the result is `mn x mn`.
pub fn rearrange(mat: &Matrix, m: usize, n: usize) -> Result<Matrix> {
    rearrange_factor(mat, Shape::new(m, n, 2)?, 1)
}

/// The `j`-th rearrangement: sends `A_1 ⊗ ... ⊗ A_k` to
/// `vec(A_j) vec(⊗_{i≠j} A_i)^T`.
pub fn rearrange_factor(mat: &Matrix, shape: Shape, j: usize) -> Result<Matrix> {
    shape.check_matrix(mat)?;
    let map = FactorIndexMap::new(shape, j)?;
    let (rows, cols) = shape.rearranged_dims();
    Matrix::from_fn(rows, cols, mat.field(), |rho, gamma| {
        let (r, c) = map.from_rearranged(rho, gamma);
        mat.get(r, c).clone()
    })
}

/// Sum of the `k` factor rearrangements.
pub fn rearrange_sum(mat: &Matrix, shape: Shape) -> Result<Matrix> {
    shape.check_matrix(mat)?;
    let mut acc = rearrange_factor(mat, shape, 1)?;
    for j in 2..=shape.k() as usize {
        acc = acc.add(&rearrange_factor(mat, shape, j)?)?;
    }
    Ok(acc)
}

/// Inverse of the `j`-th rearrangement: the unique `M` with
/// `rearrange_factor(M, shape, j) = mat`.
pub fn inverse_rearrange_factor(mat: &Matrix, shape: Shape, j: usize) -> Result<Matrix> {
    let (rows, cols) = shape.rearranged_dims();
    if mat.dims() != (rows, cols) {
        return Err(Error::DimensionMismatch {
            expected_rows: rows,
            expected_cols: cols,
            rows: mat.rows(),
            cols: mat.cols(),
        });
    }
    let map = FactorIndexMap::new(shape, j)?;
    Matrix::from_fn(shape.rows(), shape.cols(), mat.field(), |r, c| {
        let (rho, gamma) = map.to_rearranged(r, c);
        mat.get(rho, gamma).clone()
    })
}
