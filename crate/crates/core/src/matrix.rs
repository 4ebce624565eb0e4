//! Dense matrices over a single scalar field.
//!
//! Entries are stored in column-major order, so `vec` and `unvec` are
//! reinterpretations of the same buffer. All operations are pure; a matrix
//! never changes after construction.

use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::{FieldElement, FieldKind};

/// Hard cap on `rows * cols`; this is a desk-scale tool and `m^k`
/// explodes quickly.
pub const MAX_ENTRIES: usize = 1 << 24;

#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    field: FieldKind,
    /// Column-major: entry (r, c) lives at `r + c * rows`.
    entries: Vec<FieldElement>,
}

fn check_dims(rows: usize, cols: usize) -> Result<()> {
    if rows == 0 || cols == 0 {
        return Err(Error::EmptyMatrix);
    }
    match rows.checked_mul(cols) {
        Some(n) if n <= MAX_ENTRIES => Ok(()),
        _ => Err(Error::SizeCap { rows, cols }),
    }
}

impl Matrix {
    /// Builds a matrix entry by entry from a closure over (row, col).
    pub fn from_fn(
        rows: usize,
        cols: usize,
        field: FieldKind,
        mut f: impl FnMut(usize, usize) -> FieldElement,
    ) -> Result<Self> {
        check_dims(rows, cols)?;
        let mut entries = Vec::with_capacity(rows * cols);
        for c in 0..cols {
            for r in 0..rows {
                let e = f(r, c);
                if e.kind() != field {
                    return Err(Error::FieldMismatch {
                        left: field,
                        right: e.kind(),
                    });
                }
                entries.push(e);
            }
        }
        Ok(Matrix {
            rows,
            cols,
            field,
            entries,
        })
    }

    pub fn from_rows(field: FieldKind, rows: Vec<Vec<FieldElement>>) -> Result<Self> {
        let m = rows.len();
        let n = rows.first().map_or(0, Vec::len);
        check_dims(m, n)?;
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::EmptyMatrix);
        }
        Matrix::from_fn(m, n, field, |r, c| rows[r][c].clone())
    }

    /// Convenience constructor embedding small integers into `field`.
    pub fn from_i64_rows(field: FieldKind, rows: &[&[i64]]) -> Result<Self> {
        let m = rows.len();
        let n = rows.first().map_or(0, |r| r.len());
        check_dims(m, n)?;
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::EmptyMatrix);
        }
        Matrix::from_fn(m, n, field, |r, c| FieldElement::from_i64(field, rows[r][c]))
    }

    pub fn zeros(rows: usize, cols: usize, field: FieldKind) -> Result<Self> {
        Matrix::from_fn(rows, cols, field, |_, _| FieldElement::zero(field))
    }

    pub fn identity(n: usize, field: FieldKind) -> Result<Self> {
        Matrix::from_fn(n, n, field, |r, c| {
            FieldElement::from_i64(field, (r == c) as i64)
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn field(&self) -> FieldKind {
        self.field
    }

    pub fn get(&self, r: usize, c: usize) -> &FieldElement {
        assert!(r < self.rows && c < self.cols, "matrix index out of bounds");
        &self.entries[r + c * self.rows]
    }

    pub fn set(&mut self, r: usize, c: usize, v: FieldElement) {
        assert!(r < self.rows && c < self.cols, "matrix index out of bounds");
        assert!(v.kind() == self.field, "entry field mismatch");
        self.entries[r + c * self.rows] = v;
    }

    /// Entries in column-major order.
    pub fn entries(&self) -> &[FieldElement] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(FieldElement::is_zero)
    }

    fn check_same_field(&self, other: &Matrix) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch {
                left: self.field,
                right: other.field,
            });
        }
        Ok(())
    }

    fn check_same_dims(&self, other: &Matrix) -> Result<()> {
        if self.dims() != other.dims() {
            return Err(Error::DimensionMismatch {
                expected_rows: self.rows,
                expected_cols: self.cols,
                rows: other.rows,
                cols: other.cols,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        self.check_same_field(other)?;
        self.check_same_dims(other)?;
        Matrix::from_fn(self.rows, self.cols, self.field, |r, c| {
            self.get(r, c) + other.get(r, c)
        })
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix> {
        self.check_same_field(other)?;
        self.check_same_dims(other)?;
        Matrix::from_fn(self.rows, self.cols, self.field, |r, c| {
            self.get(r, c) - other.get(r, c)
        })
    }

    pub fn neg(&self) -> Matrix {
        Matrix::from_fn(self.rows, self.cols, self.field, |r, c| -self.get(r, c))
            .expect("dims already validated")
    }

    pub fn scalar_mul(&self, s: &FieldElement) -> Result<Matrix> {
        if s.kind() != self.field {
            return Err(Error::FieldMismatch {
                left: self.field,
                right: s.kind(),
            });
        }
        Matrix::from_fn(self.rows, self.cols, self.field, |r, c| s * self.get(r, c))
    }

    pub fn matmul(&self, other: &Matrix) -> Result<Matrix> {
        self.check_same_field(other)?;
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                expected_rows: self.cols,
                expected_cols: other.cols,
                rows: other.rows,
                cols: other.cols,
            });
        }
        Matrix::from_fn(self.rows, other.cols, self.field, |r, c| {
            let mut acc = FieldElement::zero(self.field);
            for t in 0..self.cols {
                acc = &acc + &(self.get(r, t) * other.get(t, c));
            }
            acc
        })
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, self.field, |r, c| {
            self.get(c, r).clone()
        })
        .expect("dims already validated")
    }

    pub fn trace(&self) -> Result<FieldElement> {
        if self.rows != self.cols {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let mut acc = FieldElement::zero(self.field);
        for i in 0..self.rows {
            acc = &acc + self.get(i, i);
        }
        Ok(acc)
    }

    /// Kronecker product: `(A ⊗ B)[i*s + p, j*t + q] = A[i,j] * B[p,q]`
    /// for `B` of size `s x t` (0-based indices).
    pub fn kron(&self, other: &Matrix) -> Result<Matrix> {
        self.check_same_field(other)?;
        let (s, t) = other.dims();
        check_dims(
            self.rows.checked_mul(s).ok_or(Error::SizeCap {
                rows: usize::MAX,
                cols: usize::MAX,
            })?,
            self.cols.checked_mul(t).ok_or(Error::SizeCap {
                rows: usize::MAX,
                cols: usize::MAX,
            })?,
        )?;
        Matrix::from_fn(self.rows * s, self.cols * t, self.field, |r, c| {
            self.get(r / s, c / t) * other.get(r % s, c % t)
        })
    }

    /// `k`-fold Kronecker power, computed as a left fold of `kron`.
    pub fn kron_power(&self, k: u32) -> Result<Matrix> {
        if k == 0 {
            return Err(Error::OrderZero);
        }
        let mut acc = self.clone();
        for _ in 1..k {
            acc = acc.kron(self)?;
        }
        Ok(acc)
    }

    /// Column-stacking: `vec(A)[i + j*m] = A[i,j]` as an `mn x 1` matrix.
    pub fn vec(&self) -> Matrix {
        Matrix {
            rows: self.rows * self.cols,
            cols: 1,
            field: self.field,
            entries: self.entries.clone(),
        }
    }

    /// Inverse of `vec`: reshapes an `mn x 1` column into `m x n`.
    pub fn unvec(&self, rows: usize, cols: usize) -> Result<Matrix> {
        check_dims(rows, cols)?;
        if self.cols != 1 || self.rows != rows * cols {
            return Err(Error::DimensionMismatch {
                expected_rows: rows * cols,
                expected_cols: 1,
                rows: self.rows,
                cols: self.cols,
            });
        }
        Ok(Matrix {
            rows,
            cols,
            field: self.field,
            entries: self.entries.clone(),
        })
    }

    /// Largest entry magnitude; `None` for exact fields.
    pub fn max_abs(&self) -> Option<f64> {
        self.entries
            .iter()
            .map(|e| e.abs_value())
            .try_fold(0.0f64, |acc, v| v.map(|v| acc.max(v)))
    }

    /// Entrywise comparison scaled by this matrix:
    /// `max |self - other| <= tol * max(1, max_abs(self))`.
    ///
    /// Only meaningful for floating fields; exact fields compare exactly.
    pub fn approx_eq(&self, other: &Matrix, tol: f64) -> bool {
        if self.field != other.field || self.dims() != other.dims() {
            return false;
        }
        if self.field.is_exact() {
            return self == other;
        }
        let scale = self.max_abs().expect("floating field").max(1.0);
        self.entries
            .iter()
            .zip(&other.entries)
            .all(|(a, b)| (a - b).abs_value().expect("floating field") <= tol * scale)
    }

    /// Field-appropriate equality: exact fields compare exactly, floating
    /// fields within `tol` (see [`Matrix::approx_eq`]).
    pub fn eq_with_tol(&self, other: &Matrix, tol: f64) -> bool {
        if self.field.is_exact() {
            self == other
        } else {
            self.approx_eq(other, tol)
        }
    }

    /// Widens a real matrix to a complex one; complex passes through.
    pub fn to_complex(&self) -> Result<Matrix> {
        match self.field {
            FieldKind::FloatComplex => Ok(self.clone()),
            FieldKind::FloatReal => {
                Matrix::from_fn(self.rows, self.cols, FieldKind::FloatComplex, |r, c| {
                    let z = self.get(r, c).to_complex64().expect("real entry");
                    FieldElement::Complex(z)
                })
            }
            from => Err(Error::UnsupportedConversion {
                from,
                to: FieldKind::FloatComplex,
            }),
        }
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.get(r, c))?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}
