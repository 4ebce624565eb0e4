//! Kronecker square-root and k-th-root decisions and extraction.
//!
//! The square-root path follows the symmetric rank-one characterization of
//! the rearranged matrix and, over the reals, the sign of its trace. The
//! general path factors the first rearrangement, reconstructs the candidate
//! power, matches the remaining scalar, and recovers the scalar's k-th
//! root in the field. Rank-one rearrangement is necessary but not
//! sufficient for k >= 3, so every extraction verifies the reconstructed
//! power entrywise before reporting success.

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::rank::{first_significant, is_symmetric, rank, rank_one_factor};
use crate::rearrange::{rearrange, rearrange_factor, rearrange_sum, Shape};
use crate::scalar::{char_divides, kth_root_scalar, FieldElement, FieldKind};

/// How an extraction attempt ended.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RootStatus {
    /// A root exists in the matrix's own field and is attached.
    Found,
    /// No root in the real field, but the attached complex root works.
    FoundComplexOnly,
    /// The input is not a k-th Kronecker power of any matrix.
    NotAKroneckerPower,
    /// The input is a scaled power, but the scale has no k-th root in
    /// this field (and no complex fallback applies).
    NoRootInField,
    /// The necessity filter was requested but the field characteristic
    /// divides k, so the summed rearrangement carries no information.
    CharacteristicObstruction,
    /// The zero matrix; its unique root is zero.
    ZeroMatrix,
}

/// The set of scalars that map one root to another.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScalarAmbiguity {
    /// Real or rational roots of even order come in pairs `{A, -A}`.
    SignPair,
    /// Roots are unique up to multiplication by a k-th root of unity.
    KthRootsOfUnity(u32),
    /// The root is unique.
    Unique,
}

/// Result of a root extraction.
#[derive(Debug, Clone, PartialEq)]
pub struct RootOutcome {
    pub status: RootStatus,
    /// Present iff status is `Found`, `FoundComplexOnly` or `ZeroMatrix`.
    pub root: Option<Matrix>,
    /// Present whenever a root is.
    pub ambiguity: Option<ScalarAmbiguity>,
}

impl RootOutcome {
    fn refusal(status: RootStatus) -> Self {
        RootOutcome {
            status,
            root: None,
            ambiguity: None,
        }
    }

    pub fn is_found(&self) -> bool {
        matches!(self.status, RootStatus::Found | RootStatus::ZeroMatrix)
    }
}

/// The three quantities the square-root characterization conditions on,
/// computed from `R(M)`.
#[derive(Debug, Clone, PartialEq)]
pub struct SquareRootCertificate {
    pub rearranged: Matrix,
    pub symmetric: bool,
    pub rank: usize,
    pub trace: FieldElement,
}

/// Rank report for the summed rearrangement.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SumRankReport {
    pub rank: usize,
    pub rank_one: bool,
}

fn ambiguity_for(kind: FieldKind, k: u32) -> ScalarAmbiguity {
    if k == 1 {
        return ScalarAmbiguity::Unique;
    }
    match kind {
        FieldKind::FloatComplex | FieldKind::PrimeField(_) => {
            ScalarAmbiguity::KthRootsOfUnity(k)
        }
        FieldKind::FloatReal | FieldKind::Rational => {
            if k.is_multiple_of(2) {
                ScalarAmbiguity::SignPair
            } else {
                ScalarAmbiguity::Unique
            }
        }
    }
}

/// Computes `R(M)` together with its symmetry, rank and trace. Pure
/// report; makes no decision.
pub fn check_square(mat: &Matrix, m: usize, n: usize, tol: f64) -> Result<SquareRootCertificate> {
    let rearranged = rearrange(mat, m, n)?;
    let symmetric = is_symmetric(&rearranged, tol)?;
    let rk = rank(&rearranged, tol);
    let trace = rearranged.trace()?;
    Ok(SquareRootCertificate {
        rearranged,
        symmetric,
        rank: rk,
        trace,
    })
}

/// Extracts a Kronecker square root of an `m^2 x n^2` matrix, if one
/// exists in the matrix's own field.
///
/// Over the reals a negative trace means only a complex root exists; it
/// is computed and returned with status `FoundComplexOnly`. The
/// reconstructed square is always verified against `mat` before `Found`
/// is reported.
pub fn square_root(mat: &Matrix, m: usize, n: usize, tol: f64) -> Result<RootOutcome> {
    let shape = Shape::new(m, n, 2)?;
    if mat.dims() != (shape.rows(), shape.cols()) {
        return Err(Error::DimensionMismatch {
            expected_rows: shape.rows(),
            expected_cols: shape.cols(),
            rows: mat.rows(),
            cols: mat.cols(),
        });
    }
    let field = mat.field();
    if mat.is_zero() {
        return Ok(RootOutcome {
            status: RootStatus::ZeroMatrix,
            root: Some(Matrix::zeros(m, n, field)?),
            ambiguity: Some(ScalarAmbiguity::Unique),
        });
    }
    let cert = check_square(mat, m, n, tol)?;
    if !cert.symmetric || cert.rank != 1 {
        return Ok(RootOutcome::refusal(RootStatus::NotAKroneckerPower));
    }
    let factors = rank_one_factor(&cert.rearranged, tol)
        .factors
        .expect("rank is one");
    // Symmetric rank one forces v = c u, so R(M) = c vec(A0) vec(A0)^T.
    let ip = first_significant(&factors.u, tol).expect("u is nonzero");
    let c = factors.v.get(ip, 0).div(factors.u.get(ip, 0))?;
    let a0 = factors.u.unvec(m, n)?;

    let mu = kth_root_scalar(&c, 2);
    if let Some(mu) = mu.first() {
        let root = a0.scalar_mul(mu)?;
        if verify_power(mat, &root, 2, tol)? {
            return Ok(RootOutcome {
                status: RootStatus::Found,
                root: Some(root),
                ambiguity: Some(ambiguity_for(field, 2)),
            });
        }
        return Ok(RootOutcome::refusal(RootStatus::NotAKroneckerPower));
    }
    complex_fallback(mat, &a0, &c, 2, tol)
}

/// When a real extraction fails only because the scalar has no real k-th
/// root, build the complex root instead.
fn complex_fallback(
    mat: &Matrix,
    a0: &Matrix,
    scale: &FieldElement,
    k: u32,
    tol: f64,
) -> Result<RootOutcome> {
    if mat.field() != FieldKind::FloatReal {
        return Ok(RootOutcome::refusal(RootStatus::NoRootInField));
    }
    let z = scale.to_complex64().expect("real scalar");
    let mu = kth_root_scalar(&FieldElement::Complex(z), k);
    let mu = mu.first().expect("complex roots always exist");
    let root = a0.to_complex()?.scalar_mul(mu)?;
    if verify_power(&mat.to_complex()?, &root, k, tol)? {
        Ok(RootOutcome {
            status: RootStatus::FoundComplexOnly,
            root: Some(root),
            ambiguity: Some(ambiguity_for(FieldKind::FloatComplex, k)),
        })
    } else {
        Ok(RootOutcome::refusal(RootStatus::NotAKroneckerPower))
    }
}

/// Extracts a k-th Kronecker root of an `m^k x n^k` matrix.
///
/// Route: factor the first rearrangement; rank one yields a candidate
/// factor up to scale; reconstruct its k-th power, match the scalar at a
/// reference entry, check the match everywhere, then take the scalar's
/// k-th root in the field. The entrywise check is mandatory: rank-one
/// rearrangement does not imply the power structure for k >= 3. This
/// route never needs the summed rearrangement, so it works in any
/// characteristic; see [`kth_root_with_sum_filter`] for the variant that
/// applies the necessity filter first.
pub fn kth_root(mat: &Matrix, shape: Shape, tol: f64) -> Result<RootOutcome> {
    if mat.dims() != (shape.rows(), shape.cols()) {
        return Err(Error::DimensionMismatch {
            expected_rows: shape.rows(),
            expected_cols: shape.cols(),
            rows: mat.rows(),
            cols: mat.cols(),
        });
    }
    let field = mat.field();
    let (m, n, k) = (shape.m(), shape.n(), shape.k());
    if k == 1 {
        return Ok(RootOutcome {
            status: RootStatus::Found,
            root: Some(mat.clone()),
            ambiguity: Some(ScalarAmbiguity::Unique),
        });
    }
    if mat.is_zero() {
        return Ok(RootOutcome {
            status: RootStatus::ZeroMatrix,
            root: Some(Matrix::zeros(m, n, field)?),
            ambiguity: Some(ScalarAmbiguity::Unique),
        });
    }

    let first = rearrange_factor(mat, shape, 1)?;
    let factorization = rank_one_factor(&first, tol);
    let Some(factors) = factorization.factors else {
        return Ok(RootOutcome::refusal(RootStatus::NotAKroneckerPower));
    };
    let a0 = factors.u.unvec(m, n)?;
    let power = a0.kron_power(k)?;

    // Scalar recovery at a reference entry of the reconstructed power:
    // first nonzero in row-major order for exact fields, first entry of
    // largest magnitude for floating fields (noise-robust).
    let Some((ri, rj)) = reference_entry(&power) else {
        return Ok(RootOutcome::refusal(RootStatus::NotAKroneckerPower));
    };
    let s = mat.get(ri, rj).div(power.get(ri, rj))?;
    let scaled = power.scalar_mul(&s)?;
    if !mat.eq_with_tol(&scaled, tol) {
        return Ok(RootOutcome::refusal(RootStatus::NotAKroneckerPower));
    }

    let mu = kth_root_scalar(&s, k);
    if let Some(mu) = mu.first() {
        let root = a0.scalar_mul(mu)?;
        if verify_power(mat, &root, k, tol)? {
            return Ok(RootOutcome {
                status: RootStatus::Found,
                root: Some(root),
                ambiguity: Some(ambiguity_for(field, k)),
            });
        }
        return Ok(RootOutcome::refusal(RootStatus::NotAKroneckerPower));
    }
    complex_fallback(mat, &a0, &s, k, tol)
}

fn reference_entry(power: &Matrix) -> Option<(usize, usize)> {
    let (rows, cols) = power.dims();
    if power.field().is_exact() {
        for r in 0..rows {
            for c in 0..cols {
                if !power.get(r, c).is_zero() {
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
                let a = power.get(r, c).abs_value().expect("floating field");
                if a > best_abs {
                    best_abs = a;
                    best = Some((r, c));
                }
            }
        }
        best
    }
}

/// `kth_root` preceded by the rank-one necessity filter on the summed
/// rearrangement. Requesting the filter in a field whose characteristic
/// divides k yields `CharacteristicObstruction`.
pub fn kth_root_with_sum_filter(mat: &Matrix, shape: Shape, tol: f64) -> Result<RootOutcome> {
    if char_divides(mat.field(), shape.k()) {
        return Ok(RootOutcome::refusal(RootStatus::CharacteristicObstruction));
    }
    if !mat.is_zero() {
        let report = check_sum_rank(mat, shape, tol)?;
        if !report.rank_one {
            return Ok(RootOutcome::refusal(RootStatus::NotAKroneckerPower));
        }
    }
    kth_root(mat, shape, tol)
}

/// Rank of the summed rearrangement. Errs with
/// `CharacteristicObstruction` when the characteristic divides k, since
/// the sum then degenerates on the very cone it is meant to test.
pub fn check_sum_rank(mat: &Matrix, shape: Shape, tol: f64) -> Result<SumRankReport> {
    let characteristic = mat.field().characteristic();
    if char_divides(mat.field(), shape.k()) {
        return Err(Error::CharacteristicObstruction {
            characteristic,
            k: shape.k(),
        });
    }
    let sum = rearrange_sum(mat, shape)?;
    let rk = rank(&sum, tol);
    Ok(SumRankReport {
        rank: rk,
        rank_one: rk == 1,
    })
}

/// True iff the k-fold Kronecker power of `a` equals `mat`, exactly on
/// exact fields and within `tol * max(1, max_abs(mat))` on floating ones.
pub fn verify_power(mat: &Matrix, a: &Matrix, k: u32, tol: f64) -> Result<bool> {
    if mat.field() != a.field() {
        return Err(Error::FieldMismatch {
            left: mat.field(),
            right: a.field(),
        });
    }
    let shape = Shape::new(a.rows(), a.cols(), k)?;
    if mat.dims() != (shape.rows(), shape.cols()) {
        return Err(Error::DimensionMismatch {
            expected_rows: shape.rows(),
            expected_cols: shape.cols(),
            rows: mat.rows(),
            cols: mat.cols(),
        });
    }
    let power = a.kron_power(k)?;
    Ok(mat.eq_with_tol(&power, tol))
}
