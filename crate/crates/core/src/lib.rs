//! Rearrangement operators and Kronecker root extraction.
//!
//! A matrix `M` is a k-th Kronecker root candidate when it measures
//! `m^k x n^k`; it *is* a k-th power when `M = ⊗^k A` for some `m x n`
//! matrix `A`. This crate provides:
//!
//! * dense matrices over four scalar fields (floating real and complex,
//!   exact rationals, prime fields GF(p) with p < 2^16),
//! * the rearrangement operators that send Kronecker products to outer
//!   products of `vec`'d factors — the square form `R`, the per-factor
//!   form `R^(j)` with its inverse, and their sum — as explicit entry
//!   bijections,
//! * rank-one analysis of rearranged matrices, and
//! * constructive square-root and k-th-root extraction with typed
//!   refusals (`NotAKroneckerPower`, `NoRootInField`, ...), including the
//!   trace-sign criterion for real square roots.
//!
//! Every successful extraction is verified by reconstructing the power;
//! for k >= 3 a rank-one rearrangement is necessary but not sufficient,
//! so the verification step is what makes the answers trustworthy.

pub mod error;
pub mod matrix;
pub mod rank;
pub mod rearrange;
pub mod roots;
pub mod scalar;
pub mod testing;

pub use error::{Error, Result};
pub use matrix::{Matrix, MAX_ENTRIES};
pub use rank::{is_symmetric, rank, rank_one_factor, RankOneFactorization, RankOneFactors};
pub use rearrange::{
    inverse_rearrange_factor, rearrange, rearrange_factor, rearrange_sum, FactorIndexMap, Shape,
};
pub use roots::{
    check_square, check_sum_rank, kth_root, kth_root_with_sum_filter, square_root, verify_power,
    RootOutcome, RootStatus, ScalarAmbiguity, SquareRootCertificate, SumRankReport,
};
pub use scalar::{
    char_divides, kth_root_scalar, FieldElement, FieldKind, PrimeModulus, PrimeResidue,
    DEFAULT_TOL,
};
