//! Support code for this workspace's test suites: a small seeded
//! generator and reference oracles that recompute results from first
//! principles (definitions and exhaustive search) rather than through the
//! production code paths they are used to check.

use crate::matrix::Matrix;
use crate::rearrange::Shape;
use crate::scalar::{FieldElement, FieldKind};

/// Deterministic 64-bit generator (SplitMix64). Good enough for test
/// data; never used by library code.
#[derive(Debug, Clone)]
pub struct TestRng(u64);

impl TestRng {
    pub fn new(seed: u64) -> Self {
        TestRng(seed)
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    /// Uniform value in `0..bound`.
    pub fn below(&mut self, bound: u64) -> u64 {
        assert!(bound > 0);
        self.next_u64() % bound
    }

    /// Uniform integer in `lo..=hi`.
    pub fn int_in(&mut self, lo: i64, hi: i64) -> i64 {
        lo + self.below((hi - lo + 1) as u64) as i64
    }

    /// Uniform float in `[-1, 1)`.
    pub fn unit(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 / (1u64 << 53) as f64 * 2.0 - 1.0
    }
}

/// A random scalar with small entries (exact kinds draw integers in
/// `-4..=4`, or residues; floating kinds draw from `[-2, 2)`).
pub fn random_element(kind: FieldKind, rng: &mut TestRng) -> FieldElement {
    match kind {
        FieldKind::FloatReal => FieldElement::real(2.0 * rng.unit()),
        FieldKind::FloatComplex => FieldElement::complex(2.0 * rng.unit(), 2.0 * rng.unit()),
        FieldKind::Rational => FieldElement::from_i64(kind, rng.int_in(-4, 4)),
        FieldKind::PrimeField(p) => FieldElement::from_i64(kind, rng.below(p.get()) as i64),
    }
}

pub fn random_matrix(kind: FieldKind, rows: usize, cols: usize, rng: &mut TestRng) -> Matrix {
    Matrix::from_fn(rows, cols, kind, |_, _| random_element(kind, rng)).expect("test dims")
}

pub fn random_nonzero_matrix(
    kind: FieldKind,
    rows: usize,
    cols: usize,
    rng: &mut TestRng,
) -> Matrix {
    loop {
        let m = random_matrix(kind, rows, cols, rng);
        if !m.is_zero() {
            return m;
        }
    }
}

/// Reference implementation of the `j`-th rearrangement straight from its
/// definition: enumerate all elementary tensors of unit matrices, locate
/// where each one lands via an actual Kronecker product, and accumulate
/// `coeff * vec(E_j) vec(⊗_{i≠j} E_i)^T` by linearity. Independent of the
/// digit bijection used by the production operator.
pub fn rearrange_factor_oracle(mat: &Matrix, shape: Shape, j: usize) -> Matrix {
    let (m, n, k) = (shape.m(), shape.n(), shape.k() as usize);
    let field = mat.field();
    let unit = |idx: usize| {
        // vec index `idx` of an m x n unit matrix: entry (idx % m, idx / m).
        Matrix::from_fn(m, n, field, |r, c| {
            FieldElement::from_i64(field, (r == idx % m && c == idx / m) as i64)
        })
        .expect("unit matrix")
    };
    let (rows, cols) = shape.rearranged_dims();
    let mut out = Matrix::zeros(rows, cols, field).expect("oracle dims");
    let mn = m * n;
    let tuples = mn.pow(k as u32);
    for t in 0..tuples {
        // Decode the tuple of per-factor vec indices.
        let mut digits = Vec::with_capacity(k);
        let mut rest = t;
        for _ in 0..k {
            digits.push(rest % mn);
            rest /= mn;
        }
        let factors: Vec<Matrix> = digits.iter().map(|&d| unit(d)).collect();
        // Where does this elementary tensor sit inside `mat`?
        let mut full = factors[0].clone();
        for f in &factors[1..] {
            full = full.kron(f).expect("oracle kron");
        }
        let (mut fr, mut fc) = (0, 0);
        'scan: for r in 0..full.rows() {
            for c in 0..full.cols() {
                if !full.get(r, c).is_zero() {
                    fr = r;
                    fc = c;
                    break 'scan;
                }
            }
        }
        let coeff = mat.get(fr, fc).clone();
        if coeff.is_zero() {
            continue;
        }
        // Column position: vec index of the product of the other factors.
        let mut others: Option<Matrix> = None;
        for (i, f) in factors.iter().enumerate() {
            if i + 1 == j {
                continue;
            }
            others = Some(match others {
                None => f.clone(),
                Some(acc) => acc.kron(f).expect("oracle kron"),
            });
        }
        let gamma = match others {
            None => 0,
            Some(rest) => {
                let v = rest.vec();
                (0..v.rows())
                    .find(|&i| !v.get(i, 0).is_zero())
                    .expect("unit product is nonzero")
            }
        };
        let rho = digits[j - 1];
        let updated = out.get(rho, gamma) + &coeff;
        out.set(rho, gamma, updated);
    }
    out
}

/// Enumerates every `rows x cols` matrix over GF(p).
pub fn all_gf_matrices(p: u32, rows: usize, cols: usize) -> Vec<Matrix> {
    let kind = FieldKind::prime_field(p).expect("prime p");
    let total = (p as u64).pow((rows * cols) as u32);
    (0..total)
        .map(|code| {
            let mut rest = code;
            Matrix::from_fn(rows, cols, kind, |_, _| {
                let digit = rest % p as u64;
                rest /= p as u64;
                FieldElement::from_i64(kind, digit as i64)
            })
            .expect("enumeration dims")
        })
        .collect()
}

/// Exhaustive k-th-root search over GF(p): the first candidate `A` with
/// `⊗^k A = mat`, if any.
pub fn brute_force_kth_root(mat: &Matrix, p: u32, rows: usize, cols: usize, k: u32) -> Option<Matrix> {
    all_gf_matrices(p, rows, cols)
        .into_iter()
        .find(|a| a.kron_power(k).map(|pw| &pw == mat).unwrap_or(false))
}

/// Rank by the largest nonvanishing minor, with determinants by Laplace
/// expansion. Exponential; only for small exact matrices.
pub fn rank_by_minors(mat: &Matrix) -> usize {
    let (rows, cols) = mat.dims();
    let max_r = rows.min(cols);
    for r in (1..=max_r).rev() {
        for row_set in subsets(rows, r) {
            for col_set in subsets(cols, r) {
                let sub = Matrix::from_fn(r, r, mat.field(), |i, j| {
                    mat.get(row_set[i], col_set[j]).clone()
                })
                .expect("submatrix dims");
                if !determinant(&sub).is_zero() {
                    return r;
                }
            }
        }
    }
    0
}

fn subsets(n: usize, r: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(r);
    fn go(start: usize, n: usize, r: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if current.len() == r {
            out.push(current.clone());
            return;
        }
        for i in start..n {
            current.push(i);
            go(i + 1, n, r, current, out);
            current.pop();
        }
    }
    go(0, n, r, &mut current, &mut out);
    out
}

fn determinant(mat: &Matrix) -> FieldElement {
    let n = mat.rows();
    let field = mat.field();
    if n == 1 {
        return mat.get(0, 0).clone();
    }
    let mut acc = FieldElement::zero(field);
    for c in 0..n {
        if mat.get(0, c).is_zero() {
            continue;
        }
        let minor = Matrix::from_fn(n - 1, n - 1, field, |i, j| {
            mat.get(i + 1, if j < c { j } else { j + 1 }).clone()
        })
        .expect("minor dims");
        let term = mat.get(0, c) * &determinant(&minor);
        acc = if c % 2 == 0 { &acc + &term } else { &acc - &term };
    }
    acc
}
