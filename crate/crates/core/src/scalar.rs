//! Scalar arithmetic over the four supported field kinds.
//!
//! Exact kinds (rational, prime field) satisfy the field axioms exactly.
//! Floating kinds (real, complex) satisfy them up to roundoff; every
//! tolerance-taking operation in this crate interprets `tol` relative to
//! `max(1, |reference|)`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num::bigint::BigInt;
use num::complex::Complex64;
use num::rational::BigRational;
use num::{Signed, Zero};

use crate::error::{Error, Result};

/// Default relative tolerance for floating-point comparisons.
pub const DEFAULT_TOL: f64 = 1e-10;

/// A prime modulus in `2..2^16`, validated at construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PrimeModulus(u16);

impl PrimeModulus {
    pub fn new(p: u32) -> Result<Self> {
        if !(2..=u16::MAX as u32).contains(&p) {
            return Err(Error::ModulusOutOfRange(p));
        }
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(PrimeModulus(p as u16))
    }

    pub fn get(self) -> u64 {
        self.0 as u64
    }
}

fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u32;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// One of the four supported scalar fields.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FieldKind {
    FloatReal,
    FloatComplex,
    Rational,
    PrimeField(PrimeModulus),
}

impl FieldKind {
    /// Checked constructor for `PrimeField`.
    pub fn prime_field(p: u32) -> Result<Self> {
        Ok(FieldKind::PrimeField(PrimeModulus::new(p)?))
    }

    /// Smallest `p` with `p * 1 = 0`, or 0 when there is none.
    pub fn characteristic(self) -> u32 {
        match self {
            FieldKind::PrimeField(p) => p.get() as u32,
            _ => 0,
        }
    }

    /// Whether arithmetic in this field is exact.
    pub fn is_exact(self) -> bool {
        matches!(self, FieldKind::Rational | FieldKind::PrimeField(_))
    }
}

impl fmt::Display for FieldKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldKind::FloatReal => write!(f, "real"),
            FieldKind::FloatComplex => write!(f, "complex"),
            FieldKind::Rational => write!(f, "rational"),
            FieldKind::PrimeField(p) => write!(f, "gf({})", p.get()),
        }
    }
}

/// True iff the field characteristic is positive and divides `k`.
pub fn char_divides(kind: FieldKind, k: u32) -> bool {
    assert!(k >= 1, "k must be positive");
    let p = kind.characteristic();
    p > 0 && k.is_multiple_of(p)
}

/// A residue in `[0, p)` for a validated prime `p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeResidue {
    value: u16,
    modulus: PrimeModulus,
}

impl PrimeResidue {
    pub fn new(value: u64, modulus: PrimeModulus) -> Self {
        PrimeResidue {
            value: (value % modulus.get()) as u16,
            modulus,
        }
    }

    pub fn value(self) -> u64 {
        self.value as u64
    }

    pub fn modulus(self) -> PrimeModulus {
        self.modulus
    }
}

fn pow_mod(base: u64, mut exp: u64, p: u64) -> u64 {
    let mut base = base % p;
    let mut acc = 1u64;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

/// A scalar belonging to one of the four field kinds.
///
/// Binary operators require both operands to be of the same kind; mixing
/// kinds is a programming error and panics. Matrix-level entry points
/// validate fields up front so this cannot be reached from the CLI.
#[derive(Debug, Clone, PartialEq)]
pub enum FieldElement {
    Real(f64),
    Complex(Complex64),
    Rational(BigRational),
    Prime(PrimeResidue),
}

impl FieldElement {
    pub fn real(x: f64) -> Self {
        FieldElement::Real(x)
    }

    pub fn complex(re: f64, im: f64) -> Self {
        FieldElement::Complex(Complex64::new(re, im))
    }

    pub fn rational(r: BigRational) -> Self {
        FieldElement::Rational(r)
    }

    pub fn prime(value: u64, modulus: PrimeModulus) -> Self {
        FieldElement::Prime(PrimeResidue::new(value, modulus))
    }

    pub fn zero(kind: FieldKind) -> Self {
        Self::from_i64(kind, 0)
    }

    pub fn one(kind: FieldKind) -> Self {
        Self::from_i64(kind, 1)
    }

    /// Embeds a small integer into the given field.
    pub fn from_i64(kind: FieldKind, v: i64) -> Self {
        match kind {
            FieldKind::FloatReal => FieldElement::Real(v as f64),
            FieldKind::FloatComplex => FieldElement::Complex(Complex64::new(v as f64, 0.0)),
            FieldKind::Rational => FieldElement::Rational(BigRational::from_integer(v.into())),
            FieldKind::PrimeField(p) => {
                let m = p.get() as i64;
                FieldElement::Prime(PrimeResidue::new(v.rem_euclid(m) as u64, p))
            }
        }
    }

    pub fn kind(&self) -> FieldKind {
        match self {
            FieldElement::Real(_) => FieldKind::FloatReal,
            FieldElement::Complex(_) => FieldKind::FloatComplex,
            FieldElement::Rational(_) => FieldKind::Rational,
            FieldElement::Prime(r) => FieldKind::PrimeField(r.modulus()),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            FieldElement::Real(x) => *x == 0.0,
            FieldElement::Complex(z) => z.re == 0.0 && z.im == 0.0,
            FieldElement::Rational(r) => r.is_zero(),
            FieldElement::Prime(r) => r.value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        self == &FieldElement::one(self.kind())
    }

    /// Magnitude of a floating scalar; `None` for exact kinds.
    pub fn abs_value(&self) -> Option<f64> {
        match self {
            FieldElement::Real(x) => Some(x.abs()),
            FieldElement::Complex(z) => Some(z.norm()),
            _ => None,
        }
    }

    /// Complex conjugate; the identity for non-complex scalars.
    pub fn conj(&self) -> Self {
        match self {
            FieldElement::Complex(z) => FieldElement::Complex(z.conj()),
            other => other.clone(),
        }
    }

    pub fn to_complex64(&self) -> Option<Complex64> {
        match self {
            FieldElement::Real(x) => Some(Complex64::new(*x, 0.0)),
            FieldElement::Complex(z) => Some(*z),
            _ => None,
        }
    }

    /// Multiplicative inverse.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(match self {
            FieldElement::Real(x) => FieldElement::Real(1.0 / x),
            FieldElement::Complex(z) => FieldElement::Complex(z.inv()),
            FieldElement::Rational(r) => FieldElement::Rational(r.recip()),
            FieldElement::Prime(r) => {
                let p = r.modulus().get();
                FieldElement::Prime(PrimeResidue::new(pow_mod(r.value(), p - 2, p), r.modulus()))
            }
        })
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self * &other.inv()?)
    }

    /// `self^k` by repeated squaring.
    pub fn pow(&self, k: u32) -> Self {
        if k == 0 {
            return FieldElement::one(self.kind());
        }
        let mut base = self.clone();
        let mut exp = k;
        let mut acc = FieldElement::one(self.kind());
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            exp >>= 1;
            if exp > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    fn expect_same_kind(&self, other: &Self, op: &str) {
        assert!(
            self.kind() == other.kind(),
            "scalar {op} across fields: {} vs {}",
            self.kind(),
            other.kind()
        );
    }

    /// Parses a scalar in the text syntax of `kind`.
    ///
    /// real: `-1.25`; rational: `3/4` or `7`; complex: `a+bi` / `a-bi`
    /// with both parts mandatory; gf(p): an unsigned decimal residue.
    pub fn parse(kind: FieldKind, token: &str) -> Result<Self> {
        let err = |reason: &str| Error::ParseScalar {
            token: token.to_string(),
            kind,
            reason: reason.to_string(),
        };
        match kind {
            FieldKind::FloatReal => {
                let x = f64::from_str(token).map_err(|e| err(&e.to_string()))?;
                if !x.is_finite() {
                    return Err(err("value is not finite"));
                }
                Ok(FieldElement::Real(x))
            }
            FieldKind::FloatComplex => {
                let (re, im) = split_complex(token).ok_or_else(|| {
                    err("expected `a+bi` or `a-bi` with both parts present")
                })?;
                let re = f64::from_str(re).map_err(|e| err(&e.to_string()))?;
                let im = f64::from_str(im).map_err(|e| err(&e.to_string()))?;
                if !re.is_finite() || !im.is_finite() {
                    return Err(err("value is not finite"));
                }
                Ok(FieldElement::Complex(Complex64::new(re, im)))
            }
            FieldKind::Rational => {
                if let Some((ns, ds)) = token.split_once('/') {
                    let n = BigInt::from_str(ns).map_err(|e| err(&e.to_string()))?;
                    let d = BigInt::from_str(ds).map_err(|e| err(&e.to_string()))?;
                    if d.is_zero() {
                        return Err(err("zero denominator"));
                    }
                    Ok(FieldElement::Rational(BigRational::new(n, d)))
                } else {
                    let n = BigInt::from_str(token).map_err(|e| err(&e.to_string()))?;
                    Ok(FieldElement::Rational(BigRational::from_integer(n)))
                }
            }
            FieldKind::PrimeField(p) => {
                let v = u64::from_str(token).map_err(|e| err(&e.to_string()))?;
                Ok(FieldElement::Prime(PrimeResidue::new(v, p)))
            }
        }
    }
}

/// Complex token `a+bi`/`a-bi`: locate the single sign that separates the
/// parts, skipping a leading sign and exponent signs (`1e-3+2e+5i`).
fn split_complex(token: &str) -> Option<(&str, &str)> {
    if !token.ends_with('i') {
        return None;
    }
    let body = &token[..token.len() - 1];
    let bytes = body.as_bytes();
    let mut split = None;
    for (idx, &b) in bytes.iter().enumerate().skip(1) {
        if (b == b'+' || b == b'-') && !matches!(bytes[idx - 1], b'e' | b'E') {
            if split.is_some() {
                return None;
            }
            split = Some(idx);
        }
    }
    let idx = split?;
    Some((&body[..idx], &body[idx..]))
}

fn fmt_f64(f: &mut fmt::Formatter<'_>, x: f64) -> fmt::Result {
    // -0.0 prints as 0 so that output is canonical.
    if x == 0.0 {
        write!(f, "0")
    } else {
        write!(f, "{x}")
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldElement::Real(x) => fmt_f64(f, *x),
            FieldElement::Complex(z) => {
                fmt_f64(f, z.re)?;
                if z.im < 0.0 {
                    write!(f, "-")?;
                    fmt_f64(f, -z.im)?;
                } else {
                    write!(f, "+")?;
                    fmt_f64(f, z.im.abs())?;
                }
                write!(f, "i")
            }
            FieldElement::Rational(r) => write!(f, "{r}"),
            FieldElement::Prime(r) => write!(f, "{}", r.value()),
        }
    }
}

macro_rules! field_binop {
    ($trait:ident, $method:ident, $op:tt, $opname:literal, $gf:expr) => {
        impl $trait for &FieldElement {
            type Output = FieldElement;

            fn $method(self, other: &FieldElement) -> FieldElement {
                self.expect_same_kind(other, $opname);
                match (self, other) {
                    (FieldElement::Real(a), FieldElement::Real(b)) => FieldElement::Real(a $op b),
                    (FieldElement::Complex(a), FieldElement::Complex(b)) => {
                        FieldElement::Complex(a $op b)
                    }
                    (FieldElement::Rational(a), FieldElement::Rational(b)) => {
                        FieldElement::Rational(a $op b)
                    }
                    (FieldElement::Prime(a), FieldElement::Prime(b)) => {
                        let p = a.modulus().get();
                        #[allow(clippy::redundant_closure_call)]
                        FieldElement::Prime(PrimeResidue::new(
                            ($gf)(a.value(), b.value(), p),
                            a.modulus(),
                        ))
                    }
                    _ => unreachable!(),
                }
            }
        }

        impl $trait for FieldElement {
            type Output = FieldElement;

            fn $method(self, other: FieldElement) -> FieldElement {
                (&self).$method(&other)
            }
        }
    };
}

field_binop!(Add, add, +, "addition", |a: u64, b: u64, p: u64| (a + b) % p);
field_binop!(Sub, sub, -, "subtraction", |a: u64, b: u64, p: u64| (a + p - b) % p);
field_binop!(Mul, mul, *, "multiplication", |a: u64, b: u64, p: u64| a * b % p);

impl Neg for &FieldElement {
    type Output = FieldElement;

    fn neg(self) -> FieldElement {
        match self {
            FieldElement::Real(x) => FieldElement::Real(-x),
            FieldElement::Complex(z) => FieldElement::Complex(-z),
            FieldElement::Rational(r) => FieldElement::Rational(-r),
            FieldElement::Prime(r) => {
                let p = r.modulus().get();
                FieldElement::Prime(PrimeResidue::new((p - r.value()) % p, r.modulus()))
            }
        }
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;

    fn neg(self) -> FieldElement {
        -&self
    }
}

/// All solutions of `x^k = s` in the scalar's own field.
///
/// Real scalars yield real roots only (0, 1 or 2 of them); complex scalars
/// yield all `k` roots ordered by the principal argument branch; rational
/// scalars yield roots only when they are exactly rational; prime fields
/// are searched exhaustively. An empty result signals nonexistence.
pub fn kth_root_scalar(s: &FieldElement, k: u32) -> Vec<FieldElement> {
    assert!(k >= 1, "k must be positive");
    if s.is_zero() {
        return vec![FieldElement::zero(s.kind())];
    }
    if k == 1 {
        return vec![s.clone()];
    }
    match s {
        FieldElement::Real(x) => {
            if *x > 0.0 {
                let r = x.powf(1.0 / k as f64);
                if k.is_multiple_of(2) {
                    vec![FieldElement::Real(r), FieldElement::Real(-r)]
                } else {
                    vec![FieldElement::Real(r)]
                }
            } else if !k.is_multiple_of(2) {
                vec![FieldElement::Real(-((-x).powf(1.0 / k as f64)))]
            } else {
                vec![]
            }
        }
        FieldElement::Complex(z) => {
            let r = z.norm().powf(1.0 / k as f64);
            let theta = z.arg();
            (0..k)
                .map(|j| {
                    let phi = (theta + 2.0 * std::f64::consts::PI * j as f64) / k as f64;
                    FieldElement::Complex(Complex64::from_polar(r, phi))
                })
                .collect()
        }
        FieldElement::Rational(q) => rational_kth_roots(q, k),
        FieldElement::Prime(r) => {
            let p = r.modulus().get();
            (1..p)
                .filter(|&x| pow_mod(x, k as u64, p) == r.value())
                .map(|x| FieldElement::Prime(PrimeResidue::new(x, r.modulus())))
                .collect()
        }
    }
}

fn rational_kth_roots(q: &BigRational, k: u32) -> Vec<FieldElement> {
    let num = q.numer().abs();
    let den = q.denom().clone();
    let rn = num.nth_root(k);
    let rd = den.nth_root(k);
    if rn.clone().pow(k) != num || rd.clone().pow(k) != den {
        return vec![];
    }
    let root = BigRational::new(rn, rd);
    if q.is_negative() {
        if !k.is_multiple_of(2) {
            vec![FieldElement::Rational(-root)]
        } else {
            vec![]
        }
    } else if k.is_multiple_of(2) {
        vec![
            FieldElement::Rational(root.clone()),
            FieldElement::Rational(-root),
        ]
    } else {
        vec![FieldElement::Rational(root)]
    }
}
