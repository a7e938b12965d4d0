//! Dense univariate polynomials over arbitrary-precision integers.
//!
//! Coefficients are stored in ascending order of degree and kept normalized:
//! the last stored coefficient is never zero, and the zero polynomial is the
//! empty vector.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::rational::ExactRational;

/// Default operand length below which `mul` uses the schoolbook product.
pub const DEFAULT_MUL_THRESHOLD: usize = 32;

/// Environment variable overriding [`DEFAULT_MUL_THRESHOLD`].
pub const MUL_THRESHOLD_ENV: &str = "SPREADPOLY_MUL_THRESHOLD";

static MUL_THRESHOLD: AtomicUsize = AtomicUsize::new(0);
static ENV_THRESHOLD: OnceLock<usize> = OnceLock::new();

/// Current dispatch threshold for [`IntPoly::mul`].
pub fn mul_threshold() -> usize {
    match MUL_THRESHOLD.load(Ordering::Relaxed) {
        0 => *ENV_THRESHOLD.get_or_init(|| {
            std::env::var(MUL_THRESHOLD_ENV)
                .ok()
                .and_then(|v| v.trim().parse::<usize>().ok())
                .filter(|&t| t >= 2)
                .unwrap_or(DEFAULT_MUL_THRESHOLD)
        }),
        t => t,
    }
}

/// Overrides the dispatch threshold process-wide. Values below 2 are clamped
/// to 2. The choice never changes results, only which kernel computes them.
pub fn set_mul_threshold(threshold: usize) {
    MUL_THRESHOLD.store(threshold.max(2), Ordering::Relaxed);
}

#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        trim(&mut coeffs);
        Self { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    /// The polynomial `x`.
    pub fn x() -> Self {
        Self::monomial(BigInt::one(), 1)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::new(vec![c.into()])
    }

    /// `c * x^k`
    pub fn monomial(c: impl Into<BigInt>, k: usize) -> Self {
        let c = c.into();
        if c.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = c;
        Self { coeffs }
    }

    /// `a + b*x`
    pub fn linear(a: impl Into<BigInt>, b: impl Into<BigInt>) -> Self {
        Self::new(vec![a.into(), b.into()])
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    /// Coefficient of `x^k`, zero beyond the degree.
    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    /// Degree, or `None` for the zero polynomial (degree minus infinity).
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading_coeff(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading_coeff().is_some_and(|c| c.is_one())
    }

    pub fn is_palindromic(&self) -> bool {
        let n = self.coeffs.len();
        (0..n / 2).all(|k| self.coeffs[k] == self.coeffs[n - 1 - k])
    }

    /// Sum of the absolute values of the coefficients.
    pub fn abs_coeff_sum(&self) -> BigInt {
        self.coeffs.iter().map(|c| c.abs()).sum()
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let (long, short) = if self.coeffs.len() >= other.coeffs.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut coeffs = long.coeffs.clone();
        for (a, b) in coeffs.iter_mut().zip(&short.coeffs) {
            *a += b;
        }
        Self::new(coeffs)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let len = self.coeffs.len().max(other.coeffs.len());
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(len, BigInt::zero());
        for (a, b) in coeffs.iter_mut().zip(&other.coeffs) {
            *a -= b;
        }
        Self::new(coeffs)
    }

    pub fn neg(&self) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    /// Exact product. Dispatches to the schoolbook kernel when either operand
    /// is shorter than [`mul_threshold`], and to Karatsuba splitting otherwise.
    pub fn mul(&self, other: &Self) -> Self {
        self.mul_divide_and_conquer(other, mul_threshold())
    }

    pub fn mul_schoolbook(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        Self::new(schoolbook(&self.coeffs, &other.coeffs))
    }

    /// Karatsuba product with an explicit base-case threshold (at least 2).
    pub fn mul_divide_and_conquer(&self, other: &Self, threshold: usize) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        Self::new(karatsuba(&self.coeffs, &other.coeffs, threshold.max(2)))
    }

    pub fn square(&self) -> Self {
        self.mul(self)
    }

    pub fn pow(&self, mut exp: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&base);
            }
            exp >>= 1;
            if exp > 0 {
                base = base.square();
            }
        }
        acc
    }

    /// Returns `r` with `divisor * r == self`.
    ///
    /// Long division is carried out step by step; a quotient coefficient that
    /// is not an integer means the rational quotient is not in Z[x], which is
    /// reported as `NotDivisible` just like a nonzero remainder.
    pub fn div_exact(&self, divisor: &Self) -> Result<Self> {
        let lead = divisor.leading_coeff().ok_or(Error::DivideByZero)?;
        if self.is_zero() {
            return Ok(Self::zero());
        }
        let not_divisible = || Error::NotDivisible {
            dividend: self.clone(),
            divisor: divisor.clone(),
        };
        let dd = divisor.coeffs.len() - 1;
        if self.coeffs.len() - 1 < dd {
            return Err(not_divisible());
        }
        let mut rem = self.coeffs.clone();
        let qlen = rem.len() - dd;
        let mut quot = vec![BigInt::zero(); qlen];
        let monic = lead.is_one();
        for i in (0..qlen).rev() {
            let top = &rem[i + dd];
            if top.is_zero() {
                continue;
            }
            let q = if monic {
                top.clone()
            } else {
                let (q, r) = top.div_rem(lead);
                if !r.is_zero() {
                    return Err(not_divisible());
                }
                q
            };
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[i + j] -= &q * d;
            }
            quot[i] = q;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return Err(not_divisible());
        }
        Ok(Self::new(quot))
    }

    /// `self(inner(x))` by Horner accumulation.
    pub fn compose(&self, inner: &Self) -> Self {
        let mut acc = Self::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(inner);
            acc = acc.add(&Self::constant(c.clone()));
        }
        acc
    }

    /// `self(x^2)`
    pub fn substitute_square(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigInt::zero(); 2 * self.coeffs.len() - 1];
        for (k, c) in self.coeffs.iter().enumerate() {
            coeffs[2 * k] = c.clone();
        }
        Self { coeffs }
    }

    /// Inverse of [`substitute_square`](Self::substitute_square): maps
    /// `q(x^2)` to `q(x)`. Every odd-degree coefficient must be zero.
    pub fn desubstitute_square(&self) -> Result<Self> {
        if self.coeffs.iter().skip(1).step_by(2).any(|c| !c.is_zero()) {
            return Err(Error::OddTermPresent(self.clone()));
        }
        Ok(Self::new(self.coeffs.iter().step_by(2).cloned().collect()))
    }

    pub fn eval_int(&self, at: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * at + c)
    }

    pub fn eval_rational(&self, at: &ExactRational) -> ExactRational {
        let at = at.as_ratio();
        let value = self
            .coeffs
            .iter()
            .rev()
            .fold(num_rational::BigRational::zero(), |acc, c| {
                acc * at + num_rational::BigRational::from_integer(c.clone())
            });
        ExactRational::from_ratio(value)
    }

    /// Floating-point Horner evaluation. No exactness guarantee.
    pub fn eval_float(&self, at: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * at + c.to_f64().unwrap_or(f64::NAN))
    }

    /// Coefficients as decimal strings, the machine rendering.
    pub fn to_decimal_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(|c| c.to_string()).collect()
    }

    pub fn from_decimal_strings<S: AsRef<str>>(strings: &[S]) -> Result<Self> {
        strings
            .iter()
            .map(|s| {
                s.as_ref().trim().parse::<BigInt>().map_err(|e| {
                    Error::InvalidArgument(format!("bad coefficient {:?}: {e}", s.as_ref()))
                })
            })
            .collect::<Result<Vec<_>>>()
            .map(Self::new)
    }
}

fn trim(coeffs: &mut Vec<BigInt>) {
    while coeffs.last().is_some_and(|c| c.is_zero()) {
        coeffs.pop();
    }
}

fn schoolbook(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn add_into(dst: &mut [BigInt], src: &[BigInt]) {
    for (d, s) in dst.iter_mut().zip(src) {
        *d += s;
    }
}

fn sum_slices(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let (long, short) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    let mut out = long.to_vec();
    add_into(&mut out, short);
    out
}

/// Product of two nonempty coefficient slices; the result has length
/// `a.len() + b.len() - 1` and may carry high zeros.
fn karatsuba(a: &[BigInt], b: &[BigInt], threshold: usize) -> Vec<BigInt> {
    if a.len().min(b.len()) < threshold {
        return schoolbook(a, b);
    }
    let half = a.len().max(b.len()).div_ceil(2);
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];

    // Unbalanced operands: split only the longer one.
    if a.len() <= half || b.len() <= half {
        let (short, long) = if a.len() <= half { (a, b) } else { (b, a) };
        let (lo, hi) = long.split_at(half);
        add_into(&mut out, &karatsuba(short, lo, threshold));
        add_into(&mut out[half..], &karatsuba(short, hi, threshold));
        return out;
    }

    let (a0, a1) = a.split_at(half);
    let (b0, b1) = b.split_at(half);
    let low = karatsuba(a0, b0, threshold);
    let high = karatsuba(a1, b1, threshold);
    let mut mid = karatsuba(&sum_slices(a0, a1), &sum_slices(b0, b1), threshold);
    for (m, l) in mid.iter_mut().zip(&low) {
        *m -= l;
    }
    for (m, h) in mid.iter_mut().zip(&high) {
        *m -= h;
    }
    add_into(&mut out, &low);
    add_into(&mut out[2 * half..], &high);
    // mid may be one longer than the product window allows, but that top
    // entry is zero after the subtractions.
    let room = out.len() - half;
    add_into(&mut out[half..], &mid[..mid.len().min(room)]);
    out
}

impl fmt::Display for IntPoly {
    /// Ascending-degree rendering with explicit signs, e.g. `9*x - 6*x^2 + x^3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let magnitude = c.abs();
            match (first, c.is_negative()) {
                (true, true) => f.write_str("-")?,
                (true, false) => {}
                (false, true) => f.write_str(" - ")?,
                (false, false) => f.write_str(" + ")?,
            }
            first = false;
            match k {
                0 => write!(f, "{magnitude}")?,
                _ => {
                    if !magnitude.is_one() {
                        write!(f, "{magnitude}*")?;
                    }
                    if k == 1 {
                        f.write_str("x")?;
                    } else {
                        write!(f, "x^{k}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPoly({self})")
    }
}

impl Serialize for IntPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.coeffs.iter().map(|c| c.to_string()))
    }
}

impl<'de> Deserialize<'de> for IntPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let strings = Vec::<String>::deserialize(deserializer)?;
        IntPoly::from_decimal_strings(&strings).map_err(serde::de::Error::custom)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait<&IntPoly> for &IntPoly {
            type Output = IntPoly;
            fn $method(self, rhs: &IntPoly) -> IntPoly {
                IntPoly::$method(self, rhs)
            }
        }
        impl $trait<IntPoly> for IntPoly {
            type Output = IntPoly;
            fn $method(self, rhs: IntPoly) -> IntPoly {
                IntPoly::$method(&self, &rhs)
            }
        }
        impl $trait<&IntPoly> for IntPoly {
            type Output = IntPoly;
            fn $method(self, rhs: &IntPoly) -> IntPoly {
                IntPoly::$method(&self, rhs)
            }
        }
        impl $trait<IntPoly> for &IntPoly {
            type Output = IntPoly;
            fn $method(self, rhs: IntPoly) -> IntPoly {
                IntPoly::$method(self, &rhs)
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl Neg for IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        IntPoly::neg(&self)
    }
}

impl Neg for &IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        IntPoly::neg(self)
    }
}
