//! The classical polynomial families and a few number-theoretic helpers.
//!
//! Lucas, cyclotomic and Fibonacci values are memoized process-wide in
//! insert-only tables; a cache hit is always identical to recomputation.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::memo::Memo;
use crate::poly::IntPoly;

pub(crate) struct SequenceCache {
    lucas: Memo<IntPoly>,
    cyclotomic: Memo<IntPoly>,
    fibonacci: Memo<BigInt>,
}

fn cache() -> &'static SequenceCache {
    static CACHE: OnceLock<SequenceCache> = OnceLock::new();
    CACHE.get_or_init(|| SequenceCache {
        lucas: Memo::new(),
        cyclotomic: Memo::new(),
        fibonacci: Memo::new(),
    })
}

/// Lucas polynomial: `L_0 = 2`, `L_1 = x`, `L_n = x L_{n-1} - L_{n-2}`.
pub fn lucas(n: u64) -> IntPoly {
    let memo = &cache().lucas;
    if let Some(v) = memo.get(n) {
        return (*v).clone();
    }
    let mut prev = memo.get_or_insert_with(0, || IntPoly::constant(2));
    if n == 0 {
        return (*prev).clone();
    }
    let mut cur = memo.get_or_insert_with(1, IntPoly::x);
    for k in 2..=n {
        let next = match memo.get(k) {
            Some(v) => v,
            None => {
                let value = shift_up(&cur).sub(&prev);
                memo.insert(k, value)
            }
        };
        prev = std::mem::replace(&mut cur, next);
    }
    (*cur).clone()
}

/// `x * p`
fn shift_up(p: &IntPoly) -> IntPoly {
    if p.is_zero() {
        return IntPoly::zero();
    }
    let mut coeffs = Vec::with_capacity(p.coeffs().len() + 1);
    coeffs.push(BigInt::zero());
    coeffs.extend_from_slice(p.coeffs());
    IntPoly::new(coeffs)
}

/// The n-th cyclotomic polynomial, by exact division of `x^n - 1` by the
/// cyclotomic polynomials of the proper divisors of `n`.
pub fn cyclotomic(n: u64) -> Result<IntPoly> {
    if n == 0 {
        return Err(Error::InvalidArgument("cyclotomic index must be >= 1".into()));
    }
    cyclotomic_memo(n).map(|p| (*p).clone())
}

fn cyclotomic_memo(n: u64) -> Result<std::sync::Arc<IntPoly>> {
    cache().cyclotomic.get_or_try_insert_with(n, || {
        let mut acc = IntPoly::monomial(1, n as usize) - IntPoly::one();
        for d in divisors(n).into_iter().filter(|&d| d < n) {
            let c = cyclotomic_memo(d)?;
            acc = acc.div_exact(&c)?;
        }
        Ok(acc)
    })
}

/// Binomial coefficient by multiplicative accumulation; every partial
/// quotient is exact.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 1..=k {
        acc *= n - k + i;
        acc /= i;
    }
    acc
}

/// Zpread polynomial from the closed-form coefficients
/// `[x^k] Z_n = (-1)^(k-1) binom(n+k-1, n-k) n / k`.
pub fn zpread(n: u64) -> Result<IntPoly> {
    if n == 0 {
        return Err(Error::InvalidArgument("zpread index must be >= 1".into()));
    }
    let mut coeffs = vec![BigInt::zero(); n as usize + 1];
    for k in 1..=n {
        let numer = binomial(n + k - 1, n - k) * n;
        let (c, r) = numer.div_rem(&BigInt::from(k));
        if !r.is_zero() {
            return Err(Error::InternalInconsistency(format!(
                "zpread({n}): coefficient of x^{k} is not an integer"
            )));
        }
        coeffs[k as usize] = if k % 2 == 1 { c } else { -c };
    }
    Ok(IntPoly::new(coeffs))
}

/// `Z_n(x) = 2 - L_n(2 - x)`, an independent route to [`zpread`].
pub fn zpread_via_lucas(n: u64) -> Result<IntPoly> {
    if n == 0 {
        return Err(Error::InvalidArgument("zpread index must be >= 1".into()));
    }
    Ok(IntPoly::constant(2) - lucas(n).compose(&IntPoly::linear(2, -1)))
}

/// Monic zpread `z_n = (-1)^(n-1) Z_n`.
pub fn monic_zpread(n: u64) -> Result<IntPoly> {
    let z = zpread(n)?;
    Ok(if n % 2 == 1 { z } else { -z })
}

/// Spread polynomial `S_n(x) = Z_n(4x) / 4`, so `[x^k] S_n = 4^(k-1) [x^k] Z_n`.
pub fn spread(n: u64) -> Result<IntPoly> {
    let z = zpread(n)?;
    if !z.coeff(0).is_zero() {
        return Err(Error::InternalInconsistency(format!(
            "zpread({n}) has a nonzero constant term, spread rescale is not integral"
        )));
    }
    let mut power = BigInt::one();
    let coeffs = z
        .coeffs()
        .iter()
        .enumerate()
        .map(|(k, c)| {
            if k == 0 {
                return BigInt::zero();
            }
            if k > 1 {
                power *= 4;
            }
            c * &power
        })
        .collect();
    Ok(IntPoly::new(coeffs))
}

/// Fibonacci numbers, `F_0 = 0`, `F_1 = 1`.
pub fn fibonacci(n: u64) -> BigInt {
    let memo = &cache().fibonacci;
    if let Some(v) = memo.get(n) {
        return (*v).clone();
    }
    let mut prev = memo.get_or_insert_with(0, BigInt::zero);
    if n == 0 {
        return (*prev).clone();
    }
    let mut cur = memo.get_or_insert_with(1, BigInt::one);
    for k in 2..=n {
        let next = match memo.get(k) {
            Some(v) => v,
            None => memo.insert(k, &*cur + &*prev),
        };
        prev = std::mem::replace(&mut cur, next);
    }
    (*cur).clone()
}

/// Prime factorization by trial division, ascending `(prime, exponent)`.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Euler's totient. `totient(0)` is defined as 0.
pub fn totient(n: u64) -> u64 {
    if n == 0 {
        return 0;
    }
    factorize(n)
        .into_iter()
        .fold(n, |acc, (p, _)| acc / p * (p - 1))
}

/// All positive divisors of `n`, ascending. Empty for `n = 0`.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d != n / d {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64s(c)
    }

    #[test]
    fn lucas_table() {
        assert_eq!(lucas(0), p(&[2]));
        assert_eq!(lucas(1), p(&[0, 1]));
        assert_eq!(lucas(4), p(&[2, 0, -4, 0, 1]));
        assert_eq!(lucas(6), p(&[-2, 0, 9, 0, -6, 0, 1]));
        for n in 1..30 {
            assert_eq!(lucas(n).degree(), Some(n as usize));
        }
    }

    #[test]
    fn cyclotomic_examples() {
        assert_eq!(cyclotomic(1).unwrap(), p(&[-1, 1]));
        assert_eq!(cyclotomic(6).unwrap(), p(&[1, -1, 1]));
        assert_eq!(cyclotomic(8).unwrap(), p(&[1, 0, 0, 0, 1]));
        assert!(cyclotomic(0).is_err());
    }

    #[test]
    fn zpread_examples() {
        assert_eq!(zpread(1).unwrap(), p(&[0, 1]));
        assert_eq!(zpread(3).unwrap(), p(&[0, 9, -6, 1]));
        assert_eq!(zpread(5).unwrap(), p(&[0, 25, -50, 35, -10, 1]));
        assert_eq!(zpread_via_lucas(1).unwrap(), p(&[0, 1]));
        assert_eq!(zpread_via_lucas(2).unwrap(), p(&[0, 4, -1]));
        assert_eq!(zpread_via_lucas(7).unwrap(), zpread(7).unwrap());
        assert!(zpread(0).is_err());
    }

    #[test]
    fn monic_and_spread() {
        assert_eq!(monic_zpread(1).unwrap(), p(&[0, 1]));
        assert_eq!(monic_zpread(2).unwrap(), p(&[0, -4, 1]));
        assert_eq!(monic_zpread(4).unwrap(), p(&[0, -16, 20, -8, 1]));
        assert_eq!(spread(1).unwrap(), p(&[0, 1]));
        assert_eq!(spread(2).unwrap(), p(&[0, 4, -4]));
        assert_eq!(spread(3).unwrap(), p(&[0, 9, -24, 16]));
        // S_2(sin^2 t) = sin^2 2t
        let t = 0.3f64;
        let s = spread(2).unwrap().eval_float(t.sin().powi(2));
        assert!((s - (2.0 * t).sin().powi(2)).abs() < 1e-12);
    }

    #[test]
    fn fibonacci_examples() {
        assert_eq!(fibonacci(0), BigInt::zero());
        assert_eq!(fibonacci(8), BigInt::from(21));
        let f100 = fibonacci(100);
        assert_eq!(f100, fibonacci(99) + fibonacci(98));
        assert_eq!(f100.gcd(&fibonacci(60)), fibonacci(20));
    }

    #[test]
    fn totient_and_divisors() {
        assert_eq!(totient(1), 1);
        // enumeration oracle
        for n in 1..200u64 {
            let count = (1..=n).filter(|k| k.gcd(&n) == 1).count() as u64;
            assert_eq!(totient(n), count, "n = {n}");
        }
        assert_eq!(totient(12), 4);
        assert_eq!(totient(9), 6);
        assert_eq!(divisors(1), vec![1]);
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(divisors(36), vec![1, 2, 3, 4, 6, 9, 12, 18, 36]);
        assert_eq!(divisors(12).iter().map(|&d| totient(d)).sum::<u64>(), 12);
    }

    #[test]
    fn binomial_matches_pascal() {
        let mut row = vec![BigInt::one()];
        for n in 1..40u64 {
            let mut next = vec![BigInt::one(); n as usize + 1];
            for k in 1..n as usize {
                next[k] = &row[k - 1] + &row[k];
            }
            row = next;
            for k in 0..=n {
                assert_eq!(binomial(n, k), row[k as usize]);
            }
        }
        assert_eq!(binomial(3, 5), BigInt::zero());
    }
}
