use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::poly::IntPoly;
use crate::sequences::lucas;

/// Coefficients `c_0..=c_m` of a palindromic polynomial `p` of degree `2m`
/// written as `p(x) = x^m (c_0 + sum_{k>=1} c_k (x^k + x^-k))`.
///
/// Substituting `x + 1/x = y` turns each `x^k + x^-k` into `L_k(y)`, so the
/// same coefficients read in the Lucas basis give a polynomial of degree `m`
/// in `y`. The central coefficient `c_0` is carried as a plain constant, not
/// as a multiple of `L_0 = 2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PalindromeFold {
    lucas_coeffs: Vec<BigInt>,
}

impl PalindromeFold {
    pub fn from_lucas_coeffs(lucas_coeffs: Vec<BigInt>) -> Self {
        Self { lucas_coeffs }
    }

    pub fn lucas_coeffs(&self) -> &[BigInt] {
        &self.lucas_coeffs
    }

    /// Half the degree of the folded polynomial.
    pub fn half_degree(&self) -> usize {
        self.lucas_coeffs.len().saturating_sub(1)
    }

    /// Rebuilds the palindromic polynomial.
    pub fn unfold(&self) -> IntPoly {
        let m = self.half_degree();
        let mut coeffs = vec![BigInt::zero(); 2 * m + 1];
        for (k, c) in self.lucas_coeffs.iter().enumerate() {
            if k == 0 {
                coeffs[m] = c.clone();
            } else {
                coeffs[m + k] = c.clone();
                coeffs[m - k] = c.clone();
            }
        }
        IntPoly::new(coeffs)
    }

    /// `c_0 + sum_{k>=1} c_k L_k(x)`.
    pub fn lucas_expand(&self) -> IntPoly {
        let mut acc = IntPoly::zero();
        for (k, c) in self.lucas_coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let term = if k == 0 {
                IntPoly::constant(c.clone())
            } else {
                lucas(k as u64).scale(c)
            };
            acc = acc.add(&term);
        }
        acc
    }
}

/// Folds a nonzero palindromic polynomial of even degree.
pub fn palindrome_fold(p: &IntPoly) -> Result<PalindromeFold> {
    let degree = p
        .degree()
        .ok_or_else(|| Error::InvalidArgument("cannot fold the zero polynomial".into()))?;
    if degree % 2 == 1 {
        return Err(Error::OddDegree(p.clone()));
    }
    if !p.is_palindromic() {
        return Err(Error::NotPalindromic(p.clone()));
    }
    let m = degree / 2;
    Ok(PalindromeFold {
        lucas_coeffs: p.coeffs()[m..].to_vec(),
    })
}
