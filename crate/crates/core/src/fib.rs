//! Fibonacci numbers split into primitive parts `p_d = |phi_d(5)|`.

use num_bigint::BigInt;
use num_traits::{One, Signed};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::factor::{phi_min, psi};
use crate::sequences::{divisors, fibonacci, zpread};

fn five() -> BigInt {
    BigInt::from(5)
}

/// `p_1 = 1`, `p_n = |phi_n(5)|` for `n >= 2`.
pub fn primitive_part(n: u64) -> Result<BigInt> {
    match n {
        0 => Err(Error::InvalidArgument("primitive part index must be >= 1".into())),
        1 => Ok(BigInt::one()),
        _ => Ok(phi_min(n)?.eval_int(&five()).abs()),
    }
}

/// The signed value listed in the classical `phi_n(5)` table: `phi_n(5)` for
/// `n <= 2` and `psi_n(2 - 5) = (-1)^(phi(n)/2) phi_n(5)` for `n >= 3`.
///
/// The monic `phi_n` has all its roots in `(0, 4)`, so `phi_n(5)` itself is
/// always positive; the table's signs come from the unnormalized reflection.
pub fn tabulated_phi_at_5(n: u64) -> Result<BigInt> {
    match n {
        0 => Err(Error::InvalidArgument("index must be >= 1".into())),
        1 | 2 => Ok(phi_min(n)?.eval_int(&five())),
        _ => Ok(psi(n)?.eval_int(&BigInt::from(-3))),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimitivePartTable {
    pub n: u64,
    /// `(d, p_d)` for every divisor `d` of `n`, ascending.
    pub parts: Vec<(u64, BigInt)>,
    pub reconstructed: BigInt,
}

impl Serialize for PrimitivePartTable {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Part {
            d: u64,
            p: String,
        }
        #[derive(Serialize)]
        struct Wire {
            n: u64,
            parts: Vec<Part>,
            reconstructed: String,
        }
        Wire {
            n: self.n,
            parts: self
                .parts
                .iter()
                .map(|(d, p)| Part {
                    d: *d,
                    p: p.to_string(),
                })
                .collect(),
            reconstructed: self.reconstructed.to_string(),
        }
        .serialize(serializer)
    }
}

/// `F_n = prod_{d | n} p_d`, verified against the Fibonacci recursion.
pub fn fib_factorization(n: u64) -> Result<PrimitivePartTable> {
    let parts = divisors(n)
        .into_iter()
        .map(|d| Ok((d, primitive_part(d)?)))
        .collect::<Result<Vec<_>>>()?;
    if parts.is_empty() {
        return Err(Error::InvalidArgument("index must be >= 1".into()));
    }
    let reconstructed: BigInt = parts.iter().map(|(_, p)| p).product();
    let expected = fibonacci(n);
    if reconstructed != expected {
        return Err(Error::VerificationFailure {
            n,
            detail: format!("product of primitive parts is {reconstructed}, F_{n} = {expected}"),
        });
    }
    Ok(PrimitivePartTable {
        n,
        parts,
        reconstructed,
    })
}

/// Checks `Z_n(5) = (-1)^(n-1) 5 F_n^2`.
pub fn zpread_at5_identity(n: u64) -> Result<()> {
    let left = zpread(n)?.eval_int(&five());
    let f = fibonacci(n);
    let mut right: BigInt = &f * &f * 5;
    if n % 2 == 0 {
        right = -right;
    }
    if left != right {
        return Err(Error::IdentityFailure {
            identity: "Z_n(5) = (-1)^(n-1) 5 F_n^2",
            n,
            left: left.to_string(),
            right: right.to_string(),
        });
    }
    Ok(())
}
