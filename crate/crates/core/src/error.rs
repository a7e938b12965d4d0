use thiserror::Error;

use crate::poly::IntPoly;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("division by the zero polynomial")]
    DivideByZero,

    #[error("{dividend} is not exactly divisible by {divisor}")]
    NotDivisible { dividend: IntPoly, divisor: IntPoly },

    #[error("polynomial {0} is not palindromic")]
    NotPalindromic(IntPoly),

    #[error("polynomial {0} has odd degree")]
    OddDegree(IntPoly),

    #[error("odd-degree term present in {0}, cannot substitute x^2 -> x")]
    OddTermPresent(IntPoly),

    /// An internal consistency check failed. This is a bug, not a user error.
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),

    #[error("verification failed for n = {n}: {detail}")]
    VerificationFailure { n: u64, detail: String },

    #[error("routes disagree on phi_{n}: {first_route} gives {first}, {second_route} gives {second}")]
    RouteMismatch {
        n: u64,
        first_route: String,
        first: IntPoly,
        second_route: String,
        second: IntPoly,
    },

    #[error("root check for phi_{n} failed at k = {k}: residual {residual:e} exceeds bound {bound:e}")]
    ToleranceExceeded {
        n: u64,
        k: u64,
        residual: f64,
        bound: f64,
    },

    #[error("identity {identity} failed for n = {n}: left {left}, right {right}")]
    IdentityFailure {
        identity: &'static str,
        n: u64,
        left: String,
        right: String,
    },

    #[error("index {n} exceeds the configured maximum {max}")]
    OutOfBounds { n: u64, max: u64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
