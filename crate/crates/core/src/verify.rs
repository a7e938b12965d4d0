//! Identity sweeps over the whole kernel.
//!
//! Each [`Suite`] is a list of independent cases. Cases run in parallel, but
//! results are collected in case order so reports are deterministic.

use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rayon::prelude::*;

use crate::factor::{
    capital_phi, compare_routes, cross_check_phi, factor_lucas_minus2, factor_zpread,
    float_root_check, integer_root, phi_by_route, phi_min, phi_pow2, psi, PhiRoute,
};
use crate::fib::{fib_factorization, tabulated_phi_at_5, zpread_at5_identity};
use crate::poly::IntPoly;
use crate::rational::ExactRational;
use crate::sequences::{cyclotomic, divisors, fibonacci, lucas, totient, zpread, zpread_via_lucas};

pub mod names {
    pub const ZPREAD_ROUTES: &str = "zpread closed form = 2 - L_n(2 - x)";
    pub const LUCAS_MULTIPLICATIVE: &str = "L_mn = L_m o L_n";
    pub const LUCAS_DOUBLE_MINUS: &str = "L_2n - 2 = (L_n - 2)(L_n + 2)";
    pub const LUCAS_DOUBLE_PLUS: &str = "L_2n + 2 = L_n^2";
    pub const ODD_SQUARE: &str = "(L_2m+1 - 2)(x - 2) = (L_m+1 - L_m)^2";
    pub const EVEN_SQUARE: &str = "(L_2m - 2)(x^2 - 4) = (L_m+1 - L_m-1)^2";
    pub const CYCLOTOMIC_COMPLETE: &str = "prod_{d|n} C_d = x^n - 1, deg C_n = totient(n)";
    pub const CYCLOTOMIC_PALINDROMIC: &str = "C_n palindromic of even degree";
    pub const ZPREAD_SQUARE_ODD: &str = "Z_m(x^2) = L_m^2 for odd m";
    pub const ZPREAD_SQUARE_EVEN: &str = "Z_2n(x^2) = 4 - L_2n^2";
    pub const ZPREAD_COMPOSITION: &str = "Z_mn = Z_m o Z_n";
    pub const ZPREAD_U_SUBSTITUTION: &str = "Z_n(-(u - 1/u)^2) = -(u^n - u^-n)^2";
    pub const ZPREAD_ZERO_CONSTANT: &str = "Z_n(0) = 0";
    pub const PSI_POWER_OF_TWO: &str = "psi_{2^(n+2)} = L_{2^n}";
    pub const PHI_POWER_OF_TWO_SQUARE: &str = "phi_{2^(n+1)}(x^2) = L_{2^n}";
    pub const ZPREAD_FACTORIZATION: &str = "Z_n = prod_{d|n} Phi_d";
    pub const LUCAS_FACTORIZATION: &str = "L_n - 2 = psi_1 psi_2^e_n prod psi_k^2";
    pub const PHI_ROUTES: &str = "phi_n routes agree";
    pub const DEGREES_MONIC: &str = "degrees and monicity of psi_n, phi_n, Phi_n";
    pub const COMMUTATION: &str = "Z_m(Phi_{2^n}) vs Phi_{2^n}(Z_m)";
    pub const PHI_EVEN_REFLECTION: &str = "Phi_2m(x) = Phi_m(4 - x) for odd m";
    pub const NO_INTEGER_ROOTS: &str = "phi_n has no integer root";
    pub const FIB_FACTORIZATION: &str = "F_n = prod_{d|n} p_d";
    pub const ZPREAD_AT_5: &str = "Z_n(5) = (-1)^(n-1) 5 F_n^2";
    pub const FIB_DIVISIBILITY: &str = "F_d | F_n for d | n";
    pub const PHI_AT_5_TABLE: &str = "signed phi_n(5) table";
    pub const FLOAT_ROOTS: &str = "phi_n(4 sin^2(k pi/n)) ~ 0";
    pub const MUL_KERNELS: &str = "schoolbook = divide-and-conquer";
    pub const DIV_ROUND_TRIP: &str = "div_exact(p q, q) = p";
}

#[derive(Clone, Debug, PartialEq)]
pub struct VerifyOptions {
    /// Upper bound on every sweep index.
    pub sweep: u64,
    /// Relative tolerance for the floating-point root check.
    pub tol: f64,
    /// Fault injection: perturb the reference `phi_n` for this `n` before
    /// route comparison.
    pub corrupt_phi: Option<u64>,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            sweep: 200,
            tol: 1e-9,
            corrupt_phi: None,
        }
    }
}

type Check = Box<dyn Fn() -> Result<(), String> + Send + Sync>;

pub struct Case {
    pub label: String,
    check: Check,
}

impl Case {
    fn new(label: impl Into<String>, check: impl Fn() -> Result<(), String> + Send + Sync + 'static) -> Self {
        Self {
            label: label.into(),
            check: Box::new(check),
        }
    }
}

pub struct Suite {
    pub name: &'static str,
    pub cases: Vec<Case>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Counterexample {
    pub instance: String,
    pub detail: String,
}

#[derive(Clone, Debug)]
pub struct SuiteReport {
    pub name: &'static str,
    pub passed: usize,
    pub failed: usize,
    pub first_failure: Option<Counterexample>,
    pub duration: Duration,
}

impl SuiteReport {
    pub fn ok(&self) -> bool {
        self.failed == 0
    }
}

#[derive(Clone, Debug)]
pub struct VerifyReport {
    pub suites: Vec<SuiteReport>,
    pub duration: Duration,
}

impl VerifyReport {
    pub fn all_passed(&self) -> bool {
        self.suites.iter().all(SuiteReport::ok)
    }

    pub fn first_failure(&self) -> Option<(&'static str, &Counterexample)> {
        self.suites
            .iter()
            .find_map(|s| s.first_failure.as_ref().map(|c| (s.name, c)))
    }
}

pub fn run_suite(suite: &Suite) -> SuiteReport {
    let start = Instant::now();
    let outcomes: Vec<Result<(), String>> =
        suite.cases.par_iter().map(|case| (case.check)()).collect();
    let mut passed = 0;
    let mut failed = 0;
    let mut first_failure = None;
    for (case, outcome) in suite.cases.iter().zip(outcomes) {
        match outcome {
            Ok(()) => passed += 1,
            Err(detail) => {
                failed += 1;
                first_failure.get_or_insert_with(|| Counterexample {
                    instance: case.label.clone(),
                    detail,
                });
            }
        }
    }
    SuiteReport {
        name: suite.name,
        passed,
        failed,
        first_failure,
        duration: start.elapsed(),
    }
}

pub fn verify(opts: &VerifyOptions) -> VerifyReport {
    let start = Instant::now();
    let suites = suites(opts).iter().map(run_suite).collect();
    VerifyReport {
        suites,
        duration: start.elapsed(),
    }
}

fn same(left: &IntPoly, right: &IntPoly) -> Result<(), String> {
    if left == right {
        Ok(())
    } else {
        Err(format!("{left} != {right}"))
    }
}

fn err_string<T, E: std::fmt::Display>(r: Result<T, E>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn single(name: &'static str, range: impl Iterator<Item = u64>, check: fn(u64) -> Result<(), String>) -> Suite {
    Suite {
        name,
        cases: range
            .map(|n| Case::new(format!("n = {n}"), move || check(n)))
            .collect(),
    }
}

fn pairs(name: &'static str, bound: u64, check: fn(u64, u64) -> Result<(), String>) -> Suite {
    let mut cases = Vec::new();
    for m in 1..=bound {
        for n in 1..=bound {
            cases.push(Case::new(format!("m = {m}, n = {n}"), move || check(m, n)));
        }
    }
    Suite { name, cases }
}

/// Every identity suite, each capped at `opts.sweep`.
pub fn suites(opts: &VerifyOptions) -> Vec<Suite> {
    use names::*;
    let cap = |bound: u64| bound.min(opts.sweep);
    let sweep = opts.sweep;
    vec![
        single(ZPREAD_ROUTES, 1..=sweep, |n| {
            same(&err_string(zpread(n))?, &err_string(zpread_via_lucas(n))?)
        }),
        pairs(LUCAS_MULTIPLICATIVE, cap(20), |m, n| {
            same(&lucas(m * n), &lucas(m).compose(&lucas(n)))
        }),
        single(LUCAS_DOUBLE_MINUS, 1..=cap(100), |n| {
            let l = lucas(n);
            same(
                &(lucas(2 * n) - IntPoly::constant(2)),
                &((&l - IntPoly::constant(2)) * (&l + IntPoly::constant(2))),
            )
        }),
        single(LUCAS_DOUBLE_PLUS, 1..=cap(100), |n| {
            same(&(lucas(2 * n) + IntPoly::constant(2)), &lucas(n).square())
        }),
        single(ODD_SQUARE, 0..=cap(50), |m| {
            let left = (lucas(2 * m + 1) - IntPoly::constant(2)) * IntPoly::linear(-2, 1);
            same(&left, &(lucas(m + 1) - lucas(m)).square())
        }),
        single(EVEN_SQUARE, 1..=cap(50), |m| {
            let left = (lucas(2 * m) - IntPoly::constant(2)) * IntPoly::from_i64s(&[-4, 0, 1]);
            same(&left, &(lucas(m + 1) - lucas(m - 1)).square())
        }),
        single(CYCLOTOMIC_COMPLETE, 1..=cap(200), |n| {
            let mut prod = IntPoly::one();
            for d in divisors(n) {
                prod = prod * err_string(cyclotomic(d))?;
            }
            same(&prod, &(IntPoly::monomial(1, n as usize) - IntPoly::one()))?;
            let deg = err_string(cyclotomic(n))?.degree();
            if deg != Some(totient(n) as usize) {
                return Err(format!("deg C_{n} = {deg:?}, totient = {}", totient(n)));
            }
            Ok(())
        }),
        single(CYCLOTOMIC_PALINDROMIC, 3..=cap(200), |n| {
            let c = err_string(cyclotomic(n))?;
            if !c.is_palindromic() || c.degree().is_none_or(|d| d % 2 == 1) {
                return Err(format!("C_{n} = {c}"));
            }
            Ok(())
        }),
        single(ZPREAD_SQUARE_ODD, (1..=cap(49)).filter(|m| m % 2 == 1), |m| {
            same(&err_string(zpread(m))?.substitute_square(), &lucas(m).square())
        }),
        single(ZPREAD_SQUARE_EVEN, 1..=cap(25), |n| {
            same(
                &err_string(zpread(2 * n))?.substitute_square(),
                &(IntPoly::constant(4) - lucas(2 * n).square()),
            )
        }),
        pairs(ZPREAD_COMPOSITION, cap(15), |m, n| {
            same(
                &err_string(zpread(m * n))?,
                &err_string(zpread(m))?.compose(&err_string(zpread(n))?),
            )
        }),
        u_substitution_suite(cap(30)),
        single(ZPREAD_ZERO_CONSTANT, 1..=sweep, |n| {
            let z = err_string(zpread(n))?;
            if z.coeff(0).is_zero() {
                Ok(())
            } else {
                Err(format!("Z_{n}(0) = {}", z.coeff(0)))
            }
        }),
        single(PSI_POWER_OF_TWO, 1..=cap(8), |n| {
            same(&err_string(psi(1 << (n + 2)))?, &lucas(1 << n))
        }),
        single(PHI_POWER_OF_TWO_SQUARE, 1..=cap(8), |n| {
            same(&phi_pow2(n as u32 + 1).substitute_square(), &lucas(1 << n))
        }),
        single(ZPREAD_FACTORIZATION, 1..=sweep, |n| {
            let r = err_string(factor_zpread(n))?;
            let degrees: u64 = r.factors.iter().map(|f| totient(f.d)).sum();
            if degrees != n || r.total_degree() != n as usize {
                return Err(format!("degree sum {} for n = {n}", r.total_degree()));
            }
            Ok(())
        }),
        single(LUCAS_FACTORIZATION, 1..=sweep, |n| {
            err_string(factor_lucas_minus2(n)).map(|_| ())
        }),
        phi_route_suite(sweep, opts.corrupt_phi),
        single(DEGREES_MONIC, 1..=sweep, |n| {
            let half = (totient(n) / 2) as usize;
            let psi_n = err_string(psi(n))?;
            let phi_n = err_string(phi_min(n))?;
            if n >= 3 && (psi_n.degree() != Some(half) || phi_n.degree() != Some(half)) {
                return Err(format!("deg psi_{n} = {:?}, deg phi_{n} = {:?}", psi_n.degree(), phi_n.degree()));
            }
            if !psi_n.is_monic() || !phi_n.is_monic() {
                return Err(format!("psi_{n} = {psi_n}, phi_{n} = {phi_n}"));
            }
            let big = err_string(capital_phi(n))?;
            if big.degree() != Some(totient(n) as usize) {
                return Err(format!("deg Phi_{n} = {:?}", big.degree()));
            }
            Ok(())
        }),
        commutation_suite(cap(12)),
        single(PHI_EVEN_REFLECTION, (3..=cap(49)).filter(|m| m % 2 == 1), |m| {
            same(
                &err_string(capital_phi(2 * m))?,
                &err_string(capital_phi(m))?.compose(&IntPoly::linear(4, -1)),
            )
        }),
        single(
            NO_INTEGER_ROOTS,
            [5u64, 7, 9, 11, 13, 25].into_iter().filter(move |&n| n <= sweep),
            |n| match err_string(integer_root(&err_string(phi_min(n))?))? {
                None => Ok(()),
                Some(r) => Err(format!("phi_{n}({r}) = 0")),
            },
        ),
        single(FIB_FACTORIZATION, 1..=cap(200), |n| {
            err_string(fib_factorization(n)).map(|_| ())
        }),
        single(ZPREAD_AT_5, 1..=cap(200), |n| err_string(zpread_at5_identity(n))),
        single(FIB_DIVISIBILITY, 1..=cap(200), |n| {
            let f = fibonacci(n);
            for d in divisors(n) {
                if !f.is_multiple_of(&fibonacci(d)) {
                    return Err(format!("F_{d} does not divide F_{n}"));
                }
            }
            Ok(())
        }),
        single(PHI_AT_5_TABLE, 1..=cap(16), |n| {
            let expected = BigInt::from(PHI_AT_5[n as usize - 1]);
            let got = err_string(tabulated_phi_at_5(n))?;
            if got != expected {
                return Err(format!("got {got}, table has {expected}"));
            }
            Ok(())
        }),
        float_root_suite(cap(50), opts.tol),
        mul_kernel_suite(cap(200)),
        div_round_trip_suite(cap(200)),
    ]
}

/// Signed `phi_n(5)` for `n = 1..=16`, as classically tabulated.
pub const PHI_AT_5: [i64; 16] = [5, 1, -2, -3, 5, -4, -13, 7, -17, 11, -89, 6, 233, -29, 61, 47];

fn u_substitution_suite(bound: u64) -> Suite {
    let points: [(i64, i64); 4] = [(2, 1), (3, 1), (5, 2), (-3, 2)];
    let mut cases = Vec::new();
    for (num, den) in points {
        for n in 1..=bound {
            cases.push(Case::new(format!("u = {num}/{den}, n = {n}"), move || {
                let u = err_string(ExactRational::new(num.into(), den.into()))?;
                let inv = err_string(u.recip())?;
                let d = &u - &inv;
                let at = -(&d * &d);
                let left = err_string(zpread(n))?.eval_rational(&at);
                let e = i32::try_from(n).map_err(|e| e.to_string())?;
                let w = &err_string(u.pow(e))? - &err_string(u.pow(-e))?;
                let right = -(&w * &w);
                if left == right {
                    Ok(())
                } else {
                    Err(format!("{left} != {right}"))
                }
            }));
        }
    }
    Suite {
        name: names::ZPREAD_U_SUBSTITUTION,
        cases,
    }
}

fn phi_route_suite(sweep: u64, corrupt: Option<u64>) -> Suite {
    Suite {
        name: names::PHI_ROUTES,
        cases: (1..=sweep)
            .map(|n| {
                Case::new(format!("n = {n}"), move || {
                    if corrupt != Some(n) {
                        return err_string(cross_check_phi(n)).map(|_| ());
                    }
                    let mut values = Vec::new();
                    for route in PhiRoute::ALL {
                        if let Some(mut p) = err_string(phi_by_route(n, route))? {
                            if route == PhiRoute::MinimalPolyRoute {
                                p = p + IntPoly::one();
                            }
                            values.push((route, p));
                        }
                    }
                    err_string(compare_routes(n, values)).map(|_| ())
                })
            })
            .collect(),
    }
}

/// Odd `m`: `Z_m(Phi_{2^n}) = Phi_{2^n}(Z_m)`. Even `m` does not commute;
/// there `Z_m(Phi_{2^n}) = 4 - Phi_{2^n}(Z_m)` holds instead.
fn commutation_suite(bound: u64) -> Suite {
    let mut cases = Vec::new();
    for m in 1..=bound {
        for k in 2..=5u32 {
            cases.push(Case::new(format!("m = {m}, 2^n = {}", 1u64 << k), move || {
                let z = err_string(zpread(m))?;
                let big = err_string(capital_phi(1 << k))?;
                let outer = big.compose(&z);
                let expected = if m % 2 == 1 {
                    outer
                } else {
                    IntPoly::constant(4) - outer
                };
                same(&z.compose(&big), &expected)
            }));
        }
    }
    Suite {
        name: names::COMMUTATION,
        cases,
    }
}

fn float_root_suite(bound: u64, tol: f64) -> Suite {
    Suite {
        name: names::FLOAT_ROOTS,
        cases: (3..=bound)
            .map(|n| {
                Case::new(format!("n = {n}"), move || {
                    err_string(float_root_check(n, tol)).map(|_| ())
                })
            })
            .collect(),
    }
}

/// Random polynomial with `len` coefficients drawn from `[-bound, bound]`.
pub fn random_poly(rng: &mut impl Rng, len: usize, bound: i64) -> IntPoly {
    IntPoly::new(
        (0..len)
            .map(|_| BigInt::from(rng.gen_range(-bound..=bound)))
            .collect(),
    )
}

fn mul_kernel_suite(count: u64) -> Suite {
    Suite {
        name: names::MUL_KERNELS,
        cases: (0..count)
            .map(|seed| {
                Case::new(format!("seed = {seed}"), move || {
                    let mut rng = StdRng::seed_from_u64(seed);
                    let (la, lb) = (rng.gen_range(1..=96), rng.gen_range(1..=96));
                    let a = random_poly(&mut rng, la, 1_000_000);
                    let b = random_poly(&mut rng, lb, 1_000_000);
                    let threshold = rng.gen_range(2..=40);
                    same(&a.mul_schoolbook(&b), &a.mul_divide_and_conquer(&b, threshold))
                })
            })
            .collect(),
    }
}

fn div_round_trip_suite(count: u64) -> Suite {
    Suite {
        name: names::DIV_ROUND_TRIP,
        cases: (0..count)
            .map(|seed| {
                Case::new(format!("seed = {seed}"), move || {
                    let mut rng = StdRng::seed_from_u64(seed ^ 0x5eed);
                    let (lp, lq) = (rng.gen_range(0..=24), rng.gen_range(1..=12));
                    let p = random_poly(&mut rng, lp, 1000);
                    let mut q = random_poly(&mut rng, lq, 1000);
                    if q.is_zero() {
                        q = IntPoly::one();
                    }
                    same(&err_string((&p * &q).div_exact(&q))?, &p)
                })
            })
            .collect(),
    }
}
