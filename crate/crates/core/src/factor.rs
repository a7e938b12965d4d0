//! Minimal polynomials `psi_n` of `2cos(2pi/n)` and `phi_n` of `4sin^2(pi/n)`,
//! the factors `Phi_n`, and verified factorizations of `Z_n` and `L_n - 2`.
//!
//! `phi_n` has four independent constructions (see [`PhiRoute`]); they are
//! memoized separately so a cross-check never compares a route to itself.

use std::fmt;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fold::palindrome_fold;
use crate::memo::Memo;
use crate::poly::IntPoly;
use crate::sequences::{cyclotomic, divisors, lucas, totient, zpread};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum PhiRoute {
    /// `(-1)^(phi(n)/2) psi_n(2 - x)` with `psi_n` folded out of `C_n`.
    MinimalPolyRoute,
    /// Exact division of `L_m` by the lower odd factors, odd `n` only.
    OddLucasRoute,
    /// `phi_{2^k} = phi_{2^(k-1)}^2 - 2`, powers of two only.
    PowerOfTwoRoute,
    /// Composition of the odd part with the power-of-two part.
    CompositionRoute,
}

impl PhiRoute {
    pub const ALL: [PhiRoute; 4] = [
        PhiRoute::MinimalPolyRoute,
        PhiRoute::OddLucasRoute,
        PhiRoute::PowerOfTwoRoute,
        PhiRoute::CompositionRoute,
    ];

    pub fn applies_to(self, n: u64) -> bool {
        match self {
            PhiRoute::MinimalPolyRoute | PhiRoute::CompositionRoute => n >= 1,
            PhiRoute::OddLucasRoute => n % 2 == 1,
            PhiRoute::PowerOfTwoRoute => n.is_power_of_two(),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            PhiRoute::MinimalPolyRoute => "minimal-poly",
            PhiRoute::OddLucasRoute => "odd-lucas",
            PhiRoute::PowerOfTwoRoute => "power-of-two",
            PhiRoute::CompositionRoute => "composition",
        }
    }
}

impl fmt::Display for PhiRoute {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Which construction of `phi_n` feeds `Phi_n` and the factorizations.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum PhiSource {
    /// [`phi_min`], traceable to the definition.
    #[default]
    Reference,
    /// [`phi_composed`].
    Fast,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TargetKind {
    #[serde(rename = "zpread")]
    Zpread,
    #[serde(rename = "lucas_minus_2")]
    LucasMinus2,
}

impl fmt::Display for TargetKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TargetKind::Zpread => "zpread",
            TargetKind::LucasMinus2 => "lucas_minus_2",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Factor {
    pub d: u64,
    pub multiplicity: u32,
    #[serde(rename = "coefficients")]
    pub poly: IntPoly,
}

/// A factorization whose product has been checked against its target.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorizationRecord {
    pub target_kind: TargetKind,
    pub n: u64,
    /// Ascending in `d`.
    pub factors: Vec<Factor>,
    pub product: IntPoly,
}

impl FactorizationRecord {
    /// Sum of `multiplicity * degree` over the factors.
    pub fn total_degree(&self) -> usize {
        self.factors
            .iter()
            .map(|f| f.multiplicity as usize * f.poly.degree().unwrap_or(0))
            .sum()
    }
}

struct FactorCache {
    psi: Memo<IntPoly>,
    phi_min: Memo<IntPoly>,
    phi_odd: Memo<IntPoly>,
    phi_pow2: Memo<IntPoly>,
}

fn cache() -> &'static FactorCache {
    static CACHE: OnceLock<FactorCache> = OnceLock::new();
    CACHE.get_or_init(|| FactorCache {
        psi: Memo::new(),
        phi_min: Memo::new(),
        phi_odd: Memo::new(),
        phi_pow2: Memo::new(),
    })
}

fn require_positive(n: u64, what: &str) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidArgument(format!("{what} index must be >= 1")));
    }
    Ok(())
}

/// `(-1)^(phi(n)/2)` as a sign flip.
fn half_totient_is_odd(n: u64) -> bool {
    (totient(n) / 2) % 2 == 1
}

/// Minimal polynomial of `2cos(2pi/n)`.
pub fn psi(n: u64) -> Result<IntPoly> {
    require_positive(n, "psi")?;
    let v = cache().psi.get_or_try_insert_with(n, || match n {
        1 => Ok(IntPoly::linear(-2, 1)),
        2 => Ok(IntPoly::linear(2, 1)),
        _ => Ok(palindrome_fold(&cyclotomic(n)?)?.lucas_expand()),
    })?;
    Ok((*v).clone())
}

/// Minimal polynomial of `4sin^2(pi/n)`: `(-1)^(phi(n)/2) psi_n(2 - x)` for
/// `n >= 3`, with `phi_1 = x` and `phi_2 = x - 4`.
pub fn phi_min(n: u64) -> Result<IntPoly> {
    require_positive(n, "phi")?;
    let v = cache().phi_min.get_or_try_insert_with(n, || {
        let phi = match n {
            1 => IntPoly::x(),
            2 => IntPoly::linear(-4, 1),
            _ => {
                let reflected = psi(n)?.compose(&IntPoly::linear(2, -1));
                if half_totient_is_odd(n) {
                    -reflected
                } else {
                    reflected
                }
            }
        };
        if !phi.is_monic() {
            return Err(Error::InternalInconsistency(format!(
                "phi_{n} = {phi} is not monic"
            )));
        }
        Ok(phi)
    })?;
    Ok((*v).clone())
}

pub fn phi_with(n: u64, source: PhiSource) -> Result<IntPoly> {
    match source {
        PhiSource::Reference => phi_min(n),
        PhiSource::Fast => phi_composed(n),
    }
}

/// `Phi_1 = x`, `Phi_2 = 4 - x`, `Phi_n = phi_n^2` otherwise.
pub fn capital_phi(n: u64) -> Result<IntPoly> {
    capital_phi_with(n, PhiSource::Reference)
}

pub fn capital_phi_with(n: u64, source: PhiSource) -> Result<IntPoly> {
    require_positive(n, "Phi")?;
    Ok(match n {
        1 => IntPoly::x(),
        2 => IntPoly::linear(4, -1),
        _ => phi_with(n, source)?.square(),
    })
}

fn product<'a>(factors: impl IntoIterator<Item = (&'a IntPoly, u32)>) -> IntPoly {
    factors
        .into_iter()
        .fold(IntPoly::one(), |acc, (p, e)| acc.mul(&p.pow(e)))
}

/// `Z_n = prod_{d | n} Phi_d`, verified against the closed form.
pub fn factor_zpread(n: u64) -> Result<FactorizationRecord> {
    factor_zpread_with(n, PhiSource::Reference)
}

pub fn factor_zpread_with(n: u64, source: PhiSource) -> Result<FactorizationRecord> {
    require_positive(n, "zpread")?;
    let factors = divisors(n)
        .into_iter()
        .map(|d| {
            Ok(Factor {
                d,
                multiplicity: 1,
                poly: capital_phi_with(d, source)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let product = product(factors.iter().map(|f| (&f.poly, f.multiplicity)));
    let target = zpread(n)?;
    if product != target {
        return Err(Error::VerificationFailure {
            n,
            detail: format!("product of Phi_d is {product}, expected Z_{n} = {target}"),
        });
    }
    let record = FactorizationRecord {
        target_kind: TargetKind::Zpread,
        n,
        factors,
        product,
    };
    if record.total_degree() != n as usize {
        return Err(Error::VerificationFailure {
            n,
            detail: format!("factor degrees sum to {}", record.total_degree()),
        });
    }
    Ok(record)
}

/// `L_n - 2 = psi_1 psi_2^(e_n) prod_{k | n, k > 2} psi_k^2`, where `e_n` is 1
/// for even `n` and 0 for odd `n`.
pub fn factor_lucas_minus2(n: u64) -> Result<FactorizationRecord> {
    require_positive(n, "lucas")?;
    let mut factors = Vec::new();
    for d in divisors(n) {
        let multiplicity = match d {
            1 | 2 => 1,
            _ => 2,
        };
        factors.push(Factor {
            d,
            multiplicity,
            poly: psi(d)?,
        });
    }
    let product = product(factors.iter().map(|f| (&f.poly, f.multiplicity)));
    let target = lucas(n) - IntPoly::constant(2);
    if product != target {
        return Err(Error::VerificationFailure {
            n,
            detail: format!("product of psi factors is {product}, expected L_{n} - 2 = {target}"),
        });
    }
    Ok(FactorizationRecord {
        target_kind: TargetKind::LucasMinus2,
        n,
        factors,
        product,
    })
}

/// `phi_m` for odd `m` from `L_m(x) = x prod_{d | m, d > 1} phi_d(x^2)`.
pub fn phi_odd_lucas(m: u64) -> Result<IntPoly> {
    if m % 2 == 0 {
        return Err(Error::InvalidArgument(format!(
            "odd-Lucas route needs an odd index, got {m}"
        )));
    }
    let v = cache().phi_odd.get_or_try_insert_with(m, || {
        if m == 1 {
            return Ok(IntPoly::x());
        }
        let mut known = IntPoly::x();
        for d in divisors(m).into_iter().filter(|&d| d > 1 && d < m) {
            known = known.mul(&phi_odd_lucas(d)?.substitute_square());
        }
        lucas(m).div_exact(&known)?.desubstitute_square()
    })?;
    Ok((*v).clone())
}

/// `phi_{2^k}`: bases `x`, `x - 4`, `x - 2`, then `phi_{2^k} = phi_{2^(k-1)}^2 - 2`.
pub fn phi_pow2(k: u32) -> IntPoly {
    let v = cache()
        .phi_pow2
        .get_or_insert_with(k as u64, || phi_pow2_uncached(k));
    (*v).clone()
}

fn phi_pow2_uncached(k: u32) -> IntPoly {
    match k {
        0 => IntPoly::x(),
        1 => IntPoly::linear(-4, 1),
        2 => IntPoly::linear(-2, 1),
        _ => phi_pow2(k - 1).square() - IntPoly::constant(2),
    }
}

/// `phi_n` assembled from the odd part `m` and the power of two `2^k` of `n`:
/// `phi_{2m} = (-1)^(phi(m)/2) phi_m(4 - x)` and
/// `phi_{2^k m} = phi_m(phi_{2^k}^2)` for `k >= 2`.
pub fn phi_composed(n: u64) -> Result<IntPoly> {
    require_positive(n, "phi")?;
    let k = n.trailing_zeros();
    let m = n >> k;
    if k == 0 {
        return phi_odd_lucas(m);
    }
    if m == 1 {
        return Ok(phi_pow2(k));
    }
    let odd = phi_odd_lucas(m)?;
    Ok(if k == 1 {
        let reflected = odd.compose(&IntPoly::linear(4, -1));
        if half_totient_is_odd(m) {
            -reflected
        } else {
            reflected
        }
    } else {
        odd.compose(&phi_pow2(k).square())
    })
}

/// `phi_n` by one route, or `None` when the route does not cover `n`.
pub fn phi_by_route(n: u64, route: PhiRoute) -> Result<Option<IntPoly>> {
    require_positive(n, "phi")?;
    if !route.applies_to(n) {
        return Ok(None);
    }
    let phi = match route {
        PhiRoute::MinimalPolyRoute => phi_min(n)?,
        PhiRoute::OddLucasRoute => phi_odd_lucas(n)?,
        PhiRoute::PowerOfTwoRoute => phi_pow2(n.trailing_zeros()),
        PhiRoute::CompositionRoute => phi_composed(n)?,
    };
    Ok(Some(phi))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhiCrossCheck {
    pub n: u64,
    pub routes: Vec<PhiRoute>,
    pub phi: IntPoly,
}

/// Computes `phi_n` by every applicable route and requires exact agreement.
pub fn cross_check_phi(n: u64) -> Result<PhiCrossCheck> {
    let mut values = Vec::new();
    for route in PhiRoute::ALL {
        if let Some(p) = phi_by_route(n, route)? {
            values.push((route, p));
        }
    }
    compare_routes(n, values)
}

/// Agreement check over precomputed route values, first entry is the reference.
pub fn compare_routes(n: u64, values: Vec<(PhiRoute, IntPoly)>) -> Result<PhiCrossCheck> {
    let mut iter = values.into_iter();
    let (first_route, first) = iter
        .next()
        .ok_or_else(|| Error::InvalidArgument(format!("no route values for phi_{n}")))?;
    let mut routes = vec![first_route];
    for (route, p) in iter {
        if p != first {
            return Err(Error::RouteMismatch {
                n,
                first_route: first_route.to_string(),
                first,
                second_route: route.to_string(),
                second: p,
            });
        }
        routes.push(route);
    }
    Ok(PhiCrossCheck {
        n,
        routes,
        phi: first,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct RootCheck {
    pub n: u64,
    pub roots_checked: usize,
    pub max_residual: f64,
    /// `tol * (1 + sum |coefficients|)`
    pub bound: f64,
}

/// Evaluates `phi_n` in floating point at every `4sin^2(k pi/n)` with
/// `gcd(k, n) = 1` and `0 < k < n/2`.
pub fn float_root_check(n: u64, tol: f64) -> Result<RootCheck> {
    if n < 3 {
        return Err(Error::InvalidArgument(format!(
            "root check needs n >= 3, got {n}"
        )));
    }
    if !(tol > 0.0) {
        return Err(Error::InvalidArgument(format!("tolerance must be > 0, got {tol}")));
    }
    let phi = phi_min(n)?;
    let magnitude = phi.abs_coeff_sum().to_f64().unwrap_or(f64::INFINITY);
    let bound = tol * (1.0 + magnitude);
    let mut max_residual = 0.0f64;
    let mut roots_checked = 0;
    for k in (1..n).take_while(|&k| 2 * k < n) {
        if num_integer::gcd(k, n) != 1 {
            continue;
        }
        let root = 4.0 * (k as f64 * std::f64::consts::PI / n as f64).sin().powi(2);
        let residual = phi.eval_float(root).abs();
        if !(residual <= bound) {
            return Err(Error::ToleranceExceeded {
                n,
                k,
                residual,
                bound,
            });
        }
        max_residual = max_residual.max(residual);
        roots_checked += 1;
    }
    Ok(RootCheck {
        n,
        roots_checked,
        max_residual,
        bound,
    })
}

/// First integer root of `p`, searched among the divisors of the constant
/// term (rational root test for monic `p`).
pub fn integer_root(p: &IntPoly) -> Result<Option<BigInt>> {
    let c0 = p.coeff(0);
    if c0.is_zero() {
        return Ok((!p.is_zero()).then(BigInt::zero));
    }
    let c0 = c0.abs().to_u64().ok_or_else(|| {
        Error::InvalidArgument(format!("constant term of {p} too large for divisor search"))
    })?;
    for d in divisors(c0) {
        for r in [BigInt::from(d), -BigInt::from(d)] {
            if p.eval_int(&r).is_zero() {
                return Ok(Some(r));
            }
        }
    }
    Ok(None)
}
