//! Command-line front end. The binary only parses arguments and prints what
//! [`run`] returns, so everything here is testable in-process.

use std::fmt::Write as _;
use std::ops::RangeInclusive;
use std::str::FromStr;
use std::time::{Duration, Instant};

use clap::{Parser, Subcommand, ValueEnum};
use rand::rngs::StdRng;
use rand::SeedableRng;
use serde::Serialize;
use serde_json::json;

use crate::error::{Error, Result};
use crate::factor::{
    capital_phi_with, cross_check_phi, factor_lucas_minus2, factor_zpread_with, phi_with, psi,
    FactorizationRecord, PhiSource,
};
use crate::fib::{fib_factorization, PrimitivePartTable};
use crate::poly::IntPoly;
use crate::sequences::{cyclotomic, lucas, spread, zpread};
use crate::verify::{random_poly, verify, VerifyOptions, VerifyReport};

/// Default largest index accepted by `show`, `factor` and `fib`.
pub const DEFAULT_MAX_INDEX: u64 = 4096;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Family {
    #[value(name = "lucas")]
    Lucas,
    #[value(name = "cyclotomic")]
    Cyclotomic,
    #[value(name = "zpread")]
    Zpread,
    #[value(name = "spread")]
    Spread,
    #[value(name = "psi")]
    Psi,
    #[value(name = "phi")]
    Phi,
    #[value(name = "Phi")]
    CapitalPhi,
}

impl Family {
    fn name(self) -> &'static str {
        match self {
            Family::Lucas => "lucas",
            Family::Cyclotomic => "cyclotomic",
            Family::Zpread => "zpread",
            Family::Spread => "spread",
            Family::Psi => "psi",
            Family::Phi => "phi",
            Family::CapitalPhi => "Phi",
        }
    }

    fn min_index(self) -> u64 {
        match self {
            Family::Lucas => 0,
            _ => 1,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    #[default]
    Text,
    Record,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum RouteFlag {
    Min,
    Fast,
}

impl From<RouteFlag> for PhiSource {
    fn from(r: RouteFlag) -> Self {
        match r {
            RouteFlag::Min => PhiSource::Reference,
            RouteFlag::Fast => PhiSource::Fast,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Target {
    Zpread,
    Lucas,
}

/// A single index `N` or an inclusive range `A..B`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndexSpec(pub RangeInclusive<u64>);

impl FromStr for IndexSpec {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let parse = |t: &str| {
            t.trim()
                .parse::<u64>()
                .map_err(|e| format!("bad index {t:?}: {e}"))
        };
        match s.split_once("..") {
            None => {
                let n = parse(s)?;
                Ok(IndexSpec(n..=n))
            }
            Some((a, b)) => {
                let b = b.strip_prefix('=').unwrap_or(b);
                let (a, b) = (parse(a)?, parse(b)?);
                if a > b {
                    return Err(format!("empty range {a}..{b}"));
                }
                Ok(IndexSpec(a..=b))
            }
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "spreadpoly",
    version,
    about = "Exact spread/zpread polynomial factorizations and Fibonacci primitive parts"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Text)]
    pub format: OutputFormat,

    /// Which phi_n construction feeds Phi_n (show and factor only).
    #[arg(long, global = true, value_enum)]
    pub route: Option<RouteFlag>,

    /// Upper bound for verification sweeps.
    #[arg(long, global = true, default_value_t = 200)]
    pub sweep: u64,

    /// Relative tolerance for the floating-point root check.
    #[arg(long, global = true, default_value_t = 1e-9)]
    pub tol: f64,

    /// Largest index accepted by show, factor and fib.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_INDEX)]
    pub max_index: u64,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print one polynomial family member, or a range of them.
    Show {
        #[arg(value_enum)]
        family: Family,
        index: IndexSpec,
    },
    /// Print the verified factorization of Z_n or of L_n - 2.
    Factor {
        index: IndexSpec,
        #[arg(value_enum, default_value_t = Target::Zpread)]
        target: Target,
    },
    /// Print the primitive-part factorization of F_n.
    Fib { index: IndexSpec },
    /// Run every identity suite up to the sweep bound.
    Verify {
        /// Test mode: corrupt the reference phi_n for this n.
        #[arg(long, hide = true)]
        inject_phi_fault: Option<u64>,
    },
    /// Time the multiplication kernels and the factorization pipeline.
    Bench {
        #[arg(required = true)]
        sizes: Vec<usize>,
    },
}

/// What the binary should print and return.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub exit_code: i32,
}

impl Outcome {
    fn failure(stdout: String, err: impl std::fmt::Display) -> Self {
        Self {
            stdout,
            stderr: format!("error: {err}\n"),
            exit_code: 1,
        }
    }
}

/// Validated request, decoupled from the argument parser.
#[derive(Clone, Debug, PartialEq)]
pub struct CommandRequest {
    pub format: OutputFormat,
    pub route: PhiSource,
    pub sweep: u64,
    pub tol: f64,
    pub max_index: u64,
}

impl Cli {
    pub fn request(&self) -> Result<CommandRequest> {
        if self.sweep < 1 {
            return Err(Error::InvalidArgument("--sweep must be >= 1".into()));
        }
        if !(self.tol > 0.0) {
            return Err(Error::InvalidArgument("--tol must be > 0".into()));
        }
        if self.route.is_some()
            && !matches!(self.command, Command::Show { .. } | Command::Factor { .. })
        {
            return Err(Error::InvalidArgument(
                "--route only applies to show and factor".into(),
            ));
        }
        Ok(CommandRequest {
            format: self.format,
            route: self.route.map(PhiSource::from).unwrap_or_default(),
            sweep: self.sweep,
            tol: self.tol,
            max_index: self.max_index,
        })
    }
}

pub fn run(cli: &Cli) -> Outcome {
    let req = match cli.request() {
        Ok(r) => r,
        Err(e) => return Outcome::failure(String::new(), e),
    };
    match &cli.command {
        Command::Show { family, index } => {
            streamed(&req, index, family.min_index(), |n| cmd_show(*family, n, &req))
        }
        Command::Factor { index, target } => {
            streamed(&req, index, 1, |n| cmd_factor(n, *target, &req))
        }
        Command::Fib { index } => streamed(&req, index, 1, |n| cmd_fib(n, &req)),
        Command::Verify { inject_phi_fault } => {
            let report = verify(&VerifyOptions {
                sweep: req.sweep,
                tol: req.tol,
                corrupt_phi: *inject_phi_fault,
            });
            let stdout = render_verify(&report, req.format);
            match report.first_failure() {
                None => Outcome {
                    stdout,
                    ..Default::default()
                },
                Some((suite, cx)) => Outcome::failure(
                    stdout,
                    format!("{suite} failed at {}: {}", cx.instance, cx.detail),
                ),
            }
        }
        Command::Bench { sizes } => match cmd_bench(sizes) {
            Ok(rows) => Outcome {
                stdout: render_bench(&rows, req.format),
                ..Default::default()
            },
            Err(e) => Outcome::failure(String::new(), e),
        },
    }
}

fn streamed(
    req: &CommandRequest,
    index: &IndexSpec,
    min: u64,
    mut render: impl FnMut(u64) -> Result<String>,
) -> Outcome {
    let mut stdout = String::new();
    for n in index.0.clone() {
        if n < min {
            return Outcome::failure(
                stdout,
                Error::InvalidArgument(format!("index must be >= {min}, got {n}")),
            );
        }
        if n > req.max_index {
            return Outcome::failure(
                stdout,
                Error::OutOfBounds {
                    n,
                    max: req.max_index,
                },
            );
        }
        match render(n) {
            Ok(s) => stdout.push_str(&s),
            Err(e) => return Outcome::failure(stdout, e),
        }
    }
    Outcome {
        stdout,
        ..Default::default()
    }
}

fn record_line(value: serde_json::Value) -> String {
    let mut s = value.to_string();
    s.push('\n');
    s
}

pub fn family_member(family: Family, n: u64, route: PhiSource) -> Result<IntPoly> {
    match family {
        Family::Lucas => Ok(lucas(n)),
        Family::Cyclotomic => cyclotomic(n),
        Family::Zpread => zpread(n),
        Family::Spread => spread(n),
        Family::Psi => psi(n),
        Family::Phi => phi_with(n, route),
        Family::CapitalPhi => capital_phi_with(n, route),
    }
}

pub fn cmd_show(family: Family, n: u64, req: &CommandRequest) -> Result<String> {
    if n > req.max_index {
        return Err(Error::OutOfBounds {
            n,
            max: req.max_index,
        });
    }
    let p = family_member(family, n, req.route)?;
    Ok(match req.format {
        OutputFormat::Text => format!("{p}\n"),
        OutputFormat::Record => record_line(json!({
            "kind": family.name(),
            "n": n,
            "coefficients": p,
            "status": "ok",
        })),
    })
}

pub fn factorization(n: u64, target: Target, route: PhiSource) -> Result<FactorizationRecord> {
    match target {
        Target::Zpread => factor_zpread_with(n, route),
        Target::Lucas => factor_lucas_minus2(n),
    }
}

pub fn cmd_factor(n: u64, target: Target, req: &CommandRequest) -> Result<String> {
    let record = factorization(n, target, req.route)?;
    Ok(match req.format {
        OutputFormat::Text => render_factor_text(&record, target),
        OutputFormat::Record => {
            #[derive(Serialize)]
            struct Wire<'a> {
                kind: &'static str,
                n: u64,
                target: String,
                factors: &'a [crate::factor::Factor],
                product: &'a IntPoly,
                status: &'static str,
            }
            let wire = Wire {
                kind: "factor",
                n,
                target: record.target_kind.to_string(),
                factors: &record.factors,
                product: &record.product,
                status: "verified",
            };
            let mut s = serde_json::to_string(&wire).expect("record serializes");
            s.push('\n');
            s
        }
    })
}

fn render_factor_text(record: &FactorizationRecord, target: Target) -> String {
    let n = record.n;
    let mut out = String::new();
    let (lhs, symbol) = match target {
        Target::Zpread => (format!("Z_{n}"), "Phi"),
        Target::Lucas => (format!("L_{n} - 2"), "psi"),
    };
    let _ = writeln!(out, "{lhs} = {}", record.product);
    for f in &record.factors {
        let power = if f.multiplicity > 1 {
            format!("^{}", f.multiplicity)
        } else {
            String::new()
        };
        let _ = writeln!(out, "  {symbol}_{}{power} : {}", f.d, f.poly);
    }
    let _ = writeln!(out, "  verified: product of {} factors", record.factors.len());
    out
}

pub fn cmd_fib(n: u64, req: &CommandRequest) -> Result<String> {
    let table = fib_factorization(n)?;
    Ok(match req.format {
        OutputFormat::Text => render_fib_text(&table),
        OutputFormat::Record => {
            let value = serde_json::to_value(&table).expect("table serializes");
            record_line(json!({
                "kind": "fib",
                "n": n,
                "parts": value["parts"],
                "reconstructed": value["reconstructed"],
                "status": "verified",
            }))
        }
    })
}

fn render_fib_text(table: &PrimitivePartTable) -> String {
    let product = table
        .parts
        .iter()
        .map(|(_, p)| p.to_string())
        .collect::<Vec<_>>()
        .join(" * ");
    let mut out = format!("F_{} = {} = {product}\n", table.n, table.reconstructed);
    for (d, p) in &table.parts {
        let _ = writeln!(out, "  p_{d} = {p}");
    }
    out
}

fn render_verify(report: &VerifyReport, format: OutputFormat) -> String {
    let mut out = String::new();
    for s in &report.suites {
        match format {
            OutputFormat::Text => {
                let _ = writeln!(
                    out,
                    "{} {:<50} {:>6}/{:<6} {:>9.1} ms",
                    if s.ok() { "PASS" } else { "FAIL" },
                    s.name,
                    s.passed,
                    s.passed + s.failed,
                    s.duration.as_secs_f64() * 1e3
                );
                if let Some(cx) = &s.first_failure {
                    let _ = writeln!(out, "     first counterexample at {}: {}", cx.instance, cx.detail);
                }
            }
            // Durations are left out so identical requests give identical bytes.
            OutputFormat::Record => out.push_str(&record_line(json!({
                "kind": "verify",
                "suite": s.name,
                "passed": s.passed,
                "failed": s.failed,
                "counterexample": s.first_failure.as_ref().map(|c| json!({
                    "instance": c.instance,
                    "detail": c.detail,
                })),
                "status": if s.ok() { "pass" } else { "fail" },
            }))),
        }
    }
    if format == OutputFormat::Text {
        let total: usize = report.suites.iter().map(|s| s.passed + s.failed).sum();
        let failed = report.suites.iter().filter(|s| !s.ok()).count();
        let _ = writeln!(
            out,
            "{} suites, {total} cases, {failed} failing suites, {:.2} s",
            report.suites.len(),
            report.duration.as_secs_f64()
        );
    }
    out
}

#[derive(Clone, Debug, PartialEq)]
pub struct BenchRow {
    pub size: usize,
    pub mul_schoolbook: Duration,
    pub mul_divide_and_conquer: Duration,
    pub factor_zpread: Duration,
    pub cross_check_phi: Duration,
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let start = Instant::now();
    let out = f();
    (out, start.elapsed())
}

/// Times both multiplication kernels on random degree-`size` operands, then
/// `factor_zpread(size)` and `cross_check_phi(size)`.
pub fn cmd_bench(sizes: &[usize]) -> Result<Vec<BenchRow>> {
    if sizes.is_empty() {
        return Err(Error::InvalidArgument("bench needs at least one size".into()));
    }
    let mut rng = StdRng::seed_from_u64(0xbe7c);
    sizes
        .iter()
        .map(|&size| {
            if size == 0 {
                return Err(Error::InvalidArgument("bench sizes must be >= 1".into()));
            }
            let a = random_poly(&mut rng, size + 1, i64::MAX);
            let b = random_poly(&mut rng, size + 1, i64::MAX);
            let (school, mul_schoolbook) = timed(|| a.mul_schoolbook(&b));
            let (fast, mul_divide_and_conquer) =
                timed(|| a.mul_divide_and_conquer(&b, crate::poly::mul_threshold()));
            if school != fast {
                return Err(Error::InternalInconsistency(format!(
                    "multiplication kernels disagree at size {size}"
                )));
            }
            let (record, factor_zpread) = timed(|| factor_zpread_with(size as u64, PhiSource::Reference));
            record?;
            let (check, cross_check_phi) = timed(|| cross_check_phi(size as u64));
            check?;
            Ok(BenchRow {
                size,
                mul_schoolbook,
                mul_divide_and_conquer,
                factor_zpread,
                cross_check_phi,
            })
        })
        .collect()
}

fn render_bench(rows: &[BenchRow], format: OutputFormat) -> String {
    let ms = |d: Duration| d.as_secs_f64() * 1e3;
    let mut out = String::new();
    if format == OutputFormat::Text {
        let _ = writeln!(
            out,
            "{:>8} {:>16} {:>16} {:>16} {:>16}",
            "size", "schoolbook ms", "karatsuba ms", "factor_zpread ms", "cross_check ms"
        );
    }
    for r in rows {
        match format {
            OutputFormat::Text => {
                let _ = writeln!(
                    out,
                    "{:>8} {:>16.3} {:>16.3} {:>16.3} {:>16.3}",
                    r.size,
                    ms(r.mul_schoolbook),
                    ms(r.mul_divide_and_conquer),
                    ms(r.factor_zpread),
                    ms(r.cross_check_phi)
                );
            }
            OutputFormat::Record => out.push_str(&record_line(json!({
                "kind": "bench",
                "n": r.size,
                "mul_schoolbook_ms": ms(r.mul_schoolbook),
                "mul_divide_and_conquer_ms": ms(r.mul_divide_and_conquer),
                "factor_zpread_ms": ms(r.factor_zpread),
                "cross_check_phi_ms": ms(r.cross_check_phi),
                "status": "ok",
            }))),
        }
    }
    out
}
