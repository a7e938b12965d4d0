//! Acceptance criteria, one PASS/FAIL line each.
//!
//! Runs as a plain binary (`harness = false`) so every line is printed even
//! without `--nocapture`:
//!
//! ```text
//! cargo test -p spreadpoly --test acceptance
//! ```

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use proptest::prelude::*;
use proptest::test_runner::{Config, TestCaseError, TestRunner};

use spreadpoly::factor::{cross_check_phi, factor_zpread, float_root_check, phi_min, phi_pow2, psi};
use spreadpoly::fib::{fib_factorization, tabulated_phi_at_5, zpread_at5_identity};
use spreadpoly::fold::{palindrome_fold, PalindromeFold};
use spreadpoly::sequences::{cyclotomic, divisors, lucas, monic_zpread, totient, zpread};
use spreadpoly::verify::{names, run_suite, suites, VerifyOptions};
use spreadpoly::IntPoly;

type Outcome = Result<String, String>;

struct Criterion {
    id: u32,
    title: &'static str,
    budget: Duration,
    run: fn() -> Outcome,
}

fn p(c: &[i64]) -> IntPoly {
    IntPoly::from_i64s(c)
}

fn expect_eq(what: &str, got: &IntPoly, want: &IntPoly) -> Result<(), String> {
    if got == want {
        Ok(())
    } else {
        Err(format!("{what}: got {got}, expected {want}"))
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn golden_tables() -> Outcome {
    let mut checked = 0;

    let lucas_rows: [&[i64]; 7] = [
        &[2],
        &[0, 1],
        &[-2, 0, 1],
        &[0, -3, 0, 1],
        &[2, 0, -4, 0, 1],
        &[0, 5, 0, -5, 0, 1],
        &[-2, 0, 9, 0, -6, 0, 1],
    ];
    for (n, row) in lucas_rows.iter().enumerate() {
        expect_eq(&format!("L_{n}"), &lucas(n as u64), &p(row))?;
        checked += 1;
    }

    let zpread_rows: [&[i64]; 5] = [
        &[0, 1],
        &[0, 4, -1],
        &[0, 9, -6, 1],
        &[0, 16, -20, 8, -1],
        &[0, 25, -50, 35, -10, 1],
    ];
    let monic_rows: [&[i64]; 5] = [
        &[0, 1],
        &[0, -4, 1],
        &[0, 9, -6, 1],
        &[0, -16, 20, -8, 1],
        &[0, 25, -50, 35, -10, 1],
    ];
    for n in 1..=5u64 {
        expect_eq(&format!("Z_{n}"), &zpread(n).map_err(err)?, &p(zpread_rows[n as usize - 1]))?;
        expect_eq(&format!("z_{n}"), &monic_zpread(n).map_err(err)?, &p(monic_rows[n as usize - 1]))?;
        checked += 2;
    }

    let psi_rows: [&[i64]; 9] = [
        &[-2, 1],
        &[2, 1],
        &[1, 1],
        &[0, 1],
        &[-1, 1, 1],
        &[-1, 1],
        &[-1, -2, 1, 1],
        &[-2, 0, 1],
        &[1, -3, 0, 1],
    ];
    for n in 1..=9u64 {
        expect_eq(&format!("psi_{n}"), &psi(n).map_err(err)?, &p(psi_rows[n as usize - 1]))?;
        checked += 1;
    }

    let cyclotomic_rows: [&[i64]; 7] = [
        &[1, 1, 1],
        &[1, 0, 1],
        &[1, 1, 1, 1, 1],
        &[1, -1, 1],
        &[1, 1, 1, 1, 1, 1, 1],
        &[1, 0, 0, 0, 1],
        &[1, 0, 0, 1, 0, 0, 1],
    ];
    for n in 3..=9u64 {
        expect_eq(&format!("C_{n}"), &cyclotomic(n).map_err(err)?, &p(cyclotomic_rows[n as usize - 3]))?;
        checked += 1;
    }

    let phi_rows: [&[i64]; 9] = [
        &[0, 1],
        &[-4, 1],
        &[-3, 1],
        &[-2, 1],
        &[5, -5, 1],
        &[-1, 1],
        &[-7, 14, -7, 1],
        &[2, -4, 1],
        &[-3, 9, -6, 1],
    ];
    for n in 1..=9u64 {
        expect_eq(&format!("phi_{n}"), &phi_min(n).map_err(err)?, &p(phi_rows[n as usize - 1]))?;
        checked += 1;
    }

    // The published power-of-two table lists phi_1, phi_2, phi_4, phi_8,
    // phi_16 in its five columns; k = 5 is checked against the direct route.
    let pow2_rows: [&[i64]; 5] = [
        &[0, 1],
        &[-4, 1],
        &[-2, 1],
        &[2, -4, 1],
        &[2, -16, 20, -8, 1],
    ];
    for k in 0..=4u32 {
        let want = p(pow2_rows[k as usize]);
        expect_eq(&format!("phi_pow2({k})"), &phi_pow2(k), &want)?;
        expect_eq(&format!("phi_{}", 1u64 << k), &phi_min(1 << k).map_err(err)?, &want)?;
        checked += 2;
    }
    let phi32 = phi_pow2(5);
    expect_eq("phi_pow2(5)", &phi32, &phi_min(32).map_err(err)?)?;
    expect_eq("phi_pow2(5)", &phi32, &(phi_pow2(4).square() - IntPoly::constant(2)))?;
    checked += 2;

    let at5: [i64; 16] = [5, 1, -2, -3, 5, -4, -13, 7, -17, 11, -89, 6, 233, -29, 61, 47];
    for n in 1..=16u64 {
        let got = tabulated_phi_at_5(n).map_err(err)?;
        if got != BigInt::from(at5[n as usize - 1]) {
            return Err(format!("phi_{n}(5) table entry: got {got}, expected {}", at5[n as usize - 1]));
        }
        checked += 1;
    }

    let fib_rows: [&[i64]; 9] = [
        &[1],
        &[1, 1],
        &[1, 2],
        &[1, 1, 3],
        &[1, 5],
        &[1, 1, 2, 4],
        &[1, 13],
        &[1, 1, 3, 7],
        &[1, 2, 17],
    ];
    for n in 1..=9u64 {
        let table = fib_factorization(n).map_err(err)?;
        let got: Vec<BigInt> = table.parts.iter().map(|(_, v)| v.clone()).collect();
        let want: Vec<BigInt> = fib_rows[n as usize - 1].iter().map(|&v| BigInt::from(v)).collect();
        if got != want {
            return Err(format!("F_{n} parts: got {got:?}, expected {want:?}"));
        }
        checked += 1;
    }

    Ok(format!("{checked} table entries"))
}

fn zpread_factorization_sweep() -> Outcome {
    for n in 1..=300u64 {
        let record = factor_zpread(n).map_err(err)?;
        let z = zpread(n).map_err(err)?;
        if record.product != z {
            return Err(format!("n = {n}: product differs from Z_n"));
        }
        let degrees: usize = divisors(n)
            .iter()
            .map(|&d| totient(d) as usize)
            .sum();
        if record.total_degree() != n as usize || degrees != n as usize {
            return Err(format!("n = {n}: factor degrees sum to {}", record.total_degree()));
        }
    }
    Ok("n = 1..=300".into())
}

fn route_equivalence_sweep() -> Outcome {
    let mut comparisons = 0;
    for n in 1..=300u64 {
        let check = cross_check_phi(n).map_err(err)?;
        comparisons += check.routes.len() - 1;
    }
    Ok(format!("n = 1..=300, {comparisons} pairwise comparisons"))
}

fn identity_suites() -> Outcome {
    let wanted = [
        names::LUCAS_MULTIPLICATIVE,
        names::LUCAS_DOUBLE_MINUS,
        names::LUCAS_DOUBLE_PLUS,
        names::ODD_SQUARE,
        names::EVEN_SQUARE,
        names::ZPREAD_SQUARE_ODD,
        names::ZPREAD_SQUARE_EVEN,
        names::ZPREAD_COMPOSITION,
        names::ZPREAD_U_SUBSTITUTION,
        names::PSI_POWER_OF_TWO,
        names::PHI_POWER_OF_TWO_SQUARE,
        names::COMMUTATION,
        names::PHI_EVEN_REFLECTION,
        names::CYCLOTOMIC_COMPLETE,
    ];
    let opts = VerifyOptions {
        sweep: 300,
        ..VerifyOptions::default()
    };
    let selected: Vec<_> = suites(&opts)
        .into_iter()
        .filter(|s| wanted.contains(&s.name))
        .collect();
    if selected.len() != wanted.len() {
        return Err(format!("expected {} suites, found {}", wanted.len(), selected.len()));
    }
    let mut cases = 0;
    for suite in &selected {
        let report = run_suite(suite);
        if let Some(c) = report.first_failure {
            return Err(format!("{}: {} ({})", report.name, c.instance, c.detail));
        }
        cases += report.passed;
    }
    Ok(format!("{} suites, {cases} cases", selected.len()))
}

fn fibonacci_sweep() -> Outcome {
    for n in 1..=200u64 {
        fib_factorization(n).map_err(err)?;
        zpread_at5_identity(n).map_err(err)?;
    }
    Ok("n = 1..=200".into())
}

fn float_roots() -> Outcome {
    let mut worst = 0.0f64;
    for n in 3..=50u64 {
        let check = float_root_check(n, 1e-6).map_err(err)?;
        worst = worst.max(check.max_residual / check.bound);
    }
    Ok(format!("n = 3..=50, worst residual/bound = {worst:.2e}"))
}

fn small_poly() -> impl Strategy<Value = IntPoly> {
    prop::collection::vec(-1_000_000i64..=1_000_000, 0..=16).prop_map(|c| IntPoly::from_i64s(&c))
}

fn nonzero_poly() -> impl Strategy<Value = IntPoly> {
    small_poly().prop_filter("nonzero", |q| !q.is_zero())
}

fn run_property<S: Strategy>(
    strategy: S,
    test: impl Fn(S::Value) -> Result<(), TestCaseError>,
) -> Result<(), String> {
    let mut runner = TestRunner::new(Config {
        cases: 1000,
        failure_persistence: None,
        ..Config::default()
    });
    runner.run(&strategy, test).map_err(|e| e.to_string())
}

fn kernel_properties() -> Outcome {
    run_property((small_poly(), small_poly(), small_poly()), |(a, b, c)| {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!((&a + &b) + &c, &a + (&b + &c));
        prop_assert_eq!((&a * &b) * &c, &a * (&b * &c));
        prop_assert_eq!(&a * (&b + &c), &a * &b + &a * &c);
        prop_assert_eq!(&a * &IntPoly::one(), a.clone());
        prop_assert_eq!(&a + &IntPoly::zero(), a.clone());
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(&a + &(-&a), IntPoly::zero());
        Ok(())
    })
    .map_err(|e| format!("ring axioms: {e}"))?;

    run_property((small_poly(), nonzero_poly()), |(a, q)| {
        let product = &a * &q;
        prop_assert_eq!(product.div_exact(&q).map_err(|e| TestCaseError::fail(e.to_string()))?, a);
        Ok(())
    })
    .map_err(|e| format!("div_exact round-trip: {e}"))?;

    let half = prop::collection::vec(-1_000_000i64..=1_000_000, 1..=20)
        .prop_filter("nonzero leading term", |h| *h.last().unwrap() != 0);
    run_property(half, |h| {
        // mirror the upper half h = [c_0, .., c_m] into a palindrome
        let m = h.len() - 1;
        let mut full = vec![0i64; 2 * m + 1];
        for (k, &c) in h.iter().enumerate() {
            full[m + k] = c;
            full[m - k] = c;
        }
        let pal = IntPoly::from_i64s(&full);
        let fold = palindrome_fold(&pal).map_err(|e| TestCaseError::fail(e.to_string()))?;
        prop_assert_eq!(fold.half_degree(), m);
        prop_assert_eq!(fold.unfold(), pal);
        let direct = PalindromeFold::from_lucas_coeffs(h.iter().map(|&c| BigInt::from(c)).collect());
        prop_assert_eq!(direct, fold);
        Ok(())
    })
    .map_err(|e| format!("fold round-trip: {e}"))?;

    let wide = || prop::collection::vec(any::<i64>(), 1..=96).prop_map(|c| IntPoly::from_i64s(&c));
    run_property((wide(), wide(), 2usize..=40), |(a, b, threshold)| {
        let reference = a.mul_schoolbook(&b);
        prop_assert_eq!(a.mul_divide_and_conquer(&b, threshold), reference.clone());
        prop_assert_eq!(a.mul(&b), reference);
        Ok(())
    })
    .map_err(|e| format!("schoolbook vs divide-and-conquer: {e}"))?;

    Ok("4 properties x 1000 cases".into())
}

fn main() -> ExitCode {
    let criteria = [
        Criterion {
            id: 1,
            title: "golden tables",
            budget: Duration::from_secs(1),
            run: golden_tables,
        },
        Criterion {
            id: 2,
            title: "zpread factorization, n <= 300",
            budget: Duration::from_secs(60),
            run: zpread_factorization_sweep,
        },
        Criterion {
            id: 3,
            title: "phi route equivalence, n <= 300",
            budget: Duration::from_secs(60),
            run: route_equivalence_sweep,
        },
        Criterion {
            id: 4,
            title: "identity suites",
            budget: Duration::from_secs(120),
            run: identity_suites,
        },
        Criterion {
            id: 5,
            title: "Fibonacci primitive parts, n <= 200",
            budget: Duration::from_secs(10),
            run: fibonacci_sweep,
        },
        Criterion {
            id: 6,
            title: "float root check, tol 1e-6",
            budget: Duration::from_secs(5),
            run: float_roots,
        },
        Criterion {
            id: 7,
            title: "kernel properties",
            budget: Duration::from_secs(30),
            run: kernel_properties,
        },
    ];

    let mut failures = 0;
    for c in &criteria {
        let start = Instant::now();
        let outcome = (c.run)();
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(detail) if elapsed > c.budget => Err(format!(
                "{detail}, but took {elapsed:.2?} (budget {:?})",
                c.budget
            )),
            other => other,
        };
        match outcome {
            Ok(detail) => println!("criterion {}: PASS  {} [{detail}] ({elapsed:.2?})", c.id, c.title),
            Err(detail) => {
                failures += 1;
                println!("criterion {}: FAIL  {} [{detail}] ({elapsed:.2?})", c.id, c.title);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failures, criteria.len());
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
