// Runs every identity suite over a small sweep and prints a report.

use spreadpoly::verify::{verify, VerifyOptions};
use spreadpoly::{Error, Result};

pub fn run_example() -> Result<()> {
    let report = verify(&VerifyOptions {
        sweep: 24,
        ..VerifyOptions::default()
    });
    for suite in &report.suites {
        let mark = if suite.ok() { "ok  " } else { "FAIL" };
        println!("{mark} {:>4} cases  {}", suite.passed + suite.failed, suite.name);
    }
    if let Some((name, c)) = report.first_failure() {
        return Err(Error::VerificationFailure {
            n: 0,
            detail: format!("{name}: {} ({})", c.instance, c.detail),
        });
    }

    // with a deliberately corrupted reference route the sweep must fail
    let faulty = verify(&VerifyOptions {
        sweep: 24,
        corrupt_phi: Some(9),
        ..VerifyOptions::default()
    });
    let (name, c) = faulty.first_failure().expect("fault must be detected");
    println!("injected fault caught by '{name}' at {}", c.instance);
    Ok(())
}

fn main() -> Result<()> {
    run_example()
}
