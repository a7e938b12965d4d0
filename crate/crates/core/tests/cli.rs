use std::path::PathBuf;
use std::process::{Command, Output};

fn spreadpoly(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_spreadpoly"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = spreadpoly(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn golden(name: &str) -> String {
    let path: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "golden", name].iter().collect();
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

#[test]
fn record_outputs_match_golden_files() {
    let cases: [(&[&str], &str); 7] = [
        (&["--format", "record", "show", "zpread", "3"], "show_zpread_3.jsonl"),
        (&["--format", "record", "show", "phi", "1..=9"], "show_phi_1-9.jsonl"),
        (&["--format", "record", "factor", "6"], "factor_6.jsonl"),
        (&["--format", "record", "factor", "10", "lucas"], "factor_lucas_10.jsonl"),
        (&["--format", "record", "fib", "8"], "fib_8.jsonl"),
        (&["factor", "12"], "factor_12.txt"),
        (&["--format", "record", "verify", "--sweep", "5"], "verify_sweep_5.jsonl"),
    ];
    for (args, file) in cases {
        assert_eq!(stdout(args), golden(file), "{args:?}");
    }
}

#[test]
fn record_output_is_byte_stable() {
    for args in [
        &["--format", "record", "factor", "1..=40"][..],
        &["--format", "record", "fib", "1..=60"][..],
        &["--format", "record", "verify", "--sweep", "8"][..],
    ] {
        assert_eq!(stdout(args).into_bytes(), stdout(args).into_bytes(), "{args:?}");
    }
}

#[test]
fn every_record_line_is_json_with_status() {
    let text = stdout(&["--format", "record", "show", "Phi", "1..=12"]);
    for line in text.lines() {
        let v: serde_json::Value = serde_json::from_str(line).unwrap();
        assert_eq!(v["kind"], "Phi");
        assert_eq!(v["status"], "ok");
    }
    assert_eq!(text.lines().count(), 12);
}

#[test]
fn factor_six_has_expected_degrees() {
    let text = stdout(&["--format", "record", "factor", "6"]);
    let v: serde_json::Value = serde_json::from_str(text.trim()).unwrap();
    let degrees: Vec<usize> = v["factors"]
        .as_array()
        .unwrap()
        .iter()
        .map(|f| f["coefficients"].as_array().unwrap().len() - 1)
        .collect();
    assert_eq!(degrees, [1, 1, 2, 2]);
}

#[test]
fn fib_values() {
    let v: serde_json::Value =
        serde_json::from_str(stdout(&["--format", "record", "fib", "30"]).trim()).unwrap();
    assert_eq!(v["reconstructed"], "832040");
    assert_eq!(stdout(&["fib", "1"]), "F_1 = 1 = 1\n  p_1 = 1\n");
}

#[test]
fn routes_give_identical_output() {
    for family in ["phi", "Phi"] {
        let reference = stdout(&["show", family, "1..=64"]);
        assert_eq!(stdout(&["--route", "fast", "show", family, "1..=64"]), reference);
        assert_eq!(stdout(&["--route", "min", "show", family, "1..=64"]), reference);
    }
    assert_eq!(
        stdout(&["--route", "fast", "factor", "48"]),
        stdout(&["factor", "48"])
    );
}

#[test]
fn usage_errors_exit_nonzero() {
    for args in [
        &["--route", "fast", "fib", "3"][..],
        &["show", "lucas", "5000"][..],
        &["--max-index", "10", "show", "zpread", "11"][..],
        &["show", "zpread", "0"][..],
        &["verify", "--sweep", "0"][..],
        &["verify", "--tol", "0"][..],
        &["show", "nonsense", "3"][..],
    ] {
        let out = spreadpoly(args);
        assert!(!out.status.success(), "{args:?} should fail");
        assert!(!out.stderr.is_empty(), "{args:?} should explain itself");
    }
}

#[test]
fn injected_fault_is_reported() {
    let out = spreadpoly(&["--format", "record", "verify", "--sweep", "12", "--inject-phi-fault", "9"]);
    assert!(!out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let failing: Vec<serde_json::Value> = text
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .filter(|v: &serde_json::Value| v["status"] != "pass")
        .collect();
    assert_eq!(failing.len(), 1);
    assert_eq!(failing[0]["suite"], "phi_n routes agree");
    assert_eq!(failing[0]["counterexample"]["instance"], "n = 9");
}

#[test]
fn bench_reports_finite_timings() {
    let text = stdout(&["bench", "64"]);
    let row = text.lines().nth(1).unwrap();
    let fields: Vec<f64> = row.split_whitespace().map(|f| f.parse().unwrap()).collect();
    assert_eq!(fields[0], 64.0);
    assert!(fields[1..].iter().all(|t| t.is_finite() && *t >= 0.0));
}
