use std::process::Command;

use deformed_fock::cli::report::Report;

fn dfock(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_dfock")).args(args).output().unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

#[test]
fn verify_monotone_passes() {
    let (code, stdout, _) = dfock(&["verify", "--model", "monotone", "--window", "0..3", "--nmax", "3"]);
    assert_eq!(code, 0);
    let r: Report = serde_json::from_str(&stdout).unwrap();
    assert_eq!(r.schema, "1");
    assert!(r.pass && r.checks.iter().all(|c| c.residual <= c.tolerance));
}

#[test]
fn verify_fermi_and_boolean_names() {
    let (code, stdout, _) = dfock(&["verify", "--model", "fermi", "--nmax", "5"]);
    assert_eq!(code, 0);
    assert!(stdout.contains("‖P^(5)‖ = 120"));
    let (code, stdout, _) = dfock(&["verify", "--model", "boolean"]);
    assert_eq!(code, 0);
    assert!(stdout.contains("\"P^(2)=0\""));
}

#[test]
fn failing_check_exits_one() {
    let (code, stdout, _) = dfock(&["verify", "--model", "bose", "--tol", "1e-300"]);
    assert_eq!(code, 1);
    let r: Report = serde_json::from_str(&stdout).unwrap();
    assert!(!r.pass);
}

#[test]
fn config_errors_exit_two() {
    assert_eq!(dfock(&["verify", "--model", "anyonic"]).0, 2);
    assert_eq!(dfock(&["verify", "--window", "3..1"]).0, 2);
    assert_eq!(dfock(&["frobnicate"]).0, 2);
    let (code, _, err) = dfock(&["reduce", "c()"]);
    assert_eq!(code, 2);
    assert!(err.contains("offset 2"), "{err}");
}

#[test]
fn ergodic_csv() {
    let (code, stdout, _) = dfock(&[
        "ergodic", "--model", "monotone", "--observable", "a(0)c(0)", "--target", "vacuum-projection", "--n", "1..25",
    ]);
    assert_eq!(code, 0);
    let mut lines = stdout.lines();
    assert_eq!(lines.next(), Some("n,distance,bound"));
    assert_eq!(lines.clone().count(), 25);
    assert!(lines.all(|l| l.split(',').nth(1) == Some("1.000000000000")));

    let (code, stdout, _) = dfock(&["ergodic", "--model", "boolean", "--observable", "rank-one e_0,e_#", "--n", "1..400"]);
    assert_eq!(code, 0);
    for line in stdout.lines().skip(1) {
        let f: Vec<&str> = line.split(',').collect();
        let n: f64 = f[0].parse().unwrap();
        let d: f64 = f[1].parse().unwrap();
        assert!((d - 1.0 / n.sqrt()).abs() < 1e-9);
    }

    let (code, stdout, _) = dfock(&["ergodic", "--model", "free", "--observable", "c(0)a(1)", "--n", "1..10"]);
    assert_eq!(code, 0);
    for line in stdout.lines().skip(1) {
        let f: Vec<f64> = line.split(',').map(|x| x.parse().unwrap()).collect();
        assert!(f[1] <= f[2] + 1e-12);
    }
}

#[test]
fn ergodic_overflow_names_required_window() {
    let (code, _, err) = dfock(&["ergodic", "--observable", "a(0)c(0)", "--window", "0..3", "--n", "1..10"]);
    assert_eq!(code, 2);
    assert!(err.contains("required window 0..9"), "{err}");
}

#[test]
fn reduce_lines() {
    assert_eq!(dfock(&["reduce", "a(1)c(1)a(3)"]).1, "a(3); ω=0; ω_∞=0\n");
    assert!(dfock(&["reduce", "2*1 + 3*a(5)c(5)", "--gamma", "0.5"]).1.trim_end().ends_with("φ=3.5"));
    assert!(dfock(&["reduce", "c(2)c(1)"]).1.starts_with("0;"));
    assert_eq!(dfock(&["reduce", "1", "--gamma", "1.5"]).0, 2);
}

#[test]
fn config_file_and_report_aggregation() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    std::fs::write(&cfg, "# monotone states\nmodel=monotone\nobservable=2 + 3*a(5)c(5)\ngamma=0.5\nseed=4\n").unwrap();
    let a = dir.path().join("a.json");
    let (code, _, _) = dfock(&["states", "--config", cfg.to_str().unwrap(), "--out", a.to_str().unwrap()]);
    assert_eq!(code, 0);
    let r: Report = serde_json::from_str(&std::fs::read_to_string(&a).unwrap()).unwrap();
    assert_eq!(r.seed, 4);
    assert_eq!(r.values["φ_0.5"], "3.5");

    let b = dir.path().join("b.json");
    let (code, _, _) = dfock(&["states", "--config", cfg.to_str().unwrap(), "--model", "boolean", "--observable", "2 + a(0)c(0)", "--out", b.to_str().unwrap()]);
    assert_eq!(code, 0);
    let (code, stdout, _) = dfock(&["report", a.to_str().unwrap(), b.to_str().unwrap()]);
    assert_eq!(code, 0);
    let summary: Report = serde_json::from_str(&stdout).unwrap();
    assert_eq!(summary.checks.len(), 2);
    assert!(summary.pass);
}

#[test]
fn reports_are_byte_stable() {
    let args = ["verify", "--model", "free", "--seed", "17"];
    let (_, first, _) = dfock(&args);
    let (_, second, _) = dfock(&args);
    assert_eq!(first, second);
    assert!(first.contains("\"seed\": 17"));
}
