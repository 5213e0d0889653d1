//! End-to-end tests of the `teichwp` binary: file formats, config
//! precedence, exit-code contract, and byte-level report determinism.

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

fn teichwp(args: &[&str], cwd: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_teichwp"))
        .args(args)
        .current_dir(cwd)
        .output()
        .expect("binary should run")
}

fn stderr_of(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

/// Reduced-size verify flags that keep every registered check passing.
const FAST: &[&str] = &[
    "--nr", "32", "--ntheta", "64", "--degree", "16", "--trials", "2",
];

fn fast_verify(extra: &[&str], cwd: &Path) -> Output {
    let mut args = vec!["verify"];
    args.extend_from_slice(FAST);
    args.extend_from_slice(extra);
    teichwp(&args, cwd)
}

#[test]
fn verify_report_format_and_exit_zero() {
    let dir = TempDir::new().unwrap();
    let out = fast_verify(&["--out", "report.json"], dir.path());
    assert_eq!(out.status.code(), Some(0), "{}", stderr_of(&out));

    let report: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("report.json")).unwrap())
            .unwrap();
    assert_eq!(report["command"], "verify");
    assert_eq!(report["seed"], 42);
    assert_eq!(report["pass"], true);
    assert_eq!(report["config"]["n_radial"], 32);
    assert_eq!(report["config"]["trials"], 2);
    assert_eq!(
        report["inputs_digest"].as_str().unwrap().len(),
        64,
        "sha-256 hex digest"
    );

    let checks = report["checks"].as_array().unwrap();
    assert!(checks.len() >= 30, "registry size {}", checks.len());
    for c in checks {
        for key in ["check", "value", "bound", "tol", "pass", "anchor", "runtime_ms"] {
            assert!(!c[key].is_null(), "missing {key} in {c}");
        }
        assert_eq!(c["pass"], true, "{}", c["check"]);
        assert_eq!(c["runtime_ms"], 0, "deterministic default timing");
    }
}

#[test]
fn verify_reports_are_byte_identical() {
    let dir = TempDir::new().unwrap();
    let a = fast_verify(&["--out", "a.json"], dir.path());
    let b = fast_verify(&["--out", "b.json"], dir.path());
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(b.status.code(), Some(0));
    let bytes_a = fs::read(dir.path().join("a.json")).unwrap();
    let bytes_b = fs::read(dir.path().join("b.json")).unwrap();
    assert_eq!(bytes_a, bytes_b, "reports must be byte-identical on rerun");
    assert_eq!(
        String::from_utf8_lossy(&a.stdout).replace("a.json", "X"),
        String::from_utf8_lossy(&b.stdout).replace("b.json", "X"),
    );
}

#[test]
fn verify_zero_tolerance_fails_with_exit_one() {
    let dir = TempDir::new().unwrap();
    let out = fast_verify(&["--tol-scale", "0", "--out", "zero.json"], dir.path());
    assert_eq!(out.status.code(), Some(1), "impossible tolerance must fail");

    let report: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("zero.json")).unwrap()).unwrap();
    assert_eq!(report["pass"], false);
    let checks = report["checks"].as_array().unwrap();
    assert!(checks.iter().any(|c| c["pass"] == false));
    // Strict inequalities with zero tolerance still hold.
    let strict = checks
        .iter()
        .find(|c| c["check"] == "annulus_sup_bound_r2.0_t1.5")
        .unwrap();
    assert_eq!(strict["pass"], true);
}

#[test]
fn verify_selected_checks_only() {
    let dir = TempDir::new().unwrap();
    let out = fast_verify(
        &["--check", "cayley_factor", "--check", "wp_gram_diag", "--out", "sel.json"],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(0), "{}", stderr_of(&out));
    let report: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("sel.json")).unwrap()).unwrap();
    let names: Vec<&str> = report["checks"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["check"].as_str().unwrap())
        .collect();
    assert_eq!(names, ["cayley_factor", "wp_gram_diag"]);

    let bad = teichwp(&["verify", "--check", "no_such_check"], dir.path());
    assert_eq!(bad.status.code(), Some(2));
    assert!(stderr_of(&bad).contains("no_such_check"));
}

#[test]
fn verify_usage_errors_exit_two() {
    let dir = TempDir::new().unwrap();
    // Unwritable output location.
    let out = fast_verify(&["--out", "no/such/dir/report.json"], dir.path());
    assert_eq!(out.status.code(), Some(2));
    // Invalid configuration (quadrature too small).
    let out = teichwp(&["verify", "--nr", "2"], dir.path());
    assert_eq!(out.status.code(), Some(2), "{}", stderr_of(&out));
    // Unknown flag (handled by the argument parser).
    let out = teichwp(&["verify", "--bogus"], dir.path());
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn config_file_is_overridden_by_flags() {
    let dir = TempDir::new().unwrap();
    fs::write(
        dir.path().join("cfg.json"),
        r#"{"n_radial": 32, "n_angular": 64, "degree": 16, "seed": 7, "trials": 2}"#,
    )
    .unwrap();
    let out = teichwp(
        &["verify", "--config", "cfg.json", "--seed", "42", "--check", "cayley_factor",
          "--out", "cfg_report.json"],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(0), "{}", stderr_of(&out));
    let report: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("cfg_report.json")).unwrap())
            .unwrap();
    assert_eq!(report["config"]["n_radial"], 32, "file value applies");
    assert_eq!(report["config"]["seed"], 42, "flag beats file");

    fs::write(dir.path().join("typo.json"), r#"{"n_radia": 32}"#).unwrap();
    let out = teichwp(&["verify", "--config", "typo.json"], dir.path());
    assert_eq!(out.status.code(), Some(2), "unknown config key is rejected");
}

#[test]
fn project_reproduces_harmonic_coefficients() {
    let dir = TempDir::new().unwrap();
    fs::write(
        dir.path().join("mu.json"),
        r#"{ "kind": "harmonic_beltrami", "offset": 1, "re": [0.25], "im": [-0.5] }"#,
    )
    .unwrap();
    let out = teichwp(
        &["project", "--input", "mu.json", "--out", "proj.json",
          "--nr", "24", "--ntheta", "64", "--degree", "8"],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(0), "{}", stderr_of(&out));

    let proj: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("proj.json")).unwrap()).unwrap();
    assert_eq!(proj["kind"], "harmonic_beltrami");
    assert_eq!(proj["offset"], 0);
    let re = proj["re"].as_array().unwrap();
    let im = proj["im"].as_array().unwrap();
    assert_eq!(re.len(), 9);
    for n in 0..re.len() {
        let (want_re, want_im) = if n == 1 { (0.25, -0.5) } else { (0.0, 0.0) };
        assert!((re[n].as_f64().unwrap() - want_re).abs() < 1e-12, "re[{n}]");
        assert!((im[n].as_f64().unwrap() - want_im).abs() < 1e-12, "im[{n}]");
    }
}

#[test]
fn project_zero_input_gives_zero_output() {
    let dir = TempDir::new().unwrap();
    fs::write(
        dir.path().join("zero.json"),
        r#"{ "kind": "harmonic_beltrami", "offset": 0, "re": [0.0], "im": [0.0] }"#,
    )
    .unwrap();
    let out = teichwp(
        &["project", "--input", "zero.json", "--out", "pzero.json",
          "--nr", "16", "--ntheta", "48", "--degree", "6"],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(0), "{}", stderr_of(&out));
    let proj: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("pzero.json")).unwrap()).unwrap();
    for c in proj["re"].as_array().unwrap().iter().chain(proj["im"].as_array().unwrap()) {
        assert!(c.as_f64().unwrap().abs() < 1e-14);
    }
}

#[test]
fn project_grid_csv_annihilates_moment_free_part() {
    let dir = TempDir::new().unwrap();
    let nodes_out = teichwp(
        &["nodes", "--nr", "16", "--ntheta", "48", "--out", "nodes.csv"],
        dir.path(),
    );
    assert_eq!(nodes_out.status.code(), Some(0));

    // Sample 0.5 (1-|z|^2)^2 conj(z) + 0.25 (|z|^2 - 1/2) at the nodes: the
    // radial term has vanishing holomorphic moments, so projection returns
    // exactly the harmonic part.
    let mut values = String::from("index,re,im\n");
    let mut rdr = csv::Reader::from_path(dir.path().join("nodes.csv")).unwrap();
    for (i, record) in rdr.records().enumerate() {
        let record = record.unwrap();
        let x: f64 = record[1].parse().unwrap();
        let y: f64 = record[2].parse().unwrap();
        let u = x * x + y * y;
        let w = (1.0 - u) * (1.0 - u);
        let re = 0.5 * w * x + 0.25 * (u - 0.5);
        let im = -0.5 * w * y;
        values.push_str(&format!("{i},{re},{im}\n"));
    }
    fs::write(dir.path().join("values.csv"), values).unwrap();

    let out = teichwp(
        &["project", "--input", "values.csv", "--out", "pgrid.json",
          "--nr", "16", "--ntheta", "48", "--degree", "6"],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(0), "{}", stderr_of(&out));
    let proj: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("pgrid.json")).unwrap()).unwrap();
    let re = proj["re"].as_array().unwrap();
    let im = proj["im"].as_array().unwrap();
    for n in 0..re.len() {
        let want = if n == 1 { 0.5 } else { 0.0 };
        assert!((re[n].as_f64().unwrap() - want).abs() < 1e-10, "re[{n}]");
        assert!(im[n].as_f64().unwrap().abs() < 1e-10, "im[{n}]");
    }
    let summary = String::from_utf8_lossy(&out.stdout).into_owned();
    assert!(summary.contains("residual moment sup"), "{summary}");
}

#[test]
fn project_rejects_bad_inputs_with_exit_two() {
    let dir = TempDir::new().unwrap();

    // NaN value: parse error names the line.
    fs::write(dir.path().join("nan.csv"), "index,re,im\n0,0.1,0.0\n1,NaN,0.0\n").unwrap();
    let out = teichwp(
        &["project", "--input", "nan.csv", "--nr", "8", "--ntheta", "16"],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(2));
    let err = stderr_of(&out);
    assert!(err.contains("line 3") && err.contains("non-finite"), "{err}");

    // Row count must match the rule.
    fs::write(dir.path().join("short.csv"), "index,re,im\n0,0.1,0.0\n").unwrap();
    let out = teichwp(
        &["project", "--input", "short.csv", "--nr", "8", "--ntheta", "16"],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr_of(&out).contains("expected 128 rows"), "{}", stderr_of(&out));

    // Wrong coefficient kind.
    fs::write(
        dir.path().join("laurent.json"),
        r#"{ "kind": "laurent", "offset": -2, "re": [1.0], "im": [0.0] }"#,
    )
    .unwrap();
    let out = teichwp(
        &["project", "--input", "laurent.json", "--nr", "8", "--ntheta", "16"],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(2));

    // Malformed JSON.
    fs::write(dir.path().join("broken.json"), "{ not json").unwrap();
    let out = teichwp(
        &["project", "--input", "broken.json", "--nr", "8", "--ntheta", "16"],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn annulus_bound_table_format_and_determinism() {
    let dir = TempDir::new().unwrap();
    let args = [
        "annulus-bound", "--r", "2.0", "--t", "1.5", "--trials", "5",
        "--seed", "7", "--nr", "24", "--ntheta", "64", "--out", "table.csv",
    ];
    let out = teichwp(&args, dir.path());
    assert_eq!(out.status.code(), Some(0), "{}", stderr_of(&out));
    let stdout = String::from_utf8_lossy(&out.stdout).into_owned();
    assert!(stdout.contains("max_ratio"), "{stdout}");

    let table = fs::read_to_string(dir.path().join("table.csv")).unwrap();
    let mut lines = table.lines();
    assert_eq!(lines.next(), Some("trial,sup,norm,bound,ratio"));
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 5);
    for (k, row) in rows.iter().enumerate() {
        let fields: Vec<&str> = row.split(',').collect();
        assert_eq!(fields.len(), 5);
        assert_eq!(fields[0], k.to_string());
        let ratio: f64 = fields[4].parse().unwrap();
        assert!(ratio.is_finite() && ratio <= 1.0, "trial {k} ratio {ratio}");
    }

    let mut args2 = args;
    *args2.last_mut().unwrap() = "table2.csv";
    let rerun = teichwp(&args2, dir.path());
    assert_eq!(rerun.status.code(), Some(0), "{}", stderr_of(&rerun));
    assert_eq!(
        fs::read(dir.path().join("table.csv")).unwrap(),
        fs::read(dir.path().join("table2.csv")).unwrap(),
        "same seed must give a byte-identical table"
    );
}

#[test]
fn annulus_bound_rejects_bad_parameters() {
    let dir = TempDir::new().unwrap();
    let out = teichwp(&["annulus-bound", "--r", "2.0", "--t", "2.0"], dir.path());
    assert_eq!(out.status.code(), Some(2), "empty range t = r");
    let out = teichwp(
        &["annulus-bound", "--r", "2.0", "--t", "1.5", "--trials", "0"],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(2), "zero trials");
    let out = teichwp(&["annulus-bound", "--r", "0.9", "--t", "0.5"], dir.path());
    assert_eq!(out.status.code(), Some(2), "annulus radii must exceed 1");
}

#[test]
fn nodes_csv_weights_sum_to_disk_area() {
    let dir = TempDir::new().unwrap();
    let out = teichwp(
        &["nodes", "--nr", "20", "--ntheta", "40", "--out", "n.csv"],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(0), "{}", stderr_of(&out));
    let text = fs::read_to_string(dir.path().join("n.csv")).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("index,re,im,weight"));
    let mut total = 0.0;
    let mut count = 0;
    for line in lines {
        let fields: Vec<&str> = line.split(',').collect();
        total += fields[3].parse::<f64>().unwrap();
        count += 1;
    }
    assert_eq!(count, 20 * 40);
    assert!((total - std::f64::consts::PI).abs() < 1e-12, "area {total}");
}

#[test]
fn gram_matrix_matches_closed_form() {
    let dir = TempDir::new().unwrap();
    fs::write(
        dir.path().join("e1.json"),
        r#"{ "kind": "harmonic_beltrami", "offset": 0, "re": [1.0], "im": [0.0] }"#,
    )
    .unwrap();
    fs::write(
        dir.path().join("e2.json"),
        r#"{ "kind": "harmonic_beltrami", "offset": 1, "re": [1.0], "im": [0.0] }"#,
    )
    .unwrap();
    let out = teichwp(
        &["gram", "--input", "e1.json", "--input", "e2.json", "--out", "g.csv"],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(0), "{}", stderr_of(&out));

    let text = fs::read_to_string(dir.path().join("g.csv")).unwrap();
    let mut entries = std::collections::HashMap::new();
    for line in text.lines().skip(1) {
        let f: Vec<&str> = line.split(',').collect();
        entries.insert(
            (f[0].to_string(), f[1].to_string()),
            (f[2].parse::<f64>().unwrap(), f[3].parse::<f64>().unwrap()),
        );
    }
    let pi = std::f64::consts::PI;
    // Diagonal entries are 2 pi / ((n+1)(n+2)(n+3)): pi/3 and pi/12.
    assert!((entries[&("0".into(), "0".into())].0 - pi / 3.0).abs() < 1e-14);
    assert!((entries[&("1".into(), "1".into())].0 - pi / 12.0).abs() < 1e-14);
    assert!(entries[&("0".into(), "1".into())].0.abs() < 1e-14);
    assert!(entries[&("1".into(), "0".into())].1.abs() < 1e-14);
    let stdout = String::from_utf8_lossy(&out.stdout).into_owned();
    assert!(stdout.contains("min_eigenvalue"), "{stdout}");
}
