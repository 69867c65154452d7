use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn dancing(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dancing"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn count(svg: &str, class: &str) -> usize {
    svg.matches(&format!("class=\"{class}\"")).count()
}

fn csv_rows(path: &Path) -> (Vec<String>, Vec<Vec<f64>>) {
    let mut r = csv::Reader::from_path(path).unwrap();
    let head = r.headers().unwrap().iter().map(String::from).collect();
    let rows = r
        .records()
        .map(|rec| rec.unwrap().iter().map(|v| v.parse().unwrap()).collect())
        .collect();
    (head, rows)
}

#[test]
fn verify_writes_fixed_schema_and_exits_zero() {
    let dir = TempDir::new().unwrap();
    let json = dir.path().join("report.json");
    let out = dancing(&["verify", "flat-metric", "--seed", "42", "--samples", "100", "--tol", "1e-8", "--json", path_str(&json)]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(String::from_utf8(out.stdout).unwrap().contains("PASS"));

    let v: Value = serde_json::from_str(&std::fs::read_to_string(&json).unwrap()).unwrap();
    let mut keys: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
    keys.sort_unstable();
    assert_eq!(keys, ["failures", "maxResidual", "measuredConstants", "samples", "seed", "suite", "tol"]);
    assert_eq!(v["suite"], "flat-metric");
    assert_eq!(v["seed"], 42);
    assert_eq!(v["samples"], 100);
    assert!(v["maxResidual"].as_f64().unwrap() < 1e-8);
    assert!(v["failures"].as_array().unwrap().is_empty());
    let lambda = v["measuredConstants"]["lambda"].as_f64().unwrap();
    assert!((lambda - 6.0).abs() < 1e-9, "{lambda}");
}

#[test]
fn verify_is_byte_identical_across_runs() {
    let dir = TempDir::new().unwrap();
    for suite in ["flat-metric", "rigidity-identity", "sextic", "ode", "conics"] {
        let mut bytes = Vec::new();
        for k in 0..2 {
            let json = dir.path().join(format!("{suite}-{k}.json"));
            let out = dancing(&["verify", suite, "--seed", "5", "--samples", "12", "--json", path_str(&json)]);
            assert_eq!(out.status.code(), Some(0), "{suite}");
            bytes.push(std::fs::read(&json).unwrap());
        }
        assert_eq!(bytes[0], bytes[1], "{suite}");
    }
}

#[test]
fn verify_without_json_prints_the_report() {
    let out = dancing(&["verify", "ode", "--seed", "3", "--samples", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["suite"], "ode");
}

#[test]
fn failures_set_exit_code_one() {
    // no floating-point residual reaches this tolerance
    let out = dancing(&["verify", "conics", "--seed", "1", "--samples", "4", "--tol", "1e-300"]);
    assert_eq!(out.status.code(), Some(1));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    let failures = v["failures"].as_array().unwrap();
    assert!(!failures.is_empty());
    for f in failures {
        assert!(f["check"].is_string() && f["inputs"].is_array() && f["residual"].is_number());
    }
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(dancing(&["verify", "nonsense"]).status.code(), Some(2));
    assert_eq!(dancing(&["verify", "ode", "--tol", "-1"]).status.code(), Some(2));
    assert_eq!(dancing(&["plot", "spiral", "--out", "/tmp/never.svg"]).status.code(), Some(2));
    assert_eq!(
        dancing(&["plot", "ellipse-dance", "--b", "2", "--pair-file", "x", "--out", "/tmp/never.svg"]).status.code(),
        Some(2)
    );
    assert_eq!(dancing(&["sample", "nothing", "--out", "/tmp/never.csv"]).status.code(), Some(2));
    let dir = TempDir::new().unwrap();
    let missing = dir.path().join("no-such-dir").join("r.json");
    assert_eq!(dancing(&["verify", "ode", "--samples", "1", "--json", path_str(&missing)]).status.code(), Some(2));
}

#[test]
fn dancing_pair_plot_has_three_lines_and_three_points() {
    let dir = TempDir::new().unwrap();
    let svg = dir.path().join("pair.svg");
    assert_eq!(dancing(&["plot", "dancing-pair", "--out", path_str(&svg)]).status.code(), Some(0));
    let text = std::fs::read_to_string(&svg).unwrap();
    assert!(text.contains("version=\"1.1\"") && !text.contains("<script"));
    assert_eq!(count(&text, "line"), 3);
    assert_eq!(count(&text, "point"), 3);
}

#[test]
fn ellipse_dance_plot_has_two_ellipses_and_turning_point() {
    let dir = TempDir::new().unwrap();
    let svg = dir.path().join("ellipse.svg");
    assert_eq!(dancing(&["plot", "ellipse-dance", "--b", "2", "--out", path_str(&svg)]).status.code(), Some(0));
    let text = std::fs::read_to_string(&svg).unwrap();
    assert_eq!(count(&text, "ellipse"), 2);
    assert_eq!(count(&text, "turning-point"), 1);
}

#[test]
fn conic_dance_plot_has_three_conics_and_six_points() {
    let dir = TempDir::new().unwrap();
    let svg = dir.path().join("conics.svg");
    assert_eq!(dancing(&["plot", "conic-dance", "--out", path_str(&svg)]).status.code(), Some(0));
    let text = std::fs::read_to_string(&svg).unwrap();
    assert_eq!(count(&text, "conic"), 3);
    assert_eq!(count(&text, "point"), 6);
}

#[test]
fn plots_read_pair_files() {
    let dir = TempDir::new().unwrap();
    let pair = dir.path().join("pair.txt");
    // a = (0,0,1), A = x² + y² − 4, b = (3,0,1), B = x² + 2y² − 1
    std::fs::write(&pair, "# a, A\n0 0 1\n1 0 1 0 0 -4\n# b, B\n3 0 1\n1 0 2 0 0 -1\n").unwrap();
    let svg = dir.path().join("c.svg");
    let out = dancing(&["plot", "conic-dance", "--pair-file", path_str(&pair), "--out", path_str(&svg)]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(count(&std::fs::read_to_string(&svg).unwrap(), "conic"), 3);

    std::fs::write(&pair, "1 2 3").unwrap();
    let out = dancing(&["plot", "conic-dance", "--pair-file", path_str(&pair), "--out", path_str(&svg)]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn flat_pair_samples_are_non_incident() {
    let dir = TempDir::new().unwrap();
    let csv_path = dir.path().join("flat.csv");
    assert_eq!(
        dancing(&["sample", "flat-pairs", "--seed", "3", "--count", "10", "--out", path_str(&csv_path)]).status.code(),
        Some(0)
    );
    let (head, rows) = csv_rows(&csv_path);
    assert_eq!(head.len(), 6);
    assert_eq!(rows.len(), 10);
    for r in rows {
        let pl = r[0] * r[3] + r[1] * r[4] + r[2] * r[5];
        assert!(pl.abs() > 1e-6, "{r:?}");
    }
}

#[test]
fn conic_pair_samples_are_non_incident_and_nonsingular() {
    let dir = TempDir::new().unwrap();
    let csv_path = dir.path().join("conic.csv");
    assert_eq!(
        dancing(&["sample", "conic-pairs", "--seed", "3", "--count", "10", "--out", path_str(&csv_path)]).status.code(),
        Some(0)
    );
    let (_, rows) = csv_rows(&csv_path);
    assert_eq!(rows.len(), 10);
    for r in rows {
        let a = [r[0], r[1], r[2]];
        let (a11, a12, a22, a13, a23, a33) = (r[3], r[4], r[5], r[6], r[7], r[8]);
        let m = [[a11, a12, a13], [a12, a22, a23], [a13, a23, a33]];
        let q: f64 = (0..3).flat_map(|i| (0..3).map(move |j| (i, j))).map(|(i, j)| a[i] * m[i][j] * a[j]).sum();
        let det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
        assert!(q.abs() > 1e-6 && det.abs() > 1e-6, "{r:?}");
    }
}

#[test]
fn samples_are_reproducible() {
    let dir = TempDir::new().unwrap();
    for kind in ["flat-pairs", "dancing-quadruples", "conic-pairs", "ellipse-states", "null-tangents", "paths"] {
        let a = dir.path().join(format!("{kind}-a.csv"));
        let b = dir.path().join(format!("{kind}-b.csv"));
        for p in [&a, &b] {
            assert_eq!(dancing(&["sample", kind, "--seed", "9", "--count", "3", "--out", path_str(p)]).status.code(), Some(0));
        }
        assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap(), "{kind}");
    }
}
