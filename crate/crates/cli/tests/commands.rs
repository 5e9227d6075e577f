use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
}

fn minterp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_minterp"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn report(args: &[&str]) -> Value {
    let out = minterp(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("report is json")
}

fn path(name: &str) -> String {
    fixture(name).to_string_lossy().into_owned()
}

#[test]
fn solve_disk_fixtures() {
    let r = report(&["solve-disk", &path("schwarz.json")]);
    assert!((r["results"]["m"].as_f64().unwrap() - 0.5).abs() < 1e-9);
    assert_eq!(r["command"], "solve-disk");
    assert_eq!(r["seed"], 0xA11CE);
    assert_eq!(r["inputs_digest"].as_str().unwrap().len(), 64);

    let r = report(&["solve-disk", &path("zero_values.json")]);
    assert_eq!(r["results"]["m"].as_f64().unwrap(), 0.0);
    assert!(r["results"]["certificate"]["trivial"].as_bool().unwrap());

    let r = report(&["solve-disk", &path("blaschke_three.json")]);
    assert!((r["results"]["m"].as_f64().unwrap() - 1.0).abs() < 1e-6);
    assert_eq!(
        r["results"]["blaschke"]["zeros"].as_array().unwrap().len(),
        2
    );

    let r = report(&["solve-disk", &path("single_point.json")]);
    assert!(r["results"]["blaschke"]["zeros"]
        .as_array()
        .unwrap()
        .is_empty());
}

#[test]
fn malformed_input_exits_with_two() {
    assert_eq!(
        minterp(&["solve-disk", &path("outside_disk.json")])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        minterp(&["solve-disk", &path("missing.json")])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(minterp(&["extend", "1"]).status.code(), Some(2));
    let bad_tol = minterp(&["solve-disk", &path("schwarz.json"), "--tol-norm", "-1"]);
    assert_eq!(bad_tol.status.code(), Some(2));
}

#[test]
fn subproblem_fixtures() {
    let r = report(&["subproblems", &path("moebius_three.json")]);
    let minimal = &r["results"]["minimal_sufficient"];
    assert_eq!(minimal, &serde_json::json!([[0, 1], [0, 2], [1, 2]]));

    let r = report(&["subproblems", &path("schwarz.json")]);
    assert_eq!(
        r["results"]["minimal_sufficient"],
        serde_json::json!([[0, 1]])
    );

    let r = report(&["subproblems", &path("single_point.json")]);
    assert_eq!(r["results"]["minimal_sufficient"], serde_json::json!([[0]]));
}

#[test]
fn extend_cubic() {
    let r = report(&["extend", "3", "--grid", "64"]);
    assert_eq!(
        r["results"]["candidate"],
        serde_json::json!({ "bi": [[1, 1, 2.0, 0.0]] })
    );
    assert!((r["results"]["sup_norm"].as_f64().unwrap() - 1.0).abs() < 1e-6);
}

#[test]
fn hull_excludes_by_first_coordinate() {
    let r = report(&["hull", "--point", "0.9,0,0,0", &path("torus.json")]);
    let v = &r["results"]["verdict"];
    assert_eq!(v["verdict"], "excluded");
    assert_eq!(
        v["witness"],
        serde_json::json!({ "bi": [[1, 0, 1.0, 0.0]] })
    );

    let r = report(&["hull", "--point", "0.3,0,0.3,0", &path("torus.json")]);
    assert_eq!(r["results"]["verdict"]["verdict"], "not_excluded");
}

#[test]
fn scan_writes_csv() {
    let csv = std::env::temp_dir().join(format!("minterp-scan-{}.csv", std::process::id()));
    let r = report(&[
        "scan",
        &path("sqrt2_z1.json"),
        "--grid",
        "16",
        "--csv",
        &csv.to_string_lossy(),
    ]);
    assert!((r["results"]["sup_norm"].as_f64().unwrap() - 2f64.sqrt()).abs() < 1e-9);
    let text = std::fs::read_to_string(&csv).unwrap();
    let _ = std::fs::remove_file(&csv);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("theta,alpha,beta,modulus"));
    assert_eq!(lines.count(), 17 * 16 * 16);
}

#[test]
fn kernels_on_cubic_nodes() {
    let r = report(&[
        "kernels",
        &path("arc_measure.json"),
        &path("cubic_nodes.json"),
        "--degrees",
        "8,16,32",
    ]);
    let degrees = r["results"]["degrees"].as_array().unwrap();
    assert_eq!(degrees.len(), 3);
    let mut last = 0.0;
    for d in degrees {
        let n = d["restricted_norm"].as_f64().unwrap();
        assert!(n <= 1.0 + 1e-9 && n >= last - 1e-9);
        last = n;
    }
    for g in r["results"]["growth"].as_array().unwrap() {
        assert_eq!(g["class"], "converges");
    }
}

#[test]
fn reports_are_reproducible() {
    let args = ["solve-disk", &path("blaschke_three.json")];
    let a = minterp(&args).stdout;
    let b = minterp(&args).stdout;
    assert_eq!(a, b);
}
