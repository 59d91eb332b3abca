//! End-to-end runs of the `hkinv` binary.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data").join(name)
}

fn hkinv(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hkinv"))
        .args(args)
        .env("RUST_LOG", "error")
        .output()
        .expect("binary runs")
}

fn run_ok(args: &[&str]) -> String {
    let out = hkinv(args);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn json(args: &[&str]) -> serde_json::Value {
    serde_json::from_str(&run_ok(args)).unwrap()
}

/// Data rows of a CSV file written by `ehk`, without comments and header.
fn csv_rows(path: &Path) -> (Vec<String>, Vec<Vec<String>>) {
    let text = std::fs::read_to_string(path).unwrap();
    let mut lines = text.lines().filter(|l| !l.starts_with('#'));
    let header = lines.next().unwrap().split(',').map(String::from).collect();
    let rows = lines.map(|l| l.split(',').map(String::from).collect()).collect();
    (header, rows)
}

const CSVS: [&str; 5] = [
    "ehk_normalized.csv",
    "rr_normalized.csv",
    "gaps.csv",
    "f_curves.csv",
    "coefficients.csv",
];

#[test]
fn length_of_maximal_ideal() {
    assert_eq!(run_ok(&["length", data("fermat2.json").to_str().unwrap()]).trim(), "1");
}

#[test]
fn verify_paper_passes() {
    let out = hkinv(&["verify-paper", data("fermat2.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn coefficients_agree_with_oracle() {
    let v = json(&["coeffs", data("fermat2.json").to_str().unwrap(), "--q", "4"]);
    assert_eq!(v["e0"], 48);
    assert_eq!(v["e1"], 18);
    assert_eq!(v["e2"], 4);
    assert_eq!(v["oracle_agrees"], true);
}

#[test]
fn ehk_tables_are_rectangular_and_show_the_gap() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("t");
    run_ok(&[
        "ehk",
        data("fermat2.json").to_str().unwrap(),
        "--e-max",
        "3",
        "--out",
        out.to_str().unwrap(),
    ]);
    for name in CSVS {
        let (header, rows) = csv_rows(&out.join(name));
        assert!(!rows.is_empty(), "{name}");
        assert!(rows.iter().all(|r| r.len() == header.len()), "{name}");
    }
    let (_, gaps) = csv_rows(&out.join("gaps.csv"));
    let g82: i64 = gaps.iter().find(|r| r[0] == "8" && r[1] == "2").unwrap()[2].parse().unwrap();
    assert!(g82 > 0);
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(out.join("report.json")).unwrap()).unwrap();
    assert_eq!(report["rows"].as_array().unwrap().len(), 3);
}

#[test]
fn parameter_ideal_has_no_gaps() {
    let dir = tempfile::tempdir().unwrap();
    run_ok(&[
        "ehk",
        data("plane7.json").to_str().unwrap(),
        "--ideal",
        "P",
        "--e-max",
        "1",
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    let (_, gaps) = csv_rows(&dir.path().join("gaps.csv"));
    assert!(!gaps.is_empty());
    assert!(gaps.iter().all(|r| r[2] == "0"));
}

#[test]
fn empty_report_gives_header_only_csvs() {
    let dir = tempfile::tempdir().unwrap();
    run_ok(&[
        "ehk",
        data("fermat2.json").to_str().unwrap(),
        "--e-max",
        "0",
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    for name in CSVS {
        let (header, rows) = csv_rows(&dir.path().join(name));
        assert!(header.len() >= 3 && rows.is_empty(), "{name}");
    }
}

#[test]
fn json_output_is_deterministic() {
    let ring = data("fermat2.json");
    let args = ["check-thm41", ring.to_str().unwrap(), "--e-max", "2"];
    let a = run_ok(&args);
    assert_eq!(a, run_ok(&args));
    let v: serde_json::Value = serde_json::from_str(&a).unwrap();
    assert!(v.is_object());
}

#[test]
fn inequality_check_passes() {
    run_ok(&["check-ineq", data("fermat2.json").to_str().unwrap(), "--q", "2", "--n-max", "3"]);
}

#[test]
fn exit_code_for_input_errors() {
    assert_eq!(hkinv(&["length", "/nonexistent/ring.json"]).status.code(), Some(2));
    let ring = data("fermat2.json");
    assert_eq!(hkinv(&["length", ring.to_str().unwrap(), "--ideal", "K"]).status.code(), Some(2));
}

#[test]
fn exit_code_for_check_failure() {
    let dir = tempfile::tempdir().unwrap();
    let ring = dir.path().join("planes.json");
    std::fs::write(
        &ring,
        r#"{"char": 7, "vars": ["x","y","z","w"], "relations": ["x*z","x*w","y*z","y*w"],
            "ideals": {"J": ["x+z","y+w"]}, "reduction": "J"}"#,
    )
    .unwrap();
    assert_eq!(hkinv(&["coeffs", ring.to_str().unwrap(), "--q", "7"]).status.code(), Some(1));
}

#[test]
fn exit_code_for_resource_cap() {
    let out = hkinv(&["search", data("fermat2.json").to_str().unwrap(), "--degree-cap", "40"]);
    assert_eq!(out.status.code(), Some(3));
    let partial: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(partial["aborted"].is_string());
}
