//! End-to-end contract tests for the `cusp` binary: documents in,
//! reports and documents out, exit codes as advertised.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn cusp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cusp"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn write(dir: &Path, name: &str, contents: &str) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, contents).expect("test file written");
    path
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf8 stdout")
}

const NEIL: &str = r#"{"truncation":5,"basis":"taylor","functionals":[[[0,0],[1,0],[0,0],[0,0],[0,0],[0,0]]]}"#;
const SECOND_DERIV: &str = r#"{"truncation":5,"basis":"taylor","functionals":[[[0,0],[0,0],[2,0],[0,0],[0,0],[0,0]]]}"#;
const CONTACT_TWO: &str = r#"{"truncation":7,"basis":"derivative","functionals":[[[0,0],[1,0],[0,0],[0,0],[0,0],[0,0],[0,0],[0,0]],[[0,0],[0,0],[1,0],[0,0],[0,0],[0,0],[0,0],[0,0]]]}"#;
const A_HALF: &str = r#"{"truncation":7,"basis":"taylor","functionals":[[[0,0],[1,0],[0,0],[0,0],[0,0],[0,0],[0,0],[0,0]],[[0,0],[0,0],[-0.5,0],[1,0],[0,0],[0,0],[0,0],[0,0]]]}"#;

fn parse_tau(line: &str) -> (f64, f64) {
    let inner = line
        .trim()
        .strip_prefix("tau=[")
        .and_then(|s| s.strip_suffix(']'))
        .expect("tau line shape");
    let mut parts = inner.split(", ");
    let re: f64 = parts.next().unwrap().parse().unwrap();
    let im: f64 = parts.next().unwrap().parse().unwrap();
    (re, im)
}

#[test]
fn invariants_reports_the_standard_examples() {
    let dir = TempDir::new().unwrap();
    let neil = write(dir.path(), "neil.json", NEIL);
    let out = cusp(&["invariants", neil.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "cod=1 ord=1 con=1 simple=true\nalgebraic=true\n");

    let contact = write(dir.path(), "contact.json", CONTACT_TWO);
    let out = cusp(&["invariants", contact.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "cod=2 ord=2 con=2 simple=false\nalgebraic=true\n");
}

#[test]
fn invariants_flags_non_algebraic_spans() {
    let dir = TempDir::new().unwrap();
    let path = write(dir.path(), "second.json", SECOND_DERIV);
    let out = cusp(&["invariants", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(stdout(&out), "not algebraic\n");
}

#[test]
fn invariants_rejects_malformed_and_short_documents() {
    let dir = TempDir::new().unwrap();
    let bad = write(dir.path(), "bad.json", "{not json");
    let out = cusp(&["invariants", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(!out.stderr.is_empty());

    let short = write(
        dir.path(),
        "short.json",
        r#"{"truncation":3,"basis":"taylor","functionals":[[[0,0],[1,0],[0,0],[0,0]]]}"#,
    );
    let out = cusp(&["invariants", short.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));

    let missing = dir.path().join("absent.json");
    let out = cusp(&["invariants", missing.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn canonical_emits_moduli_parameters() {
    let dir = TempDir::new().unwrap();
    let neil = write(dir.path(), "neil.json", NEIL);
    let out = cusp(&["canonical", neil.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["n"], 0);
    assert_eq!(doc["alphas"].as_array().unwrap().len(), 0);

    let a_half = write(dir.path(), "ahalf.json", A_HALF);
    let out = cusp(&["canonical", a_half.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["n"], 1);
    let alpha = doc["alphas"][0].as_array().unwrap();
    assert!((alpha[0].as_f64().unwrap() - 0.5).abs() < 1e-9);
    assert!(alpha[1].as_f64().unwrap().abs() < 1e-9);
    let coord = doc["coordinates"][0].as_array().unwrap();
    assert!((coord[0].as_f64().unwrap() - 0.5).abs() < 1e-9);

    let contact = write(dir.path(), "contact.json", CONTACT_TWO);
    let out = cusp(&["canonical", contact.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn equiv_finds_twists_and_rejects_distinct_orbits() {
    let dir = TempDir::new().unwrap();
    let a = write(dir.path(), "a.json", r#"{"n":1,"alphas":[[0.5,0]]}"#);
    let b = write(dir.path(), "b.json", r#"{"n":1,"alphas":[[-0.5,0]]}"#);
    let out = cusp(&["equiv", a.to_str().unwrap(), b.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let (re, im) = parse_tau(&stdout(&out));
    assert!((re + 1.0).abs() < 1e-12 && im.abs() < 1e-12);

    let c = write(dir.path(), "c.json", r#"{"n":2,"alphas":[[1,0],[0,1]]}"#);
    let d = write(dir.path(), "d.json", r#"{"n":2,"alphas":[[0,1],[1,0]]}"#);
    let out = cusp(&["equiv", c.to_str().unwrap(), d.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let (re, im) = parse_tau(&stdout(&out));
    assert!(re.abs() < 1e-12 && (im - 1.0).abs() < 1e-12);

    let e = write(dir.path(), "e.json", r#"{"n":2,"alphas":[[1,0],[0,0]]}"#);
    let f = write(dir.path(), "f.json", r#"{"n":2,"alphas":[[1,0],[1,0]]}"#);
    let out = cusp(&["equiv", e.to_str().unwrap(), f.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(4));
    assert_eq!(stdout(&out), "inequivalent\n");

    let g = write(dir.path(), "g.json", r#"{"n":0,"alphas":[]}"#);
    let out = cusp(&["equiv", a.to_str().unwrap(), g.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn pushforward_transports_and_renormalizes() {
    let dir = TempDir::new().unwrap();
    let neil = write(dir.path(), "neil.json", NEIL);
    let scale = write(
        dir.path(),
        "scale.json",
        r#"{"coefficients":[[0,0],[2,0],[0,0],[0,0],[0,0],[0,0]]}"#,
    );
    let out = cusp(&["pushforward", neil.to_str().unwrap(), scale.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["truncation"], 5);
    assert_eq!(doc["basis"], "taylor");
    let row = doc["functionals"][0].as_array().unwrap();
    assert_eq!(row[1][0], 1.0);
    assert_eq!(row[2][0], 0.0);

    let second = write(dir.path(), "second.json", SECOND_DERIV);
    let shift = write(
        dir.path(),
        "shift.json",
        r#"{"coefficients":[[0,0],[1,0],[1,0],[0,0],[0,0],[0,0]]}"#,
    );
    let out = cusp(&["pushforward", second.to_str().unwrap(), shift.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let row = doc["functionals"][0].as_array().unwrap();
    assert!((row[1][0].as_f64().unwrap() - 1.0).abs() < 1e-12);
    assert!((row[2][0].as_f64().unwrap() - 1.0).abs() < 1e-12);

    let constant = write(
        dir.path(),
        "constant.json",
        r#"{"coefficients":[[1,0],[1,0],[0,0],[0,0],[0,0],[0,0]]}"#,
    );
    let out = cusp(&["pushforward", neil.to_str().unwrap(), constant.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn embed_reports_pairs_and_writes_figures() {
    let dir = TempDir::new().unwrap();
    let neil = write(dir.path(), "neil.json", NEIL);
    let csv_path = dir.path().join("out.csv");
    let svg_path = dir.path().join("out.svg");
    let out = cusp(&[
        "embed",
        neil.to_str().unwrap(),
        "--radial-steps",
        "4",
        "--angular-steps",
        "8",
        "--csv",
        csv_path.to_str().unwrap(),
        "--svg",
        svg_path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let report = stdout(&out);
    assert!(report.contains("h1.p=[[0.00000000000e0, 0.00000000000e0], [0.00000000000e0, 0.00000000000e0], [1.00000000000e0, 0.00000000000e0]]"));
    assert!(report.contains("h2.p="));
    let csv = std::fs::read_to_string(&csv_path).unwrap();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines.len(), 33);
    assert_eq!(lines[0], "re_z,im_z,re_w,im_w");
    let svg = std::fs::read_to_string(&svg_path).unwrap();
    assert_eq!(svg.matches("<polyline").count(), 4);

    let contact = write(dir.path(), "contact.json", CONTACT_TWO);
    let out = cusp(&["embed", contact.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn embed_accepts_moduli_documents() {
    let dir = TempDir::new().unwrap();
    let moduli = write(dir.path(), "a0.json", r#"{"n":1,"alphas":[[0,0]]}"#);
    let out = cusp(&["embed", moduli.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let report = stdout(&out);
    let z = "[0.00000000000e0, 0.00000000000e0]";
    let one = "[1.00000000000e0, 0.00000000000e0]";
    assert!(report.contains(&format!("h1.p=[{z}, {z}, {one}, {z}]")));
    assert!(report.contains(&format!("h2.p=[{z}, {z}, {z}, {z}, {z}, {one}, {z}, {z}]")));
}

#[test]
fn decompose_splits_members_over_the_primitive() {
    let dir = TempDir::new().unwrap();
    let neil = write(dir.path(), "neil.json", NEIL);
    let member = write(
        dir.path(),
        "member.json",
        r#"{"coefficients":[[1,0],[0,0],[1,0],[0,0],[1,0],[0,0]]}"#,
    );
    let out = cusp(&["decompose", neil.to_str().unwrap(), member.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let poly = doc["polynomial"].as_array().unwrap();
    assert_eq!(poly.len(), 1);
    assert!((poly[0][0].as_f64().unwrap() - 1.0).abs() < 1e-12);
    let rem = doc["remainder"].as_array().unwrap();
    assert_eq!(rem.len(), 4);
    assert!((rem[0][0].as_f64().unwrap() - 1.0).abs() < 1e-12);
    assert!((rem[2][0].as_f64().unwrap() - 1.0).abs() < 1e-12);

    let outsider = write(
        dir.path(),
        "outsider.json",
        r#"{"coefficients":[[0,0],[1,0],[0,0],[0,0],[0,0],[0,0]]}"#,
    );
    let out = cusp(&["decompose", neil.to_str().unwrap(), outsider.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn outputs_are_byte_deterministic() {
    let dir = TempDir::new().unwrap();
    let a_half = write(dir.path(), "ahalf.json", A_HALF);
    let first = cusp(&["canonical", a_half.to_str().unwrap()]);
    let second = cusp(&["canonical", a_half.to_str().unwrap()]);
    assert_eq!(first.stdout, second.stdout);

    let csv_a = dir.path().join("a.csv");
    let csv_b = dir.path().join("b.csv");
    for path in [&csv_a, &csv_b] {
        let out = cusp(&[
            "embed",
            a_half.to_str().unwrap(),
            "--radial-steps",
            "6",
            "--angular-steps",
            "12",
            "--csv",
            path.to_str().unwrap(),
        ]);
        assert_eq!(out.status.code(), Some(0));
    }
    assert_eq!(
        std::fs::read(&csv_a).unwrap(),
        std::fs::read(&csv_b).unwrap()
    );
}

#[test]
fn tolerance_flag_is_accepted_globally() {
    let dir = TempDir::new().unwrap();
    let neil = write(dir.path(), "neil.json", NEIL);
    let out = cusp(&["invariants", neil.to_str().unwrap(), "--tolerance", "1e-7"]);
    assert_eq!(out.status.code(), Some(0));
    let out = cusp(&["--tolerance", "1e-7", "invariants", neil.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
}
