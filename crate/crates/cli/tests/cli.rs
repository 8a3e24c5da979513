use std::path::Path;
use std::process::{Command, Output};

use sedgeo_core::golden::{GoldenFile, GOLDEN_DIR_ENV};
use serde_json::Value;

fn sedgeo(args: &[&str], golden: Option<&Path>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_sedgeo"));
    cmd.args(args).env_remove(GOLDEN_DIR_ENV);
    if let Some(dir) = golden {
        cmd.env(GOLDEN_DIR_ENV, dir);
    }
    cmd.output().expect("spawn sedgeo")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_str(&stdout(o)).expect("valid json")
}

fn golden_copy() -> tempfile::TempDir {
    let dir = tempfile::tempdir().unwrap();
    for f in GoldenFile::ALL {
        std::fs::write(dir.path().join(f.file_name()), f.embedded()).unwrap();
    }
    dir
}

fn strip_timings(v: &mut Value) {
    match v {
        Value::Object(m) => {
            m.remove("timing_ms");
            m.values_mut().for_each(strip_timings);
        }
        Value::Array(a) => a.iter_mut().for_each(strip_timings),
        _ => {}
    }
}

#[test]
fn verify_table_passes() {
    let o = sedgeo(&["zd", "verify-table"], None);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("84/84 matched"));
}

#[test]
fn annihilator_dimensions() {
    let o = sedgeo(&["--format", "json", "zd", "annihilator", "e1+e10"], None);
    assert_eq!(json(&o)["details"]["dimension"], 4);
    let o = sedgeo(
        &[
            "--format",
            "json",
            "zd",
            "annihilator",
            "e1",
            "--level",
            "3",
        ],
        None,
    );
    assert_eq!(json(&o)["details"]["dimension"], 0);
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["zd", "annihilator", "e1+x"][..],
        &["sos", "verify", "--cert", "1/2"],
        &["curvature", "ricci", "--space", "Q"],
        &["curvature", "sectional", "--r", "4/9", "--plane", "0", "4"],
        &["frobnicate"],
    ] {
        assert_eq!(sedgeo(args, None).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn curvature_examples() {
    let o = sedgeo(&["curvature", "ricci", "--space", "ZD", "--r", "5/9"], None);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("Einstein with constant 25/6"));
    let o = sedgeo(
        &["curvature", "sectional", "--r", "4/9", "--plane", "3", "4"],
        None,
    );
    assert!(stdout(&o).contains("kappa(pi_34) = 0"));
    let o = sedgeo(&["curvature", "ricci", "--space", "Z"], None);
    assert_eq!(o.status.code(), Some(0));
    let o = sedgeo(&["curvature", "metric", "--origin", "e4+e13"], None);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn poly_emits_the_golden_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("f.txt");
    let o = sedgeo(
        &["curvature", "poly", "--emit", path.to_str().unwrap()],
        None,
    );
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("285 monomials matched"));
    assert_eq!(
        std::fs::read_to_string(path).unwrap(),
        GoldenFile::FrPoly.embedded()
    );
}

#[test]
fn decompose_emits_squares() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("sq.txt");
    let o = sedgeo(
        &[
            "sos",
            "decompose",
            "--cert",
            "0",
            "--emit",
            path.to_str().unwrap(),
        ],
        None,
    );
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(path).unwrap();
    assert!(text.lines().count() > 0 && text.lines().all(|l| l.contains(")^2")));
}

#[test]
fn sos_commands_pass() {
    for args in [
        &["sos", "verify", "--cert", "0"][..],
        &["sos", "verify", "--cert", "4/9"],
        &["sos", "interval"],
    ] {
        assert_eq!(sedgeo(args, None).status.code(), Some(0), "{args:?}");
    }
}

#[test]
fn corrupted_table_fails_criterion_one() {
    let dir = golden_copy();
    let table = GoldenFile::Table1
        .embedded()
        .replacen("(e1+e10,e4-e15)", "(e1+e10,e4+e15)", 1);
    std::fs::write(dir.path().join("table1.txt"), table).unwrap();
    let o = sedgeo(&["--format", "json", "reproduce"], Some(dir.path()));
    assert_eq!(o.status.code(), Some(1));
    let v = json(&o);
    let criteria = v["details"]["criteria"].as_array().unwrap();
    let failing: Vec<u64> = criteria
        .iter()
        .filter(|c| c["status"] != "pass")
        .map(|c| c["id"].as_u64().unwrap())
        .collect();
    assert_eq!(failing, vec![1]);
    assert_eq!(criteria[0]["details"]["missing"][0], "(e1+e10,e4+e15)");
}

/// Moves one pair from the `1/2` set to the `-1/2` set and one back, so the
/// set sizes survive and only two coefficients change sign.
fn swap_pairs(text: &str) -> String {
    let first = |prefix: &str| {
        let line = text.lines().find(|l| l.starts_with(prefix)).unwrap();
        line.split_once(':')
            .unwrap()
            .1
            .split_whitespace()
            .next()
            .unwrap()
            .to_string()
    };
    let (pos, neg) = (first("R0 1/2:"), first("R0 -1/2:"));
    text.lines()
        .map(|l| {
            if l.starts_with("R0 1/2:") {
                l.replacen(&pos, &neg, 1)
            } else if l.starts_with("R0 -1/2:") {
                l.replacen(&neg, &pos, 1)
            } else {
                l.to_string()
            }
        })
        .collect::<Vec<_>>()
        .join("\n")
        + "\n"
}

#[test]
fn fault_injected_certificate_is_localized() {
    let dir = golden_copy();
    let bad = swap_pairs(GoldenFile::CertR0.embedded());
    assert_ne!(bad, GoldenFile::CertR0.embedded());
    std::fs::write(dir.path().join("cert_r0.txt"), bad).unwrap();
    let o = sedgeo(
        &["--format", "json", "sos", "verify", "--cert", "0"],
        Some(dir.path()),
    );
    assert_eq!(o.status.code(), Some(1));
    let v = json(&o);
    let mismatch = v["details"]["first_mismatch"].as_str().unwrap();
    assert!(
        mismatch.starts_with("identity mismatch at monomial"),
        "{mismatch}"
    );
    let o = sedgeo(&["sos", "interval"], Some(dir.path()));
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn reproduce_json_schema_and_determinism() {
    let a = sedgeo(&["--format", "json", "reproduce"], None);
    assert_eq!(a.status.code(), Some(0));
    let mut va = json(&a);
    assert_eq!(va["command"], "reproduce");
    assert_eq!(va["status"], "pass");
    assert!(va["timing_ms"].is_u64());
    let criteria = va["details"]["criteria"].as_array().unwrap();
    assert_eq!(criteria.len(), 11);
    for (i, c) in criteria.iter().enumerate() {
        assert_eq!(c["id"], i as u64 + 1);
        assert_eq!(c["status"], "pass");
        assert!(c["name"].is_string() && c["details"].is_object() && c["timing_ms"].is_u64());
    }
    let mut vb = json(&sedgeo(&["--format", "json", "reproduce"], None));
    strip_timings(&mut va);
    strip_timings(&mut vb);
    assert_eq!(va, vb);
}

#[test]
fn text_output_is_deterministic() {
    let args = ["curvature", "sectional", "--r", "2/3"];
    let (a, b) = (sedgeo(&args, None), sedgeo(&args, None));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(stdout(&a).lines().count(), 56);
}
