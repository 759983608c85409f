use std::path::PathBuf;
use std::process::{Command, Output};

fn hlhodge(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hlhodge"))
        .args(args)
        .env_clear()
        .output()
        .expect("failed to run hlhodge")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn golden(name: &str) -> String {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name);
    std::fs::read_to_string(path).unwrap()
}

#[test]
fn compute_gl2_json() {
    let out = hlhodge(&["compute", "--family", "GL", "--rank", "2", "--lambda", "2,0", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let s = stdout(&out);
    assert!(s.contains(r#"{"nu": [2,0], "L": "q^2", "dim": 2, "qm1": [1,2,1]}"#), "{s}");
    assert!(s.contains(r#"{"nu": [1,1], "L": "q - 1", "dim": 1, "qm1": [0,1]}"#), "{s}");
}

#[test]
fn compute_trivial_lambda() {
    let out = hlhodge(&["compute", "--family", "A", "--rank", "1", "--lambda", "0", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        stdout(&out),
        "family,rank,lambda,section,nu,poly,dim,qm1\nA,1,[0],P,[0],1,,\nA,1,[0],L,[0],1,0,[1]\n"
    );
}

#[test]
fn compute_latex_single_row() {
    let out = hlhodge(&["compute", "--family", "GL", "--rank", "2", "--lambda", "1,0", "--format", "latex"]);
    assert_eq!(out.status.code(), Some(0));
    let s = stdout(&out);
    let rows: Vec<&str> = s.lines().filter(|l| l.ends_with("\\\\") && l.starts_with("$(")).collect();
    assert_eq!(rows, ["$(1,0)$ & $q$ & 1 & $1 + (q-1)$ \\\\"]);
}

#[test]
fn several_lambdas_keep_order() {
    let out = hlhodge(&[
        "compute", "--family", "B", "--rank", "2", "--lambda", "0,1", "--lambda", "1,0", "--format", "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let s = stdout(&out);
    let first = s.find(r#""lambda": [0,1]"#).unwrap();
    let second = s.find(r#""lambda": [1,0]"#).unwrap();
    assert!(first < second);
}

#[test]
fn table_matches_golden_and_is_stable() {
    let args = ["table", "--family", "GL", "--rank", "2", "--bound", "2", "--format", "json"];
    let a = hlhodge(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(stdout(&a), golden("table_gl2_bound2.json"));
    let b = hlhodge(&[&args[..], &["--threads", "1"]].concat());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn table_bound_zero_is_central() {
    let out = hlhodge(&["table", "--family", "A", "--rank", "2", "--bound", "0", "--format", "text"]);
    assert_eq!(out.status.code(), Some(0));
    let s = stdout(&out);
    assert!(s.starts_with("A2  lambda = [0,0]\nP = m[0,0]\n"), "{s}");
    assert_eq!(s.matches("lambda =").count(), 1);
}

#[test]
fn writes_to_out_file() {
    let dir = std::env::temp_dir().join(format!("hlhodge-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("t.csv");
    let out = hlhodge(&[
        "table", "--family", "GL", "--rank", "2", "--bound", "2", "--format", "csv", "--out", path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let csv = std::fs::read_to_string(&path).unwrap();
    assert!(csv.contains("GL,2,\"[2,0]\",L,\"[1,1]\",q - 1,1,\"[0,1]\"\n"), "{csv}");
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn verify_suites_pass() {
    for (suite, family, rank) in [
        ("typeA-charge", "GL", "3"),
        ("weyl-char", "G2", "2"),
        ("specializations", "C", "2"),
        ("positivity", "B", "2"),
        ("lattice-count", "GL", "2"),
    ] {
        let out = hlhodge(&["verify", "--suite", suite, "--family", family, "--rank", rank]);
        assert_eq!(out.status.code(), Some(0), "{suite}: {}", stdout(&out));
        let s = stdout(&out);
        assert!(s.lines().last().unwrap().contains("0 failed"), "{s}");
        assert!(!s.contains("FAIL "), "{s}");
    }
}

#[test]
fn verify_lattice_with_explicit_q0() {
    let out = hlhodge(&[
        "verify", "--suite", "lattice-count", "--family", "GL", "--rank", "2", "--lambda", "2,0", "--q0", "3",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let s = stdout(&out);
    assert!(s.contains("PASS  GL2 lambda=[2,0] q0=3 nu=[1,1]  expected: 2  actual: 2"), "{s}");
    assert!(s.contains("INFO  GL2 lambda=[2,0] q0=3 nu=[0,2]"), "{s}");
}

#[test]
fn verify_json_report() {
    let out = hlhodge(&[
        "verify", "--suite", "positivity", "--family", "GL", "--rank", "2", "--lambda", "2,0", "--format", "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let s = stdout(&out);
    assert!(s.contains("\"suite\": \"positivity\""), "{s}");
    assert!(s.contains("\"outcome\": \"pass\""), "{s}");
}

#[test]
fn unsupported_field_size_fails_verification() {
    let out = hlhodge(&[
        "verify", "--suite", "lattice-count", "--family", "GL", "--rank", "2", "--lambda", "1,0", "--q0", "5",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("FAIL"));
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["verify", "--suite", "bogus", "--family", "GL", "--rank", "2"][..],
        &["compute", "--family", "E", "--rank", "6", "--lambda", "1"],
        &["compute", "--family", "GL", "--rank", "2", "--lambda", "2,0", "--format", "xml"],
        &["compute", "--family", "GL", "--rank", "2", "--lambda", "0,1"],
        &["table", "--family", "GL", "--rank", "2"],
        &["table", "--family", "GL", "--rank", "2", "--bound", "-1"],
        &["compute", "--family", "GL", "--rank", "2"],
    ] {
        let out = hlhodge(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    }
}

#[test]
fn capacity_error_names_lambda_and_bound() {
    let out = hlhodge(&["compute", "--family", "GL", "--rank", "2", "--lambda", "20,0", "--format", "json"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(out.stdout.is_empty());
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("[20,0]") && err.contains("bound is 12"), "{err}");
}
