//! End-to-end runs of the `freespec` binary.

use std::process::{Command, Output};

use freespec::fixtures::FIXTURE_NAMES;
use freespec::io::TupleFile;
use serde_json::Value;

fn freespec(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_freespec"))
        .args(args)
        .env_remove("FREESPEC_SEED")
        .output()
        .expect("binary runs")
}

fn code(args: &[&str]) -> i32 {
    freespec(args).status.code().expect("exit code")
}

fn report(args: &[&str]) -> Value {
    let out = freespec(args);
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

#[test]
fn documented_examples() {
    assert_eq!(code(&["extreme", "--pencil", "spin-g3", "--point", "freeex4"]), 0);
    assert_eq!(code(&["membership", "--pencil", "pauli", "--point", "pauli-conj"]), 1);
    assert_eq!(code(&["membership", "--pencil", "spin-g3", "--point", "zeros"]), 0);
}

#[test]
fn fixtures_round_trip_through_files() {
    let dir = tempfile::tempdir().unwrap();
    for name in FIXTURE_NAMES {
        let path = dir.path().join(format!("{name}.json"));
        let p = path.to_str().unwrap();
        assert_eq!(code(&["fixture", name, "--out", p]), 0, "{name}");
        let first = TupleFile::read(&path).unwrap();
        let again = dir.path().join("again.json");
        first.write(&again).unwrap();
        assert_eq!(std::fs::read(&path).unwrap(), std::fs::read(&again).unwrap(), "{name}");
        assert_eq!(TupleFile::read(&again).unwrap(), first);
    }
}

#[test]
fn files_and_fixture_names_are_interchangeable() {
    let dir = tempfile::tempdir().unwrap();
    let pencil = dir.path().join("a.json");
    let point = dir.path().join("x.json");
    code(&["fixture", "spin-g3", "--out", pencil.to_str().unwrap()]);
    code(&["fixture", "freeex4", "--out", point.to_str().unwrap()]);
    let a = report(&["--json", "extreme", "--pencil", pencil.to_str().unwrap(), "--point", point.to_str().unwrap()]);
    let b = report(&["--json", "extreme", "--pencil", "spin-g3", "--point", "freeex4"]);
    assert_eq!(a["result"], b["result"]);
    assert_eq!(a["result"]["verdict"], "Free");
}

#[test]
fn reports_are_deterministic_apart_from_wall_time() {
    for args in [
        &["--json", "ball", "--set", "wmax", "--point", "spin-g3"][..],
        &["--json", "--seed", "7", "chain", "--g", "2", "--samples", "40"][..],
        &["--json", "drop", "--pencil", "freeex4", "--keep", "1", "--point", "zeros"][..],
    ] {
        let mut a = report(args);
        let mut b = report(args);
        for r in [&mut a, &mut b] {
            r.as_object_mut().unwrap().remove("wall_time_ms");
        }
        assert_eq!(a, b, "{args:?}");
    }
}

#[test]
fn report_fields() {
    let r = report(&["--json", "--tol-psd", "1e-7", "membership", "--pencil", "pauli", "--point", "zeros"]);
    for key in ["command", "inputs", "result", "tolerances", "seed", "wall_time_ms"] {
        assert!(r.get(key).is_some(), "missing {key}");
    }
    assert_eq!(r["command"], "membership");
    assert_eq!(r["tolerances"]["psd_tol"], 1e-7);
    assert_eq!(r["result"]["member"], true);
}

#[test]
fn seed_comes_from_the_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_freespec"))
        .args(["--json", "fixture"])
        .env("FREESPEC_SEED", "42")
        .output()
        .unwrap();
    let r: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(r["seed"], 42);
}

#[test]
fn exit_codes_for_errors() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"format_version":"1","size":2,"length":1,"hermitian":true,"matrices":[[[[1,0]]]]}"#).unwrap();
    assert_eq!(code(&["membership", "--pencil", bad.to_str().unwrap(), "--point", "zeros"]), 65);
    assert_eq!(code(&["membership", "--pencil", "missing.json", "--point", "zeros"]), 65);
    assert_eq!(code(&["membership", "--pencil", "pauli"]), 64);
    assert_eq!(code(&["no-such-command"]), 64);
    assert_eq!(code(&["spin", "1"]), 64);
    assert_eq!(code(&["--help"]), 0);
}

#[test]
fn one_sided_verdicts_exit_inconclusive() {
    assert_eq!(code(&["ball", "--set", "wmax", "--point", "zeros:3"]), 2);
    assert_eq!(code(&["ball", "--set", "matrix", "--point", "zeros:3"]), 0);
    assert_eq!(code(&["ball", "--set", "qd", "--point", "pauli"]), 1);
}

#[test]
fn numerical_failures_exit_70() {
    // Length 3 at size 2 but with a repeated coefficient: the span is deficient.
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("dependent.json");
    let z = [[1.0, 0.0], [0.0, 0.0], [0.0, 0.0], [-1.0, 0.0]];
    let x = [[0.0, 0.0], [1.0, 0.0], [1.0, 0.0], [0.0, 0.0]];
    let file = TupleFile {
        format_version: "1".into(),
        size: 2,
        length: 3,
        hermitian: true,
        matrices: [z, z, x].iter().map(|m| vec![vec![m[0], m[1]], vec![m[2], m[3]]]).collect(),
        comment: None,
    };
    file.write(&path).unwrap();
    assert_eq!(code(&["choi", "--basis", path.to_str().unwrap(), "--point", "zeros"]), 70);
    assert_eq!(code(&["choi", "--basis", "spin-g2", "--point", "zeros"]), 64);
}

#[test]
fn verify_paper_single_criterion() {
    let r = report(&["--json", "verify-paper", "--criterion", "3"]);
    assert_eq!(r["result"]["passed"], 1);
    assert_eq!(code(&["verify-paper", "--criterion", "99"]), 64);
}

#[test]
fn hull_and_dual_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let dual = dir.path().join("dual.json");
    assert_eq!(code(&["dual", "--basis", "pauli", "--out", dual.to_str().unwrap()]), 0);
    assert_eq!(code(&["membership", "--pencil", dual.to_str().unwrap(), "--point", "zeros"]), 0);
    assert_eq!(code(&["hull", "--generator", "spin-g2", "--y", "0.5,0.5"]), 0);
    assert_eq!(code(&["hull", "--generator", "spin-g2", "--y=-2,0"]), 1);
}
