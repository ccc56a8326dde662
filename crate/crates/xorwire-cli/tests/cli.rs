//! End-to-end tests driving the `xorwire` binary.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::{Command, Output, Stdio};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_xorwire"))
}

fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .canonicalize()
        .expect("fixtures directory")
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("spawn xorwire")
}

fn stdout_of(output: &Output) -> String {
    assert!(
        output.status.success(),
        "exit {:?}, stderr: {}",
        output.status.code(),
        String::from_utf8_lossy(&output.stderr)
    );
    String::from_utf8(output.stdout.clone()).unwrap()
}

#[test]
fn construct_then_solve_prototype() {
    let dir = tempdir();
    let path = dir.join("proto.wiring");
    let out = run(&[
        "construct",
        "--family",
        "mu2-star",
        "--n",
        "2008",
        "-o",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let solved = stdout_of(&run(&["solve", path.to_str().unwrap()]));
    assert!(solved.contains("value 1340"), "got: {solved}");
}

#[test]
fn solve_restricted_on_shipped_fixture() {
    let w6 = fixtures().join("w6.wiring");
    let out = stdout_of(&run(&[
        "solve",
        w6.to_str().unwrap(),
        "--restrict",
        "1,2,4",
    ]));
    assert!(out.contains("value 4"), "got: {out}");
    assert!(out.contains("witness 110000"), "got: {out}");
}

#[test]
fn solve_from_stdin_matches_file() {
    let w6 = fixtures().join("w6.wiring");
    let text = std::fs::read_to_string(&w6).unwrap();
    let from_file = stdout_of(&run(&["solve", w6.to_str().unwrap()]));

    let mut child = bin()
        .arg("solve")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .as_mut()
        .unwrap()
        .write_all(text.as_bytes())
        .unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(from_file, String::from_utf8(out.stdout).unwrap());
}

#[test]
fn export_dot_golden() {
    let w3 = fixtures().join("w3.wiring");
    let out = stdout_of(&run(&["export", w3.to_str().unwrap(), "--format", "dot"]));
    assert_eq!(
        out,
        "digraph wiring {\n  1;\n  2;\n  3;\n  1 -> 2;\n  2 -> 3;\n  3 -> 1;\n}\n"
    );
}

#[test]
fn export_xnf_golden() {
    let w3 = fixtures().join("w3.wiring");
    let out = stdout_of(&run(&["export", w3.to_str().unwrap(), "--format", "xnf"]));
    assert_eq!(out, "p cnf 3 3\nx 1 3 0\nx 1 2 0\nx 2 3 0\n");
}

#[test]
fn pivot_golden() {
    let w3 = fixtures().join("w3.wiring");
    let out = stdout_of(&run(&["pivot", w3.to_str().unwrap(), "--vertex", "1"]));
    assert_eq!(out, "wiring 3\n111\n110\n001\n");
}

#[test]
fn pivot_relative_to_everything_is_identity() {
    let w3 = fixtures().join("w3.wiring");
    let out = stdout_of(&run(&[
        "pivot",
        w3.to_str().unwrap(),
        "--vertex",
        "1",
        "--relative-to",
        "1,2,3",
    ]));
    assert_eq!(out, std::fs::read_to_string(&w3).unwrap());
}

#[test]
fn light_degree_two_family() {
    let dir = tempdir();
    let path = dir.join("m7.wiring");
    run(&[
        "construct",
        "--family",
        "mu2",
        "--n",
        "7",
        "-o",
        path.to_str().unwrap(),
    ]);
    let out = stdout_of(&run(&["light", path.to_str().unwrap()]));
    assert!(out.contains("value 5"), "got: {out}");
}

#[test]
fn light_rejects_nonzero_initial() {
    let dir = tempdir();
    let path = dir.join("lit.wiring");
    std::fs::write(&path, "wiring 2\n11\n11\nc 01\n").unwrap();
    let out = run(&["light", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn construct_nu_star_carries_initial() {
    let out = stdout_of(&run(&[
        "construct",
        "--family",
        "nu-star",
        "--n",
        "10",
        "--m",
        "3",
    ]));
    assert!(out.starts_with("wiring 10\n"));
    assert!(out.contains("\nc 0101010101\n"), "got: {out}");
}

#[test]
fn solve_uses_file_initial_and_flag_overrides() {
    let dir = tempdir();
    let path = dir.join("nu.wiring");
    run(&[
        "construct",
        "--family",
        "nu-star",
        "--n",
        "10",
        "--m",
        "3",
        "-o",
        path.to_str().unwrap(),
    ]);
    let with_file_c = stdout_of(&run(&["solve", path.to_str().unwrap()]));
    assert!(with_file_c.contains("value 6"), "got: {with_file_c}");
    let overridden = stdout_of(&run(&[
        "solve",
        path.to_str().unwrap(),
        "--initial",
        "zero",
    ]));
    assert!(overridden.contains("value 9"), "got: {overridden}");
    assert_ne!(with_file_c, overridden);
}

#[test]
fn verify_small_grid_exits_zero() {
    let out = run(&["verify", "--max-n", "5"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("verified: ok"));
    assert!(
        text.contains("nu*(5,5) = 3  formula 3  match"),
        "got: {text}"
    );
}

#[test]
fn bench_prints_rows() {
    let out = stdout_of(&run(&["bench", "--max-n", "128"]));
    assert!(out.contains("mu2-star"));
    assert!(out.contains("mu3-star"));
    assert!(out.lines().count() >= 4, "got: {out}");
}

#[test]
fn construct_rejects_oversized_n() {
    let out = run(&["construct", "--family", "mu2", "--n", "5000"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn enumerate_json_schema() {
    let out = stdout_of(&run(&[
        "enumerate",
        "--kind",
        "mu",
        "--n",
        "3",
        "--m",
        "2",
        "--format",
        "json",
    ]));
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["kind"], "mu");
    assert_eq!(v["value"], 2);
    assert_eq!(v["examined"], 27);
    assert_eq!(v["verdict"], "match");
    assert_eq!(v.as_object().unwrap().len(), 10);
}

#[test]
fn enumerate_budget_refusal() {
    let out = run(&[
        "enumerate",
        "--kind",
        "mu",
        "--n",
        "6",
        "--m",
        "3",
        "--exact",
        "--budget",
        "1000",
    ]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("1000000"), "got: {err}");
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(
        run(&["solve", "--restrict", "bogus"]).status.code(),
        Some(2)
    );
    assert_eq!(
        run(&["construct", "--family", "nope"]).status.code(),
        Some(2)
    );
    assert_eq!(
        run(&["construct", "--family", "mu2"]).status.code(),
        Some(2)
    );
    let missing = run(&["solve", "/nonexistent/path.wiring"]);
    assert_eq!(missing.status.code(), Some(2));
}

#[test]
fn malformed_wiring_exits_two() {
    let mut child = bin()
        .arg("solve")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .as_mut()
        .unwrap()
        .write_all(b"wiring 3\n101\n11\n011\n")
        .unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

fn tempdir() -> PathBuf {
    let dir = std::env::temp_dir().join(format!(
        "xorwire-test-{}-{}",
        std::process::id(),
        std::time::SystemTime::now()
            .duration_since(std::time::UNIX_EPOCH)
            .unwrap()
            .as_nanos()
    ));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}
