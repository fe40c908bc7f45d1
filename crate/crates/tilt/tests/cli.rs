//! End-to-end tests of the `tilt` binary: exit codes, report shape, and
//! the emitter round trip through a real process.

use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
}

fn tilt(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tilt"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).to_string()
}

#[test]
fn check_free_exits_zero() {
    let out = tilt(&[
        "check",
        fixture("free.alg").to_str().unwrap(),
        "--complex",
        "P",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    assert!(stdout(&out).contains("tilting.overall: verified"));
}

#[test]
fn check_ex310_exits_one_with_verified_pair() {
    let out = tilt(&[
        "check",
        fixture("ex310.alg").to_str().unwrap(),
        "--complex",
        "P",
        "--bound",
        "2,2,2,2",
    ]);
    assert_eq!(out.status.code(), Some(1), "{}", stdout(&out));
    let text = stdout(&out);
    assert!(text.contains("tilting.overall: refuted"));
    assert!(text.contains("torsion.verdict: verified"));
}

#[test]
fn endo_reports_the_quiver() {
    let out = tilt(&[
        "endo",
        fixture("ex310.alg").to_str().unwrap(),
        "--complex",
        "P",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("endo.dim: 6"));
    assert!(text.contains("endo.vertices: 4"));
    assert!(text.contains("endo.arrows: 2->1,4->3"));
}

#[test]
fn malformed_file_exits_three_with_location() {
    let dir = std::env::temp_dir().join("tilt-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("broken.alg");
    std::fs::write(&path, "field Q\nvertices 2\narrow a 1 2\nrelation b*zz\n").unwrap();
    let out = tilt(&["check", path.to_str().unwrap(), "--complex", "P"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stdout(&out).contains("line 4"), "{}", stdout(&out));
}

#[test]
fn enumerate_counts_classes() {
    let out = tilt(&[
        "enumerate",
        fixture("a2.alg").to_str().unwrap(),
        "--field-override",
        "F2",
        "--bound",
        "1,1",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("count: 5"), "{}", stdout(&out));
}

#[test]
fn construct_emits_a_complex_block() {
    let out = tilt(&[
        "construct",
        fixture("a2.alg").to_str().unwrap(),
        "--x-gen",
        "S1+P1",
        "--y-cogen",
        "S2",
        "--compare",
        "T",
        "--field-override",
        "F2",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    let text = stdout(&out);
    assert!(text.contains("construct.add_equal.T: true"));
    assert!(text.contains("complex constructed"));
    assert!(text.contains("entry 0 0 a"));
}

#[test]
fn construct_precondition_violation_exits_three() {
    let out = tilt(&[
        "construct",
        fixture("a2.alg").to_str().unwrap(),
        "--x-gen",
        "S1",
        "--y-cogen",
        "S2",
        "--field-override",
        "F2",
    ]);
    assert_eq!(out.status.code(), Some(3), "{}", stdout(&out));
    assert!(
        stdout(&out).contains("not a torsion pair"),
        "{}",
        stdout(&out)
    );
}

#[test]
fn bb_verify_needs_a_verified_pair() {
    let dir = std::env::temp_dir().join("tilt-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("contractible.alg");
    std::fs::write(
        &path,
        "field F 2\nvertices 1\ncomplex C\nrow 1\ncol 1\nentry 0 0 e1\n",
    )
    .unwrap();
    let out = tilt(&["bb-verify", path.to_str().unwrap(), "--complex", "C"]);
    assert_eq!(out.status.code(), Some(2), "{}", stdout(&out));
}

#[test]
fn bb_verify_round_trips_pass() {
    let out = tilt(&[
        "bb-verify",
        fixture("a2.alg").to_str().unwrap(),
        "--complex",
        "T",
        "--field-override",
        "F2",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    let text = stdout(&out);
    assert!(text.contains("bb.x_failures: 0"));
    assert!(text.contains("bb.y_failures: 0"));
}

#[test]
fn bb_verify_works_without_tilting() {
    // the four-cycle complex is not tilting, but its verified torsion
    // pair still carries the module equivalences
    let out = tilt(&[
        "bb-verify",
        fixture("ex310.alg").to_str().unwrap(),
        "--complex",
        "P",
        "--bound",
        "2,2,2,2",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    let text = stdout(&out);
    assert!(text.contains("bb.x_failures: 0"));
    assert!(text.contains("bb.y_failures: 0"));
}

#[test]
fn budget_env_is_honored() {
    let out = Command::new(env!("CARGO_BIN_EXE_tilt"))
        .args([
            "check",
            fixture("ex310.alg").to_str().unwrap(),
            "--complex",
            "P",
            "--bound",
            "2,2,2,2",
        ])
        .env("TILT_BUDGET", "10")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3), "{}", stdout(&out));
    assert!(stdout(&out).contains("budget"), "{}", stdout(&out));
}

#[test]
fn splitting_verb_on_hereditary_algebra() {
    let out = tilt(&[
        "splitting",
        fixture("a2.alg").to_str().unwrap(),
        "--complex",
        "T",
        "--field-override",
        "F3",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    assert!(stdout(&out).contains("splitting: true"));
}

#[test]
fn rational_verdicts_stay_inconclusive() {
    // neither class empty, no oracle over Q: check is honest about it
    let out = tilt(&[
        "check",
        fixture("a2.alg").to_str().unwrap(),
        "--complex",
        "T",
    ]);
    assert_eq!(out.status.code(), Some(2), "{}", stdout(&out));
    let text = stdout(&out);
    assert!(text.contains("tilting.generation: k0_only"));
    assert!(text.contains("torsion.intersection_zero: unknown"));
}

#[test]
fn infinite_dimensional_algebra_is_an_error() {
    let dir = std::env::temp_dir().join("tilt-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("loop.alg");
    std::fs::write(
        &path,
        "field Q\nvertices 1\narrow x 1 1\ncomplex P\nrow\ncol 1\n",
    )
    .unwrap();
    let out = tilt(&["check", path.to_str().unwrap(), "--complex", "P"]);
    assert_eq!(out.status.code(), Some(3), "{}", stdout(&out));
    assert!(
        stdout(&out).contains("infinite-dimensional"),
        "{}",
        stdout(&out)
    );
}

#[test]
fn torsion_verb_reports_the_pair() {
    let out = tilt(&[
        "torsion",
        fixture("ex310.alg").to_str().unwrap(),
        "--complex",
        "P",
        "--bound",
        "1,1,1,1",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    assert!(stdout(&out).contains("torsion.verdict: verified"));
}
