use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

fn adsflat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_adsflat")).args(args).output().expect("binary runs")
}

fn report(dir: &Path) -> serde_json::Value {
    serde_json::from_str(&std::fs::read_to_string(dir.join("report.json")).unwrap()).unwrap()
}

fn surface(dir: &Path, f1: &str, f2: &str, extra: &[&str]) -> Output {
    let (f1, f2) = (fixture(f1), fixture(f2));
    let mut args = vec![
        "surface",
        "--front1",
        f1.to_str().unwrap(),
        "--front2",
        f2.to_str().unwrap(),
        "--grid",
        "-1:1:0.05",
        "--out",
        dir.to_str().unwrap(),
    ];
    args.extend_from_slice(extra);
    adsflat(&args)
}

#[test]
fn selftest_passes() {
    let out = adsflat(&["selftest"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
}

#[test]
fn surface_writes_all_artifacts() {
    let dir = tempfile::tempdir().unwrap();
    let out = surface(dir.path(), "circle_k3.json", "circle_k1_4.json", &[]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    let csv = std::fs::read_to_string(dir.path().join("patch.csv")).unwrap();
    assert_eq!(csv.lines().count(), 41 * 41 + 1);
    let obj = std::fs::read_to_string(dir.path().join("patch.obj")).unwrap();
    assert_eq!(obj.lines().filter(|l| l.starts_with("v ")).count(), 41 * 41);
    assert_eq!(obj.lines().filter(|l| l.starts_with("f ")).count(), 2 * 40 * 40);
    let r = report(dir.path());
    assert_eq!(r["all_pass"], true);
    assert_eq!(r["schema"], 1);
    assert!(r["generated_unix"].is_u64());
}

#[test]
fn csv_is_byte_identical_across_runs() {
    let (a, b) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    for d in [&a, &b] {
        let out = surface(d.path(), "wavy_a.json", "wavy_b.json", &["--format", "csv"]);
        assert_eq!(out.status.code(), Some(0));
    }
    let x = std::fs::read(a.path().join("patch.csv")).unwrap();
    let y = std::fs::read(b.path().join("patch.csv")).unwrap();
    assert_eq!(x, y);
    assert!(!a.path().join("report.json").exists());
}

#[test]
fn inadmissible_pair_fails_with_report() {
    let dir = tempfile::tempdir().unwrap();
    let out = surface(dir.path(), "circle_k3.json", "circle_k3.json", &[]);
    assert_eq!(out.status.code(), Some(1));
    let r = report(dir.path());
    assert_eq!(r["all_pass"], false);
    assert!(r["info"]["error"].as_str().unwrap().contains("admissible"));
}

#[test]
fn tight_tolerance_fails_the_check() {
    let dir = tempfile::tempdir().unwrap();
    let out = surface(dir.path(), "wavy_a.json", "wavy_b.json", &["--tol", "forms=1e-15"]);
    assert_eq!(out.status.code(), Some(1));
    let r = report(dir.path());
    let first = r["checks"].as_array().unwrap().iter().find(|c| c["invariant"] == "first_form").unwrap();
    assert_eq!(first["pass"], false);
}

#[test]
fn malformed_config_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    for extra in [&["--tol", "forms=-1"][..], &["--tol", "nonsense=1"], &["--tol", "forms"], &["--grid-v", "1:-1:0.1"], &["--grid-v", "0.1:1:0.1"]] {
        let out = surface(dir.path(), "circle_k3.json", "circle_k1_4.json", extra);
        assert_eq!(out.status.code(), Some(2), "{extra:?}");
    }
    let out = surface(dir.path(), "circle_k3.json", "missing.json", &[]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("--front2") && err.contains("missing.json"), "{err}");

    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"schema": 1, "kind": "constant-curvature"}"#).unwrap();
    let out = adsflat(&["export", "--front1", bad.to_str().unwrap(), "--front2", bad.to_str().unwrap(), "--format", "csv"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(adsflat(&["scenario", "--name", "nope"]).status.code(), Some(2));
    assert_eq!(adsflat(&["scenario", "--name", "dn-q2", "--c0", "1.5"]).status.code(), Some(2));
}

#[test]
fn torus_from_two_circles() {
    let dir = tempfile::tempdir().unwrap();
    let (f1, f2) = (fixture("circle_k3.json"), fixture("circle_k1_4.json"));
    let out = adsflat(&[
        "torus",
        "--front1",
        f1.to_str().unwrap(),
        "--front2",
        f2.to_str().unwrap(),
        "--grid",
        "-1:1:0.05",
        "--out",
        dir.path().to_str().unwrap(),
        "--format",
        "report",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    let r = report(dir.path());
    assert_eq!(r["info"]["torus"]["is_torus"], true);
}

#[test]
fn q2_scenario_reports_incomplete_diagonal() {
    let dir = tempfile::tempdir().unwrap();
    let out = adsflat(&[
        "scenario",
        "--name",
        "dn-q2",
        "--T",
        "1e4",
        "--grid",
        "-1:1:0.05",
        "--no-verify",
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    let r = report(dir.path());
    let diag = r["info"]["q2"]["diagonal"].as_array().unwrap();
    let last = diag.last().unwrap()[1].as_f64().unwrap();
    assert!((last - 1.6843372289316113).abs() < 1e-9);
    let c = r["checks"].as_array().unwrap().iter().find(|c| c["invariant"] == "suspected_incomplete_diagonal").unwrap();
    assert_eq!(c["pass"], true);
}

#[test]
fn lift_of_a_circle_closes() {
    let dir = tempfile::tempdir().unwrap();
    let f = fixture("circle_k3.json");
    let out = adsflat(&["lift", "--front", f.to_str().unwrap(), "--out", dir.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    let r = report(dir.path());
    assert_eq!(r["info"]["causal"], "timelike");
    assert_eq!(r["info"]["closure"]["epsilon"], -1);
    assert!(dir.path().join("lift.csv").exists());
}

#[test]
fn export_to_stdout() {
    let (f1, f2) = (fixture("circle_k3.json"), fixture("circle_k1_4.json"));
    let out = adsflat(&["export", "--front1", f1.to_str().unwrap(), "--front2", f2.to_str().unwrap(), "--grid", "-0.5:0.5:0.1", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 11 * 11 + 1);
    assert!(text.starts_with("u,v,x0"));
}

#[test]
fn scenario_list_names_every_entry() {
    let out = adsflat(&["scenario", "--list"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    for name in ["hopf-torus", "flat-torus", "dn-q4", "dn-q2", "dn-q1"] {
        assert!(text.contains(name));
    }
}
