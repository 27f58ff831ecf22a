//! End-to-end tests of the `nlft` binary over real files.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use nlft_core::{delta, euler, gen, json, Tolerances};

fn bin() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_nlft"));
    for var in [
        "NLFT_TOL_EPS_F",
        "NLFT_TOL_EPS_C",
        "NLFT_TOL_EPS_PEEL",
        "NLFT_TOL_EPS_MEMBER",
    ] {
        cmd.env_remove(var);
    }
    cmd
}

fn run_ok(args: &[&str]) -> Output {
    let out = bin().args(args).output().expect("binary runs");
    assert!(
        out.status.success(),
        "nlft {args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    out
}

fn path(dir: &Path, name: &str) -> PathBuf {
    dir.join(name)
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn gen_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let a = path(dir.path(), "a.json");
    let b = path(dir.path(), "b.json");
    run_ok(&["gen", "--kind", "delta", "-n", "6", "--seed", "9", "-o", s(&a)]);
    run_ok(&["gen", "--kind", "delta", "-n", "6", "--seed", "9", "-o", s(&b)]);
    assert_eq!(
        std::fs::read(&a).unwrap(),
        std::fs::read(&b).unwrap(),
        "same seed must produce byte-identical files"
    );
}

#[test]
fn comb_roundtrip_through_files() {
    let dir = tempfile::tempdir().unwrap();
    let dist = path(dir.path(), "dist.json");
    let fm = path(dir.path(), "fm.json");
    let rec = path(dir.path(), "rec.json");
    run_ok(&["gen", "--kind", "delta", "-n", "8", "--seed", "7", "-o", s(&dist)]);
    run_ok(&["forward-d", "-i", s(&dist), "-o", s(&fm)]);
    run_ok(&["inverse-d", "-i", s(&fm), "-o", s(&rec)]);

    let want = json::delta_from_str(&std::fs::read_to_string(&dist).unwrap()).unwrap();
    let got = json::delta_from_str(&std::fs::read_to_string(&rec).unwrap()).unwrap();
    assert_eq!(want.len(), got.len());
    for (p, q) in want.poles().iter().zip(got.poles()) {
        assert!((p.x - q.x).abs() < 1e-9);
        assert!((p.u - q.u).norm() < 1e-9);
    }
}

#[test]
fn cli_forward_matches_library_bit_for_bit() {
    let dir = tempfile::tempdir().unwrap();
    let distfile = path(dir.path(), "dist.json");
    let fm = path(dir.path(), "fm.json");
    run_ok(&["gen", "--kind", "delta", "-n", "7", "--seed", "3", "-o", s(&distfile)]);
    run_ok(&["forward-d", "-i", s(&distfile), "-o", s(&fm)]);
    let dist = gen::delta_distribution(7, 3).unwrap();
    let want = json::expmat_to_string(&delta::reduce(&delta::forward(&dist)));
    assert_eq!(std::fs::read_to_string(&fm).unwrap(), want);
}

#[test]
fn inverse_of_identity_is_empty_comb() {
    let dir = tempfile::tempdir().unwrap();
    let id = path(dir.path(), "id.json");
    std::fs::write(&id, r#"{"a": [{"freq": 0.0, "re": 1.0, "im": 0.0}], "b": []}"#).unwrap();
    let out = run_ok(&["inverse-d", "-i", s(&id)]);
    let rec = json::delta_from_str(&String::from_utf8_lossy(&out.stdout)).unwrap();
    assert!(rec.is_empty());
}

#[test]
fn tampered_transform_exits_with_code_two() {
    let dir = tempfile::tempdir().unwrap();
    let dist = path(dir.path(), "dist.json");
    let fm = path(dir.path(), "fm.json");
    run_ok(&["gen", "--kind", "delta", "-n", "5", "--seed", "1", "-o", s(&dist)]);
    run_ok(&["forward-d", "-i", s(&dist), "-o", s(&fm)]);
    let text = std::fs::read_to_string(&fm).unwrap();
    let tol = Tolerances::default();
    let m = json::expmat_from_str(&text, &tol).unwrap();
    let mut terms = m.b.terms().to_vec();
    terms[0].coeff *= 1.1;
    let bad = nlft_core::exppoly::ExpMat::new(
        m.a.clone(),
        nlft_core::exppoly::ExpPoly::from_terms(terms),
    );
    std::fs::write(&fm, json::expmat_to_string(&bad)).unwrap();
    let out = bin()
        .args(["inverse-d", "-i", s(&fm)])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2), "{}", String::from_utf8_lossy(&out.stderr));

    let check = run_ok(&["check-d", "-i", s(&fm), "-n", "5"]);
    assert!(String::from_utf8_lossy(&check.stdout).contains("false"));
}

#[test]
fn grid_roundtrip_through_files() {
    let dir = tempfile::tempdir().unwrap();
    let sig = path(dir.path(), "sig.json");
    let grid = path(dir.path(), "grid.json");
    let rec = path(dir.path(), "rec.json");
    run_ok(&["gen", "--kind", "signal", "-n", "16", "--seed", "5", "-o", s(&sig)]);
    run_ok(&["forward-e", "-i", s(&sig), "-o", s(&grid)]);
    let check = run_ok(&["check-e", "-i", s(&grid)]);
    assert!(String::from_utf8_lossy(&check.stdout).contains("true"));
    run_ok(&["inverse-e", "-i", s(&grid), "-o", s(&rec)]);
    let want = euler::forward(&gen::signal(16, 5).unwrap());
    let got = euler::forward(
        &json::signal_from_str(&std::fs::read_to_string(&rec).unwrap()).unwrap(),
    );
    assert!(want.max_abs_diff(&got) < 1e-9);
}

#[test]
fn dual_roundtrip_through_files() {
    let dir = tempfile::tempdir().unwrap();
    let gap = path(dir.path(), "gap.json");
    let job = path(dir.path(), "job.json");
    let rec = path(dir.path(), "rec.json");
    run_ok(&["gen", "--kind", "constmass", "-m", "9", "--seed", "4", "-o", s(&gap)]);
    run_ok(&["dual-forward", "-i", s(&gap), "-o", s(&job)]);
    run_ok(&["dual-inverse", "-i", s(&job), "-o", s(&rec)]);
    let want = json::gap_from_str(&std::fs::read_to_string(&gap).unwrap()).unwrap();
    let got = json::gap_from_str(&std::fs::read_to_string(&rec).unwrap()).unwrap();
    for (p, q) in want.gaps().iter().zip(got.gaps()) {
        assert!((p - q).abs() < 1e-8);
    }
}

#[test]
fn strata_reports_count_and_magnitude() {
    let out = run_ok(&["strata", "-n", "100", "-k", "10", "-l", "25"]);
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("225798070267414150"), "{text}");
    assert!(text.contains("2.3e17"), "{text}");
}

#[test]
fn sample_emits_csv_grid() {
    let dir = tempfile::tempdir().unwrap();
    let dist = path(dir.path(), "dist.json");
    let fm = path(dir.path(), "fm.json");
    let csv = path(dir.path(), "out.csv");
    run_ok(&["gen", "--kind", "delta", "-n", "3", "--seed", "2", "-o", s(&dist)]);
    run_ok(&["forward-d", "-i", s(&dist), "-o", s(&fm)]);
    run_ok(&[
        "sample", "-i", s(&fm), "-o", s(&csv), "--z-min", "-2", "--z-max", "2", "--steps", "41",
    ]);
    let text = std::fs::read_to_string(&csv).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "z,re_a,im_a,re_b,im_b");
    assert_eq!(lines.len(), 42);
    // samples must satisfy |a|^2 + |b|^2 = 1
    for line in &lines[1..] {
        let v: Vec<f64> = line.split(',').map(|t| t.parse().unwrap()).collect();
        let det = v[1] * v[1] + v[2] * v[2] + v[3] * v[3] + v[4] * v[4];
        assert!((det - 1.0).abs() < 1e-9, "{line}");
    }
}

#[test]
fn oracle_subcommands_report_tiny_deviations() {
    let dir = tempfile::tempdir().unwrap();
    let sig = path(dir.path(), "sig.json");
    let dist = path(dir.path(), "dist.json");
    run_ok(&["gen", "--kind", "signal", "-n", "8", "--seed", "6", "-o", s(&sig)]);
    run_ok(&["gen", "--kind", "delta", "-n", "6", "--seed", "8", "-o", s(&dist)]);

    let out = run_ok(&["oracle", "dyson-e", "-i", s(&sig)]);
    let text = String::from_utf8_lossy(&out.stdout).to_string();
    let dev: f64 = text
        .split(':')
        .nth(1)
        .unwrap()
        .trim()
        .trim_end_matches('}')
        .parse()
        .unwrap();
    assert!(dev < 1e-11, "{text}");

    let out = run_ok(&["oracle", "dyson-d", "-i", s(&dist)]);
    assert!(String::from_utf8_lossy(&out.stdout).contains("max_deviation"));

    let out = run_ok(&["oracle", "gauge", "-i", s(&dist), "--epsilon", "1e-3", "-n", "3"]);
    assert!(String::from_utf8_lossy(&out.stdout).contains("max_deviation"));

    let out = run_ok(&["oracle", "enum", "-n", "12", "-d", "3", "-l", "4"]);
    let count: usize = String::from_utf8_lossy(&out.stdout).trim().parse().unwrap();
    assert_eq!(count, 4 * 7); // C(4,1)·C(7,1)

    run_ok(&["oracle", "step", "-i", s(&dist), "--epsilon", "1e-3", "-z", "1.5"]);
}

#[test]
fn tolerance_env_vars_apply() {
    let dir = tempfile::tempdir().unwrap();
    let dist = path(dir.path(), "dist.json");
    let fm = path(dir.path(), "fm.json");
    run_ok(&["gen", "--kind", "delta", "-n", "4", "--seed", "10", "-o", s(&dist)]);
    run_ok(&["forward-d", "-i", s(&dist), "-o", s(&fm)]);
    // an absurdly tight membership tolerance turns rounding into rejection
    let out = bin()
        .env("NLFT_TOL_EPS_MEMBER", "1e-30")
        .args(["inverse-d", "-i", s(&fm)])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    // the flag overrides the environment back to sanity
    let out = bin()
        .env("NLFT_TOL_EPS_MEMBER", "1e-30")
        .args(["inverse-d", "-i", s(&fm), "--eps-member", "1e-7"])
        .output()
        .unwrap();
    assert!(out.status.success());
}

#[test]
fn full_transform_flag_mirrors_on_both_sides() {
    let dir = tempfile::tempdir().unwrap();
    let dist = path(dir.path(), "dist.json");
    let fm = path(dir.path(), "fm.json");
    run_ok(&["gen", "--kind", "delta", "-n", "5", "--seed", "12", "-o", s(&dist)]);
    run_ok(&["forward-d", "-i", s(&dist), "-o", s(&fm), "--full"]);
    let check = run_ok(&["check-d", "-i", s(&fm), "-n", "5", "--full"]);
    assert!(String::from_utf8_lossy(&check.stdout).contains("true"));
    let out = run_ok(&["inverse-d", "-i", s(&fm), "--full"]);
    let rec = json::delta_from_str(&String::from_utf8_lossy(&out.stdout)).unwrap();
    let want = gen::delta_distribution(5, 12).unwrap();
    for (p, q) in want.poles().iter().zip(rec.poles()) {
        assert!((p.x - q.x).abs() < 1e-9);
        assert!((p.u - q.u).norm() < 1e-9);
    }
}

#[test]
fn weighted_inverse_divides_by_gaps() {
    let dir = tempfile::tempdir().unwrap();
    let hatfile = path(dir.path(), "hat.json");
    let fm = path(dir.path(), "fm.json");
    // single pole at 0.25 with gap-weighted weight 0.15 recovers 0.2
    std::fs::write(&hatfile, r#"{"poles": [{"x": 0.25, "re": 0.15, "im": 0.0}]}"#).unwrap();
    run_ok(&["forward-d", "-i", s(&hatfile), "-o", s(&fm)]);
    let out = run_ok(&["inverse-d", "-i", s(&fm), "--weighted"]);
    let rec = json::delta_from_str(&String::from_utf8_lossy(&out.stdout)).unwrap();
    assert!((rec.poles()[0].u.re - 0.2).abs() < 1e-12);
}
