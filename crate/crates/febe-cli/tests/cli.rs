//! End-to-end tests of the `febe` binary: exit codes, emitted files, and
//! output determinism.

use std::path::Path;
use std::process::{Command, Output};

fn febe(args: &[&str], out: &Path) -> Output {
    let mut all: Vec<&str> = args.to_vec();
    let out_str = out.to_str().unwrap();
    all.extend_from_slice(&["--out", out_str]);
    Command::new(env!("CARGO_BIN_EXE_febe"))
        .args(&all)
        .output()
        .expect("binary runs")
}

#[test]
fn phase_budget_succeeds_and_writes_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let out = febe(&["phase-budget"], dir.path());
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let csv = std::fs::read_to_string(dir.path().join("phase-budget.csv")).unwrap();
    assert!(csv.starts_with("l_p_mm,energy_term_rad,"), "header: {}", csv.lines().next().unwrap());
    let resolved = std::fs::read_to_string(dir.path().join("resolved-config.txt")).unwrap();
    assert!(resolved.contains("scenario = phase-budget"));
    assert!(resolved.contains("electron.kinetic_energy_kev = "));
}

#[test]
fn unknown_key_exits_2_naming_key() {
    let dir = tempfile::tempdir().unwrap();
    let out = febe(&["eels", "--set", "nope.key=1"], dir.path());
    assert_eq!(out.status.code(), Some(2));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("nope.key"), "stderr: {stderr}");
}

#[test]
fn config_file_error_reports_line() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    std::fs::write(&cfg, "tls.wavelength_nm = 620\nbeam.current_ma = huh\n").unwrap();
    let out = febe(&["steady", "--config", cfg.to_str().unwrap()], dir.path());
    assert_eq!(out.status.code(), Some(2));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("line 2"), "stderr: {stderr}");
    assert!(stderr.contains("beam.current_ma"), "stderr: {stderr}");
}

#[test]
fn module_error_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    // |g| beyond the perturbative regime is caught by the library, not config
    let out = febe(&["steady", "--set", "coupling.g_abs=0.5"], dir.path());
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn csv_output_is_byte_identical_across_runs() {
    let d1 = tempfile::tempdir().unwrap();
    let d2 = tempfile::tempdir().unwrap();
    let args = ["sweep-gm", "--set", "sweep.count=24"];
    assert!(febe(&args, d1.path()).status.success());
    assert!(febe(&args, d2.path()).status.success());
    let a = std::fs::read(d1.path().join("sweep-gm.csv")).unwrap();
    let b = std::fs::read(d2.path().join("sweep-gm.csv")).unwrap();
    assert_eq!(a, b);
    let ra = std::fs::read(d1.path().join("resolved-config.txt")).unwrap();
    let rb = std::fs::read(d2.path().join("resolved-config.txt")).unwrap();
    assert_eq!(ra, rb);
}

#[test]
fn svg_flag_renders_plot() {
    let dir = tempfile::tempdir().unwrap();
    let out = febe(&["coupling", "--set", "sweep.count=16", "--svg"], dir.path());
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let svg = std::fs::read_to_string(dir.path().join("coupling.svg")).unwrap();
    assert!(svg.starts_with("<svg"));
    assert!(svg.contains("<polyline"));
}

#[test]
fn file_then_flag_override_order() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    std::fs::write(&cfg, "phase.delta_theta_mrad = 1\n").unwrap();
    let out = febe(
        &["phase-budget", "--config", cfg.to_str().unwrap(), "--set", "phase.delta_theta_mrad=2"],
        dir.path(),
    );
    assert!(out.status.success());
    let resolved = std::fs::read_to_string(dir.path().join("resolved-config.txt")).unwrap();
    assert!(resolved.contains("phase.delta_theta_mrad = 2.00000000000e0"), "{resolved}");
}
