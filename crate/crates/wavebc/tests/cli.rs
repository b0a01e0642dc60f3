//! End-to-end checks of the `wavebc` binary: exit codes, report output,
//! and artifact writing.

use std::path::Path;
use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_wavebc"))
}

fn tmp_dir(name: &str) -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("wavebc-cli-{name}-{}", std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);
    dir
}

fn read_artifact(dir: &Path, prefix: &str) -> String {
    let entry = std::fs::read_dir(dir)
        .unwrap()
        .filter_map(Result::ok)
        .find(|e| e.file_name().to_string_lossy().starts_with(prefix))
        .unwrap_or_else(|| panic!("no {prefix}-* artifact in {}", dir.display()));
    std::fs::read_to_string(entry.path()).unwrap()
}

#[test]
fn analyze_type4_reports_unstable() {
    let dir = tmp_dir("analyze");
    let out = bin()
        .args(["analyze", "--bc", "type4", "--b", "1.0"])
        .args(["--out-dir", dir.to_str().unwrap()])
        .output()
        .unwrap();
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("Unstable"), "stdout: {stdout}");
    let report = read_artifact(&dir, "analyze-");
    assert!(report.contains("Unstable"));
    assert!(report.contains("oscillatory"));
    assert!(dir.join("manifest.txt").exists());
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn analyze_type1_nonpositive_a_is_ill_posed() {
    let dir = tmp_dir("illposed");
    let out = bin()
        .args(["analyze", "--bc", "type1", "--a=-1.0", "--b", "0.0"])
        .args(["--out-dir", dir.to_str().unwrap()])
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stdout).contains("IllPosed"));
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn roots_writes_residual_verified_csv() {
    let dir = tmp_dir("roots");
    let out = bin()
        .args(["roots", "--case", "loss", "--n", "5"])
        .args(["--out-dir", dir.to_str().unwrap()])
        .output()
        .unwrap();
    assert!(out.status.success());
    let csv = read_artifact(&dir, "roots-");
    let mut lines = csv.lines();
    assert_eq!(lines.next().unwrap(), "n,re,im,residual");
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 5);
    for row in rows {
        let residual: f64 = row.rsplit(',').next().unwrap().parse().unwrap();
        assert!(residual < 1e-10, "row {row}");
    }
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn invalid_courant_exits_2() {
    let out = bin()
        .args(["solve", "--b", "i0.5", "--courant", "1.2"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("courant"));
}

#[test]
fn unknown_flag_exits_2() {
    let out = bin().args(["solve", "--bogus", "1"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn quick_table1_runs_and_matches_header() {
    let dir = tmp_dir("table1");
    let out = bin()
        .args(["table1", "--b", "0", "--h", "0.01", "--t-end", "10"])
        .args(["--out-dir", dir.to_str().unwrap()])
        .output()
        .unwrap();
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let csv = read_artifact(&dir, "table1-");
    assert!(csv.starts_with("case,h,err_t1,err_t10\n"));
    assert_eq!(csv.lines().count(), 2);
    // Config file layering: file sets h, flag overrides nothing -> same h.
    let manifest = std::fs::read_to_string(dir.join("manifest.txt")).unwrap();
    assert!(manifest.contains("command = table1"));
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn config_file_is_overridden_by_flags() {
    let dir = tmp_dir("config");
    std::fs::create_dir_all(&dir).unwrap();
    let cfg = dir.join("run.cfg");
    std::fs::write(&cfg, "case = gain\nn_roots = 3\n").unwrap();
    let out = bin()
        .args(["roots", "--config", cfg.to_str().unwrap(), "--case", "loss"])
        .args(["--out-dir", dir.to_str().unwrap()])
        .output()
        .unwrap();
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let manifest = std::fs::read_to_string(dir.join("manifest.txt")).unwrap();
    // Flag wins over file; file value applies where no flag is given.
    assert!(manifest.contains("case = loss"));
    assert!(manifest.contains("n_roots = 3"));
    let _ = std::fs::remove_dir_all(&dir);
}
