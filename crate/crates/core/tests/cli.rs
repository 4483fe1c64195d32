use std::process::Command;

fn boxproj() -> Command {
    Command::new(env!("CARGO_BIN_EXE_boxproj"))
}

fn write_config(dir: &tempfile::TempDir, text: &str) -> std::path::PathBuf {
    let path = dir.path().join("run.toml");
    std::fs::write(&path, text).unwrap();
    path
}

#[test]
fn analyze_courant_to_stdout() {
    let out = boxproj().arg("analyze").output().unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("rho"), "{text}");
}

#[test]
fn lbeta_writes_csv_atomically() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(&dir, "preset = \"bspline(2)\"\ngrid = 5\nseries_radius = 500\n");
    let csv = dir.path().join("lbeta.csv");
    let out = boxproj()
        .args(["lbeta", "--config"])
        .arg(&cfg)
        .arg("--out")
        .arg(&csv)
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let body = std::fs::read_to_string(&csv).unwrap();
    let mut lines = body.lines();
    assert!(lines.next().unwrap().starts_with("x"));
    assert_eq!(lines.count(), 5);
    let entries: Vec<_> = std::fs::read_dir(dir.path()).unwrap().collect();
    assert_eq!(entries.len(), 2, "no temporary files left behind");
}

#[test]
fn converge_tensor_passes() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(&dir, "preset = \"tensor(1,1)\"\nladder = [0.25, 0.125, 0.0625, 0.03125]\n");
    let out = boxproj().args(["converge", "--config"]).arg(&cfg).output().unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(String::from_utf8_lossy(&out.stderr).contains("pass"));
}

#[test]
fn usage_errors_exit_with_code_two() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(&dir, "ladder = []\n");
    let out = boxproj().args(["converge", "--config"]).arg(&cfg).output().unwrap();
    assert_eq!(out.status.code(), Some(2));

    let cfg = write_config(&dir, "preset = \"zp\"\n");
    let out = boxproj().args(["lbeta", "--config"]).arg(&cfg).output().unwrap();
    assert_eq!(out.status.code(), Some(2));

    let out = boxproj().arg("frobnicate").output().unwrap();
    assert!(!out.status.success());
}

#[test]
fn perturbed_gram_fails_check() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(&dir, "[check]\nperturb_gram = 1e-3\n");
    let out = boxproj().args(["check", "--config"]).arg(&cfg).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
}
