use std::path::Path;
use std::process::Command;

fn qci() -> Command {
    Command::new(env!("CARGO_BIN_EXE_qci"))
}

fn core_file(rel: &str) -> std::path::PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../core").join(rel)
}

#[test]
fn verify_passes_and_reads_fixture() {
    let ok = qci().arg("verify").output().unwrap();
    let stdout = String::from_utf8_lossy(&ok.stdout);
    assert!(ok.status.success(), "{stdout}");
    assert!(stdout.contains("quantum uid 1 (415-389-1133)"), "{stdout}");

    let alt = qci()
        .args(["verify", "--fixture"])
        .arg(core_file("fixtures/directory_corrupted.csv"))
        .output()
        .unwrap();
    let stdout = String::from_utf8_lossy(&alt.stdout);
    assert!(alt.status.success(), "{stdout}");
    assert!(stdout.contains("quantum uid 2 (415-389-1133)"), "{stdout}");

    let missing = qci()
        .args(["verify", "--fixture", "/nonexistent.csv"])
        .output()
        .unwrap();
    assert_eq!(missing.status.code(), Some(2));
}

#[test]
fn run_prints_csv_and_growth() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("g.json");
    std::fs::write(&cfg, r#"{"kind": "grover", "sizes": [2, 3, 4, 5], "seeds": [0, 1]}"#).unwrap();
    let out = qci().args(["--seed", "4", "run"]).arg(&cfg).output().unwrap();
    assert!(out.status.success());
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert_eq!(stdout.lines().count(), 9);
    assert!(stdout.starts_with("scenario,n,N,"));
    let stderr = String::from_utf8(out.stderr).unwrap();
    assert!(
        stderr.contains("interface_steps") && stderr.contains("linear_N"),
        "{stderr}"
    );
}

#[test]
fn report_is_deterministic_and_honours_seed() {
    let dir = tempfile::tempdir().unwrap();
    let write = |name: &str, seed: &str| {
        let path = dir.path().join(name);
        let status = qci()
            .args(["--seed", seed, "report", "--format", "csv", "--out"])
            .arg(&path)
            .status()
            .unwrap();
        assert!(status.success());
        std::fs::read(path).unwrap()
    };
    let a = write("a.csv", "1");
    let b = write("b.csv", "1");
    let c = write("c.csv", "2");
    assert_eq!(a, b);
    assert_ne!(a, c);

    let json = dir.path().join("r.json");
    let status = qci()
        .args(["report", "--format", "json", "--out"])
        .arg(&json)
        .arg("--config")
        .arg(core_file("configs/default.json"))
        .status()
        .unwrap();
    assert!(status.success());
    assert!(std::fs::read_to_string(json).unwrap().trim_start().starts_with('['));
}

#[test]
fn bad_inputs_exit_with_error() {
    let out = qci().args(["run", "/nonexistent/config.json"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));

    let out = qci()
        .args(["report", "--format", "xml", "--out", "x"])
        .output()
        .unwrap();
    assert!(!out.status.success());

    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("bad.json");
    std::fs::write(&cfg, r#"{"kind": "grover", "sizes": [1]}"#).unwrap();
    let out = qci().arg("run").arg(&cfg).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}
