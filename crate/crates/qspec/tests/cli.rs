//! End-to-end tests of the `qspec` binary surface: exit codes, the
//! machine-readable error record, and the emitted files.

use std::path::Path;
use std::process::Command;

fn qspec() -> Command {
    Command::new(env!("CARGO_BIN_EXE_qspec"))
}

fn write(path: &Path, text: &str) {
    std::fs::write(path, text).unwrap();
}

#[test]
fn spectrum_writes_the_grid_and_exits_zero() {
    let dir = tempfile::tempdir().unwrap();
    let conf = dir.path().join("run.conf");
    write(&conf, "lambda_steps = 2\ntheta_steps = 2\n");
    let out = qspec()
        .args(["spectrum", "--config"])
        .arg(&conf)
        .arg("--out")
        .arg(dir.path())
        .output()
        .unwrap();
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("spectrum.csv"));
    let csv = std::fs::read_to_string(dir.path().join("spectrum.csv")).unwrap();
    assert_eq!(csv.trim_end().lines().count(), 5); // header + 2x2
}

#[test]
fn invalid_config_yields_json_error_and_nonzero_exit() {
    let dir = tempfile::tempdir().unwrap();
    let conf = dir.path().join("bad.conf");
    write(&conf, "# comment\nalpha_per_cm = -1\n");
    let out = qspec()
        .args(["cross-section", "--config"])
        .arg(&conf)
        .arg("--out")
        .arg(dir.path())
        .output()
        .unwrap();
    assert!(!out.status.success());
    let stderr = String::from_utf8_lossy(&out.stderr);
    let record: serde_json::Value = serde_json::from_str(stderr.trim()).unwrap();
    assert_eq!(record["error"]["kind"], "config");
    assert_eq!(record["error"]["line"], 2);
}

#[test]
fn seed_flag_overrides_the_configured_seed() {
    let dir = tempfile::tempdir().unwrap();
    let conf = dir.path().join("mc.conf");
    write(
        &conf,
        "theta_min_mrad = 0.5\ntheta_max_mrad = 4.0\ntrials = 100\nshots = 1e6\nseed = 1\n",
    );
    let run = |seed: &str, sub: &str| {
        let out_dir = dir.path().join(sub);
        std::fs::create_dir_all(&out_dir).unwrap();
        let out = qspec()
            .args(["montecarlo", "--config"])
            .arg(&conf)
            .arg("--out")
            .arg(&out_dir)
            .args(["--seed", seed, "--threads", "2"])
            .output()
            .unwrap();
        assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
        std::fs::read_to_string(out_dir.join("montecarlo.json")).unwrap()
    };
    let a = run("7", "a");
    let b = run("7", "b");
    let c = run("8", "c");
    assert_eq!(a, b);
    assert_ne!(a, c);
}

#[test]
fn thread_env_fallback_is_accepted() {
    let dir = tempfile::tempdir().unwrap();
    let conf = dir.path().join("run.conf");
    write(&conf, "lambda_steps = 2\ntheta_steps = 3\n");
    let out = qspec()
        .args(["spectrum", "--config"])
        .arg(&conf)
        .arg("--out")
        .arg(dir.path())
        .env("QSPEC_THREADS", "2")
        .output()
        .unwrap();
    assert!(out.status.success());
}

#[test]
fn regret_scan_and_tradeoff_check_emit_their_files() {
    let dir = tempfile::tempdir().unwrap();
    let conf = dir.path().join("run.conf");
    write(
        &conf,
        "theta_min_mrad = 0.5\ntheta_max_mrad = 4.0\nn_medium_steps = 5\nalpha_steps = 4\n",
    );
    for (sub, file) in [
        ("regret-scan", "regret_scan.csv"),
        ("tradeoff-check", "tradeoff_check.json"),
        ("variance-map", "variance_map.csv"),
    ] {
        let out = qspec()
            .args([sub, "--config"])
            .arg(&conf)
            .arg("--out")
            .arg(dir.path())
            .output()
            .unwrap();
        assert!(
            out.status.success(),
            "{sub} failed: {}",
            String::from_utf8_lossy(&out.stderr)
        );
        assert!(dir.path().join(file).exists(), "{file} missing");
    }
    let csv = std::fs::read_to_string(dir.path().join("regret_scan.csv")).unwrap();
    assert!(csv
        .lines()
        .next()
        .unwrap()
        .starts_with("scan_value,delta_n,delta_alpha"));
    assert_eq!(csv.trim_end().lines().count(), 6);
}
