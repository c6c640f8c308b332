//! Command-line behavior: exit codes, artifact determinism, overrides.

use std::path::Path;
use std::process::Command;

fn binary() -> Command {
    Command::new(env!("CARGO_BIN_EXE_anyon-sim"))
}

fn read(dir: &Path, name: &str) -> Vec<u8> {
    std::fs::read(dir.join(name)).unwrap_or_else(|e| panic!("missing {name}: {e}"))
}

#[test]
fn run_writes_all_artifacts_and_exits_zero() {
    let dir = tempfile::tempdir().unwrap();
    let status = binary()
        .args(["run", "--out"])
        .arg(dir.path())
        .status()
        .unwrap();
    assert!(status.success());
    for name in [
        "report.csv",
        "manifest.json",
        "spectrum_PPS.csv",
        "peaks_PPS.csv",
        "spectrum_noBD.csv",
        "peaks_BD1.csv",
        "plot_BD2.svg",
    ] {
        assert!(dir.path().join(name).exists(), "missing {name}");
    }
    let manifest: serde_json::Value =
        serde_json::from_slice(&read(dir.path(), "manifest.json")).unwrap();
    let outputs = manifest["outputs"].as_array().unwrap();
    // PPS pair + 3 files per scenario + report.
    assert_eq!(outputs.len(), 2 + 4 * 3 + 1);
}

#[test]
fn identical_runs_produce_byte_identical_artifacts() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    for dir in [&a, &b] {
        let status = binary()
            .args(["run", "--noise", "both", "--seed", "11", "--out"])
            .arg(dir.path())
            .status()
            .unwrap();
        assert!(status.success());
    }
    let names: Vec<String> = std::fs::read_dir(a.path())
        .unwrap()
        .map(|e| e.unwrap().file_name().into_string().unwrap())
        .collect();
    assert!(names.len() >= 15);
    for name in names {
        assert_eq!(
            read(a.path(), &name),
            read(b.path(), &name),
            "artifact {name} differs between reruns"
        );
    }
}

#[test]
fn unknown_scenario_exits_two_with_usage() {
    let dir = tempfile::tempdir().unwrap();
    let out = binary()
        .args(["run", "--scenario", "BD9", "--out"])
        .arg(dir.path())
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("usage"), "{stderr}");
}

#[test]
fn bad_config_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let cfg_path = dir.path().join("bad.json");
    std::fs::write(&cfg_path, "{ not json").unwrap();
    let out = binary()
        .args(["run", "--config"])
        .arg(&cfg_path)
        .args(["--out"])
        .arg(dir.path())
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn zero_t2_config_rejected_at_parse_with_message() {
    let dir = tempfile::tempdir().unwrap();
    let mut cfg: serde_json::Value =
        serde_json::from_str(include_str!("../config/default.json")).unwrap();
    cfg["molecule"]["t2"][3] = serde_json::json!(0.0);
    let cfg_path = dir.path().join("t2zero.json");
    std::fs::write(&cfg_path, serde_json::to_string(&cfg).unwrap()).unwrap();
    let out = binary()
        .args(["verify", "--config"])
        .arg(&cfg_path)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("T2"), "{stderr}");
}

#[test]
fn verify_passes_on_default_config() {
    let out = binary().arg("verify").output().unwrap();
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("pass"));
    assert!(!stdout.contains("FAIL"));
}

#[test]
fn verify_reports_non_commuting_plaquette_and_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let mut cfg: serde_json::Value =
        serde_json::from_str(include_str!("../config/default.json")).unwrap();
    // A single-qubit Z plaquette on qubit 0 anticommutes with A_1.
    cfg["lattice"]["plaquettes"]
        .as_array_mut()
        .unwrap()
        .push(serde_json::json!([0]));
    let cfg_path = dir.path().join("broken.json");
    std::fs::write(&cfg_path, serde_json::to_string(&cfg).unwrap()).unwrap();
    let out = binary()
        .args(["verify", "--config"])
        .arg(&cfg_path)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("FAIL"), "{stdout}");
    assert!(stdout.to_lowercase().contains("commute"), "{stdout}");
}

#[test]
fn run_rejects_open_loop_config_with_exit_three() {
    let dir = tempfile::tempdir().unwrap();
    let mut cfg: serde_json::Value =
        serde_json::from_str(include_str!("../config/default.json")).unwrap();
    cfg["loops"]["bd1"]["qubits"] = serde_json::json!([3]);
    let cfg_path = dir.path().join("openloop.json");
    std::fs::write(&cfg_path, serde_json::to_string(&cfg).unwrap()).unwrap();
    let out = binary()
        .args(["run", "--config"])
        .arg(&cfg_path)
        .args(["--out"])
        .arg(dir.path())
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("not closed"), "{stderr}");
}

#[test]
fn dump_config_round_trips() {
    let out = binary().arg("dump-config").output().unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text, include_str!("../config/default.json"));
}

#[test]
fn single_scenario_flag_runs_one_case() {
    let dir = tempfile::tempdir().unwrap();
    let status = binary()
        .args(["run", "--scenario", "BD1", "--out"])
        .arg(dir.path())
        .status()
        .unwrap();
    assert!(status.success());
    assert!(dir.path().join("spectrum_BD1.csv").exists());
    assert!(!dir.path().join("spectrum_BD0.csv").exists());
}
