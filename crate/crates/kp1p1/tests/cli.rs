//! The binary's exit codes, artifact layout and cache location.

use std::path::PathBuf;
use std::process::{Command, Output};

fn scratch(name: &str) -> PathBuf {
    let d = std::env::temp_dir().join(format!("kp1p1-cli-{name}-{}", std::process::id()));
    let _ = std::fs::remove_dir_all(&d);
    d
}

fn run(args: &[&str], dir: &PathBuf) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kp1p1"))
        .args(args)
        .arg("--out")
        .arg(dir.join("out"))
        .env("KP1P1_CACHE_DIR", dir.join("cache"))
        .output()
        .expect("binary runs")
}

#[test]
fn relations_passes_and_writes_a_versioned_artifact() {
    let d = scratch("relations");
    let o = run(&["relations", "--lambda", "3", "--mu", "5", "-D", "8"], &d);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let v: serde_json::Value = serde_json::from_slice(&std::fs::read(d.join("out/relations.json")).unwrap()).unwrap();
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["ok"], true);
    assert_eq!(v["config"]["lambda"], "3");
    let _ = std::fs::remove_dir_all(&d);
}

#[test]
fn invalid_configurations_are_named() {
    let d = scratch("invalid");
    for (args, needle) in [
        (vec!["relations", "--lambda", "2", "--mu", "-2"], "lambda + mu"),
        (vec!["hae", "-g", "3"], "g = 3"),
        (vec!["fg", "-D", "4"], "below 3g"),
        (vec!["hae", "-K", "2"], "below 3g-3"),
        (vec!["iseries", "--mu", "x"], "not a rational"),
    ] {
        let o = run(&args, &d);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        let err = String::from_utf8_lossy(&o.stderr);
        assert!(err.contains(needle), "{args:?}: {err}");
    }
    let _ = std::fs::remove_dir_all(&d);
}

#[test]
fn anomaly_exit_status_follows_the_selected_constant() {
    let d = scratch("hae");
    let o = run(&["hae", "-g", "2", "-D", "3"], &d);
    assert!(o.status.success());
    assert!(d.join("cache/psi.txt").exists());
    let o = run(&["hae", "-g", "2", "-D", "3", "--hae-constant", "printed"], &d);
    assert_eq!(o.status.code(), Some(1));
    let o = run(&["hae", "-g", "2", "-D", "3", "--hae-genus0-split"], &d);
    assert_eq!(o.status.code(), Some(1));
    let _ = std::fs::remove_dir_all(&d);
}
