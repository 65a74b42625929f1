use std::path::PathBuf;
use std::process::{Command, Output};

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hopf-lift")).args(args).output().expect("binary runs")
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("hopf-lift-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn exit_codes() {
    assert_eq!(bin(&["lift", "--preset", "a1", "--N", "3", "--f", "z=1"]).status.code(), Some(0));
    // the combined exponential fails on the quantum plane
    assert_eq!(bin(&["theorem33", "--preset", "qplane", "--N", "3"]).status.code(), Some(1));
    let bad = bin(&["lift", "--preset", "qplane", "--N", "3", "--f", "z9=1"]);
    assert_eq!(bad.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&bad.stderr).contains("/f_values/z9"));
    assert_eq!(bin(&["lift", "--preset", "qplane"]).status.code(), Some(2));
    assert_eq!(bin(&["nonsense"]).status.code(), Some(2));
}

#[test]
fn json_reports_are_byte_identical() {
    let args = ["check", "--preset", "qplane", "--N", "3", "--f", "z1=1", "--f", "z2=2", "--f", "z21=1", "--format", "json"];
    let (a, b) = (bin(&args), bin(&args));
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["pass"], true);
}

#[test]
fn config_job_writes_report() {
    let cfg = concat!(env!("CARGO_MANIFEST_DIR"), "/examples/configs/qplane_job.json");
    let out = scratch("report.json");
    let r = bin(&["--config", cfg, "--out", out.to_str().unwrap(), "--format", "json"]);
    assert_eq!(r.status.code(), Some(0), "{}", String::from_utf8_lossy(&r.stderr));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v["command"], "lift; check; oracle lemma31 --m 3 --n 2; retraction verify");
    assert!(v["data"]["lift/lifted_algebra"].is_object());
}

#[test]
fn selftest_on_a2_passes() {
    let r = bin(&["selftest", "--preset", "a2", "--N", "3"]);
    assert_eq!(r.status.code(), Some(0), "{}", String::from_utf8_lossy(&r.stdout));
}
