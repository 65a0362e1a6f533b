use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn wreathk(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wreathk"))
        .arg("--deterministic")
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = wreathk(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn leaves(report: &Value) -> Vec<(String, u64)> {
    report["outputs"]["leaves"]
        .as_array()
        .unwrap()
        .iter()
        .map(|l| {
            (
                l["group"]["label"].as_str().unwrap().to_string(),
                l["multiplicity"].as_u64().unwrap(),
            )
        })
        .collect()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("wreathk-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn decompose_both_forms() {
    let orbits = json(&["decompose", "--h", "C2", "--g", "C2", "--rank"]);
    assert_eq!(leaves(&orbits), vec![("C2".into(), 2), ("1".into(), 1)]);
    assert_eq!(orbits["outputs"]["k0_rank"], 5);
    assert_eq!(orbits["outputs"]["complete"], true);

    let subgroups = json(&["decompose", "--h", "C2", "--g", "C2", "--form", "subgroups", "--rank"]);
    assert_eq!(subgroups["outputs"]["k0_rank"], 5);
    assert_eq!(leaves(&subgroups), leaves(&orbits));
}

#[test]
fn decompose_infinite_cyclic() {
    let r = json(&["decompose", "--h", "C2", "--g", "Z", "--bound", "1"]);
    assert_eq!(leaves(&r), vec![("Z".into(), 1), ("1".into(), 2)]);
    assert_eq!(r["outputs"]["complete"], false);
    assert_eq!(r["outputs"]["truncation"], 1);
    // K_0 rank of an infinite cyclic leaf is not supported
    assert!(!wreathk(&["decompose", "--h", "C2", "--g", "Z", "--bound", "1", "--rank"]).status.success());
}

#[test]
fn burnside_and_slmat() {
    let r = json(&["burnside", "--g", "C2", "--n", "2", "--z", "regular"]);
    assert_eq!(r["outputs"]["l"], 2);
    assert_eq!(r["outputs"]["r"], 3);
    assert_eq!(r["outputs"]["alpha"], "3*[G/1] + 2*[G/G]");
    assert_eq!(r["outputs"]["beta"], "-1*[G/1] + 4*[G/G]");

    let r = json(&["slmat", "--dims", "2,4"]);
    assert_eq!(r["outputs"]["matrix"], serde_json::json!([[1, 0], [1, 1]]));
}

#[test]
fn semisimple_localizes() {
    let r = json(&["semisimple", "--dims", "2,4", "--g", "C2", "--zspec", "regular+regular", "--bound", "1"]);
    assert_eq!(leaves(&r), vec![("C2".into(), 1), ("1".into(), 2)]);
    for leaf in r["outputs"]["leaves"].as_array().unwrap() {
        assert_eq!(leaf["inverted"], 2);
    }
}

#[test]
fn izumi_emit_and_check() {
    let path = scratch("cert.json");
    let p = path.to_str().unwrap();
    let r = json(&["izumi", "--g", "C2", "--z", "regular", "--emit", p]);
    assert_eq!(r["outputs"]["p_plus_size"], 2);
    assert_eq!(r["outputs"]["p_minus_size"], 2);
    assert_eq!(r["outputs"]["verified"], true);
    assert!(wreathk(&["izumi", "--g", "C2", "--z", "regular", "--check", p]).status.success());

    // drop the (1, Z) term from P+
    let mut cert: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let plus = cert["p_plus"].as_array_mut().unwrap();
    plus.retain(|e| e["subgroup"] != serde_json::json!([0]));
    let broken = scratch("broken.json");
    std::fs::write(&broken, cert.to_string()).unwrap();
    let out = wreathk(&["izumi", "--g", "C2", "--z", "regular", "--check", broken.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let report: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["outputs"]["deficit"], "{([0], {0,1})}");
}

#[test]
fn output_is_reproducible() {
    let args = ["decompose", "--h", "S3", "--g", "C3", "--form", "subgroups", "--rank"];
    assert_eq!(wreathk(&args).stdout, wreathk(&args).stdout);
    let args = ["izumi", "--g", "S3", "--z", "cosets:1+trivial:1"];
    assert_eq!(wreathk(&args).stdout, wreathk(&args).stdout);
}

#[test]
fn errors_exit_nonzero() {
    assert!(!wreathk(&["decompose", "--h", "C0", "--g", "C2"]).status.success());
    assert!(!wreathk(&["burnside", "--g", "C2", "--n", "2", "--z", "cosets:7"]).status.success());
    let capped = Command::new(env!("CARGO_BIN_EXE_wreathk"))
        .env("WREATHK_CAPS", "points=10")
        .args(["decompose", "--h", "C2", "--g", "C4"])
        .output()
        .unwrap();
    assert_eq!(capped.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&capped.stderr).contains("cap"));
}

#[test]
fn reports_echo_caps() {
    let out = Command::new(env!("CARGO_BIN_EXE_wreathk"))
        .env("WREATHK_CAPS", "group_order=5000")
        .args(["--deterministic", "slmat", "--dims", "3,3"])
        .output()
        .unwrap();
    let r: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(r["caps"]["group_order"], 5000);
    assert!(r.get("wall_time_ms").is_none());
}
