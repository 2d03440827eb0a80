use std::process::Command;

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_depthzero"))
}

fn read_json(dir: &std::path::Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(dir.join("report.json")).unwrap()).unwrap()
}

#[test]
fn chevalley_passes_and_writes_every_format() {
    let dir = tempfile::tempdir().unwrap();
    let st = bin().args(["chevalley", "--out"]).arg(dir.path()).output().unwrap().status;
    assert_eq!(st.code(), Some(0));
    let doc = read_json(dir.path());
    assert_eq!(doc["schema_version"], 1);
    let checks = doc["checks"].as_array().unwrap();
    assert!(checks.iter().all(|c| c["outcome"] == "PASS"));
    assert!(checks.iter().any(|c| c["id"] == "chevalley.lift-square"));
    let md = std::fs::read_to_string(dir.path().join("report.md")).unwrap();
    assert_eq!(md.lines().filter(|l| l.starts_with("| chevalley.")).count(), checks.len());
    assert!(dir.path().join("thresholds.csv").exists());
    assert!(dir.path().join("metadata.json").exists());
}

#[test]
fn config_errors_exit_two_and_name_the_key() {
    let dir = tempfile::tempdir().unwrap();
    let out = bin().args(["identity", "--q", "4", "--out"]).arg(dir.path()).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("`q`"));

    let cfg = dir.path().join("run.ini");
    std::fs::write(&cfg, "epsilon = 3\n").unwrap();
    let out = bin().args(["cohomology", "--config"]).arg(&cfg).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("epsilon"));
}

#[test]
fn flags_override_the_config_file() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.ini");
    std::fs::write(&cfg, "[run]\nq = 3,5,7\nkind = 1\nformat = json\n").unwrap();
    let st = bin().args(["cohomology", "--kind", "2", "--q", "3", "--config"]).arg(&cfg).arg("--out").arg(dir.path()).output().unwrap().status;
    assert_eq!(st.code(), Some(0));
    let doc = read_json(dir.path());
    assert_eq!(doc["config_echo"]["kinds"], serde_json::json!(["T2"]));
    let ids: Vec<_> = doc["checks"].as_array().unwrap().iter().map(|c| c["id"].as_str().unwrap().to_string()).collect();
    assert_eq!(ids, ["tate.T2.q3", "root-kernels.T2.q3"]);
    assert!(!dir.path().join("report.md").exists());
}

#[test]
fn thresholds_table_and_budget_exit() {
    let dir = tempfile::tempdir().unwrap();
    let st = bin().args(["thresholds", "--q-max", "60", "--out"]).arg(dir.path()).output().unwrap().status;
    assert_eq!(st.code(), Some(0));
    let csv = std::fs::read_to_string(dir.path().join("thresholds.csv")).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("kind,q,y,total,ratio,bound,holds"));
    assert!(csv.lines().any(|l| l.starts_with("T2,5,2,26,")));

    let cfg = dir.path().join("tight.ini");
    std::fs::write(&cfg, "threshold_limit = 10\n").unwrap();
    let st = bin().args(["thresholds", "--q-max", "60", "--config"]).arg(&cfg).arg("--out").arg(dir.path()).output().unwrap().status;
    assert_eq!(st.code(), Some(3));
    assert!(read_json(dir.path())["checks"].as_array().unwrap().iter().all(|c| c["skip_reason"] == "budget"));
}

#[test]
fn identity_reports_skipped_packet_when_nothing_is_regular() {
    let dir = tempfile::tempdir().unwrap();
    let st = bin().args(["identity", "--q", "3", "--kind", "1", "--eta-branch", "both", "--out"]).arg(dir.path()).output().unwrap().status;
    assert_eq!(st.code(), Some(0));
    let doc = read_json(dir.path());
    let packet = doc["checks"].as_array().unwrap().iter().find(|c| c["id"] == "packet.T1.q3.minus").unwrap().clone();
    assert_eq!(packet["outcome"], "SKIPPED");
    assert_eq!(packet["skip_reason"], "not-applicable");
}
