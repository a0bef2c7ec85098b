use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn cubeworks(workspace: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cubeworks"))
        .args(args)
        .env("CUBEWORKS_WORKSPACE", workspace)
        .output()
        .expect("binary runs")
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn boundary_homology_pipelines_agree() {
    let ws = tempfile::tempdir().unwrap();
    let out = cubeworks(ws.path(), &["homology", "boundary3", "--pipeline", "both"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["schema"], "cubeworks/1");
    assert_eq!(v["body"]["agree"], true);
    for p in ["cubical", "triangulated"] {
        assert_eq!(v["body"]["pipelines"][p]["summary"], "H0=Z H2=Z");
    }
}

#[test]
fn saved_artifacts_are_inputs() {
    let ws = tempfile::tempdir().unwrap();
    let out = cubeworks(ws.path(), &["cube", "build", "boundary", "2", "--save", "circle"]);
    assert_eq!(out.status.code(), Some(0));
    let stored = std::fs::read(ws.path().join("circle.json")).unwrap();
    assert_eq!(stored, out.stdout);
    let t = cubeworks(ws.path(), &["cube", "tensor", "circle", "circle", "--save", "torus"]);
    assert_eq!(t.status.code(), Some(0));
    let h = json_of(&cubeworks(ws.path(), &["homology", "torus"]));
    assert_eq!(h["body"]["pipelines"]["cubical"]["summary"], "H0=Z H1=Z^2 H2=Z");
    let manifest: Value = serde_json::from_slice(&std::fs::read(ws.path().join("manifest.json")).unwrap()).unwrap();
    assert_eq!(manifest["entries"]["torus"]["kind"], "cubical_set");
}

#[test]
fn exit_codes() {
    let ws = tempfile::tempdir().unwrap();
    assert_eq!(cubeworks(ws.path(), &["nonsense"]).status.code(), Some(2));
    assert_eq!(cubeworks(ws.path(), &["homology", "missing"]).status.code(), Some(2));
    assert_eq!(cubeworks(ws.path(), &["cube", "build", "cube", "40"]).status.code(), Some(3));
    assert_eq!(cubeworks(ws.path(), &["enriched", "h-cat", "P", "--bound", "2"]).status.code(), Some(3));
    let broken = cubeworks(ws.path(), &["quillen", "check", "--max-dim", "2", "--cylinder", "broken"]);
    assert_eq!(broken.status.code(), Some(1));
    assert_eq!(json_of(&broken)["body"]["passed"], false);
}

#[test]
fn quillen_check_passes_through_three() {
    let ws = tempfile::tempdir().unwrap();
    let out = cubeworks(ws.path(), &["--jobs", "2", "quillen", "check", "--max-dim", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    let gens = v["body"]["generators"].as_array().unwrap();
    // boundaries of □⁰ to □³, open boxes of □¹ to □³
    assert_eq!(gens.len(), 4 + 2 * (1 + 2 + 3));
    assert!(gens.iter().all(|g| g["passed"] == true));
}

#[test]
fn enriched_commands() {
    let ws = tempfile::tempdir().unwrap();
    let d = ws.path();
    assert_eq!(cubeworks(d, &["enriched", "build", "E", "--save", "E"]).status.code(), Some(0));
    assert_eq!(cubeworks(d, &["enriched", "localize", "E", "f", "--save", "Ef"]).status.code(), Some(0));
    let h = json_of(&cubeworks(d, &["enriched", "h-cat", "Ef", "--bound", "2"]));
    assert!(h["body"]["objects"].as_array().unwrap().len() == 2);
    let m = json_of(&cubeworks(d, &["enriched", "map-space", "Ef", "c", "c", "--bound", "1"]));
    assert_eq!(m["body"]["source"], "c");
    let r = json_of(&cubeworks(d, &["enriched", "extend-inverse", "H", "u", "--bound", "2"]));
    assert_eq!(r["body"]["status"], "inconclusive");
    assert_eq!(r["body"]["left"]["inverse"], "[v]");
    assert!(r["body"]["right"].is_null());
    let t = json_of(&cubeworks(d, &["enriched", "extend-inverse", "tilde", "f", "--bound", "2"]));
    assert_eq!(t["body"]["status"], "found");
}

#[test]
fn james_summary() {
    let ws = tempfile::tempdir().unwrap();
    let v = json_of(&cubeworks(ws.path(), &["james", "circle", "--bound", "3", "--summary"]));
    assert_eq!(v["body"]["homology"], "H0=Z H1=Z H2=Z H3=Z");
    let w = json_of(&cubeworks(ws.path(), &["james", "wedge2", "--bound", "3", "--summary"]));
    assert_eq!(w["body"]["homology"], "H0=Z");
}

#[test]
fn verify_subset_is_deterministic() {
    let ws = tempfile::tempdir().unwrap();
    let run = || {
        let out = cubeworks(ws.path(), &["verify", "all", "--only", "9,1"]);
        assert_eq!(out.status.code(), Some(0));
        let mut v = json_of(&out);
        v["body"]["generated_at"] = Value::Null;
        assert!(String::from_utf8_lossy(&out.stderr).contains("PASS 1"));
        v
    };
    let a = run();
    assert_eq!(a, run());
    let ids: Vec<u64> = a["body"]["criteria"].as_array().unwrap().iter().map(|c| c["id"].as_u64().unwrap()).collect();
    assert_eq!(ids, vec![1, 9]);
}
