use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn tgs(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tgs")).args(args).output().expect("binary runs")
}

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data").join(name).display().to_string()
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut all = vec!["--format", "json"];
    all.extend_from_slice(args);
    let out = tgs(&all);
    let v: Value = serde_json::from_slice(&out.stdout).expect("json output");
    check_schema(&v);
    (out.status.code().unwrap(), v)
}

fn check_schema(v: &Value) {
    let schema: Value = serde_json::from_str(include_str!("../schema/report.schema.json")).unwrap();
    let obj = v.as_object().unwrap();
    for key in schema["required"].as_array().unwrap() {
        assert!(obj.contains_key(key.as_str().unwrap()), "missing {key}");
    }
    assert_eq!(obj.len(), schema["properties"].as_object().unwrap().len());
    let statuses = ["PASS", "FAIL", "SKIPPED"];
    assert!(statuses.contains(&v["status"].as_str().unwrap()));
    for it in v["items"].as_array().unwrap() {
        assert!(statuses.contains(&it["status"].as_str().unwrap()));
        assert!(it["name"].is_string() && it["detail"].is_string());
    }
    let n = |k: &str| v["summary"][k].as_u64().unwrap() as usize;
    assert_eq!(n("pass") + n("fail") + n("skipped"), v["items"].as_array().unwrap().len());
}

#[test]
fn geodesic_length_of_the_skew_direction() {
    let out = tgs(&["geodesic", "length", "--H", "(9*l1 + 5*l2)/sqrt(21)"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("length: 4/3*pi*sqrt(21)"), "{text}");
    let (code, v) = json(&["geodesic", "length", "--H", "(2*l2 + 3*l5)/sqrt(21)"]);
    assert_eq!(code, 0);
    assert_eq!(v["data"]["length"], "4/3*pi*sqrt(21)");
    assert_eq!(v["data"]["length_over_pi"], "4/3*sqrt(21)");
}

#[test]
fn geodesic_length_rejects_other_spaces() {
    assert_eq!(tgs(&["geodesic", "length", "--H", "l1", "--space", "EIV"]).status.code(), Some(2));
    assert_eq!(tgs(&["geodesic", "length", "--H", "l1*l2"]).status.code(), Some(2));
}

#[test]
fn space_info() {
    let (code, v) = json(&["space", "info", "EIII"]);
    assert_eq!(code, 0);
    assert_eq!(v["data"]["dim_m"], 32);
    assert_eq!(v["data"]["restricted_type"], "BC2");
    assert_eq!(v["data"]["diagram"], "6<=>8[1]");
    let mults: Vec<u64> = v["data"]["roots"].as_array().unwrap().iter().map(|r| r["multiplicity"].as_u64().unwrap()).collect();
    assert_eq!(mults, vec![8, 8, 6, 6, 1, 1]);
}

#[test]
fn foundations() {
    for s in ["G2group", "EIV"] {
        let (code, v) = json(&["space", "verify-foundations", s]);
        assert_eq!(code, 0, "{v}");
        assert_eq!(v["status"], "PASS");
    }
}

#[test]
fn catalog_verify_g2() {
    let (code, v) = json(&["catalog", "verify", "G2"]);
    assert_eq!(code, 0);
    assert_eq!(v["summary"]["pass"], 24);
    assert_eq!(v["data"]["families"], 10);
}

#[test]
fn catalog_containments_and_derived() {
    let (code, v) = json(&["catalog", "containments", "EIV"]);
    assert_eq!(code, 0);
    assert_eq!(v["summary"]["pass"], 28);
    let (code, v) = json(&["catalog", "derived", "G2group", "--host", "(G)"]);
    assert_eq!(code, 0);
    assert_eq!(v["data"]["host_diagram"], "1=>>1");
    assert_eq!(v["summary"]["skipped"], 1);
    assert_eq!(tgs(&["catalog", "derived", "G2group", "--host", "(AI)"]).status.code(), Some(2));
}

#[test]
fn lts_check_files() {
    let (code, v) = json(&["lts", "check", &data("eiii_diii.sub")]);
    assert_eq!(code, 0);
    assert_eq!(v["data"]["dim"], 20);
    assert_eq!(v["data"]["rank"], 2);
    assert_eq!(v["data"]["complexity"], "complex");
    assert!(v["data"]["candidates"].as_array().unwrap().iter().any(|c| c == "(DIII)"));
    let (code, v) = json(&["lts", "check", &data("g2_g.sub")]);
    assert_eq!(code, 0);
    assert_eq!(v["data"]["diagram"], "1=>>1");
    let (code, v) = json(&["lts", "check", &data("g2_not_closed.sub")]);
    assert_eq!(code, 1);
    assert_eq!(v["status"], "FAIL");
    assert_eq!(tgs(&["lts", "check", "/nonexistent.sub"]).status.code(), Some(2));
}

#[test]
fn curvature_eval_g2() {
    let (code, v) = json(&["curvature", "eval", "G2group", "--x", "H[l1](1)", "--y", "V[l2](1)", "--z", "V[l1](1)"]);
    assert_eq!(code, 0);
    assert_eq!(v["data"]["result"], "V[l3](3/4*i*sqrt(3))");
    assert_eq!(tgs(&["curvature", "eval", "G2group", "--x", "M[l9](1)", "--y", "a(1,0)", "--z", "a(0,1)"]).status.code(), Some(2));
}

#[test]
fn curvature_identities_exit_codes() {
    let (code, v) = json(&["curvature", "identities", "G2group"]);
    assert_eq!(code, 0);
    assert_eq!(v["summary"]["fail"], 0);
    let (code, v) = json(&["curvature", "identities", "EIII"]);
    assert_eq!(code, 1);
    assert_eq!(v["status"], "FAIL");
}

#[test]
fn models_verify() {
    let (code, v) = json(&["models", "verify"]);
    assert_eq!(code, 0);
    assert_eq!(v["summary"]["pass"], 29);
}

#[test]
fn usage_errors() {
    assert_eq!(tgs(&["space", "info", "EVIII"]).status.code(), Some(2));
    assert_eq!(tgs(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(tgs(&["--format", "yaml", "models", "verify"]).status.code(), Some(2));
}

#[test]
fn markdown_output() {
    let out = tgs(&["space", "verify-foundations", "G2group"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("# space verify-foundations G2group"));
    assert!(text.contains("| Jacobi identity | PASS |"));
}
