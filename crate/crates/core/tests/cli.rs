use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn run(args: &[&str], stdin: Option<&str>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_gelfand"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    if let Some(s) = stdin {
        child.stdin.take().unwrap().write_all(s.as_bytes()).unwrap();
    } else {
        drop(child.stdin.take());
    }
    child.wait_with_output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn audit_diagonal_n2() {
    let out = run(&["audit", "--family", "diagonal", "--n", "2"], None);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["schema"], "1");
    let orbits = v["orbits"].as_array().unwrap();
    assert_eq!(orbits.len(), 2);
    assert!(orbits.iter().all(|o| o["archimedean_pass"] == true && o["eigen_lemma_pass"] == true));
    assert_eq!(orbits[0]["trace_on_hx"], "2");
    assert!(v["facts"]["derived"].get("SPECIAL").is_some());
    assert!(v["facts"]["derived"].get("TAME").is_some());
}

#[test]
fn audit_quadratic_with_assumptions_reaches_gp1() {
    let out = run(
        &[
            "audit", "--family", "quadratic_ext", "--n", "2", "--d", "-1",
            "--assume", "ALL_DESC_H1_TRIVIAL", "--assume", "GLN_WITH_TRANSPOSE_STABLE_H",
        ],
        None,
    );
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    for a in ["TRACE_BOUND_ALL_NILPOTENT", "GK", "GP1", "GP3"] {
        assert!(v["facts"]["derived"].get(a).is_some(), "{a}");
    }
}

#[test]
fn audit_rejects_oversized_n() {
    let out = run(&["audit", "--family", "diagonal", "--n", "7"], None);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["audit", "--family", "diagonal", "--n", "3", "--max-orbit-n", "2"], None);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn bad_input_exits_2() {
    assert_eq!(run(&["audit", "--family", "quadratic_ext", "--n", "2", "--d", "4"], None).status.code(), Some(2));
    assert_eq!(run(&["weil", "--place", "p:6", "--form", "1"], None).status.code(), Some(2));
    assert_eq!(run(&["infer"], Some(r#"{"atoms":["NOPE"]}"#)).status.code(), Some(2));
    assert_eq!(run(&["bogus"], None).status.code(), Some(2));
    let out = run(&["descend", "--family", "diagonal", "--n", "2", "--partition", "2"], None);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn weil_examples() {
    let v = json(&run(&["weil", "--place", "p:5", "--form", "1", "--t", "2"], None));
    assert_eq!(v["gamma"]["exponent"], 0);
    assert_eq!(v["delta"]["exponent"], 0);
    let v = json(&run(&["weil", "--place", "real", "--form", "1", "--t", "-1"], None));
    assert_eq!(v["delta"]["exponent"], 2);
    let v = json(&run(&["weil", "--place", "real", "--form", "1,1"], None));
    assert_eq!(v["gamma"]["exponent"], 2);
    let v = json(&run(&["weil", "--place", "p:5", "--form", "5", "--t", "2"], None));
    // γ(5) = (1/5)·1, γ(10) = (2/5)·1 = −1
    assert_eq!(v["delta"]["exponent"], 4);
}

#[test]
fn infer_empty_and_chain() {
    let out = run(&["infer"], Some("{}"));
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["atoms"].as_array().unwrap().len(), 0);
    let v = json(&run(&["infer"], Some(r#"{"pair_id":"p","atoms":["SPECIAL"]}"#)));
    assert_eq!(v["atoms"], serde_json::json!(["SPECIAL", "WEAKLY_LINEARLY_TAME", "REGULAR"]));
}

#[test]
fn triple_and_descend() {
    let v = json(&run(&["triple", "--family", "diagonal", "--n", "2", "--partition", "2"], None));
    assert_eq!(v["relations_hold"], true);
    assert_eq!(v["h"]["1:E11"], "1");
    assert_eq!(v["h"]["2:E22"], "-1");
    let v = json(&run(&["descend", "--family", "diagonal", "--n", "2", "--matrix", "1,0;0,-1"], None));
    assert_eq!(v["descendant"]["dim_g"], 4);
    assert_eq!(v["dimension_identity"]["holds"], true);
    assert_eq!(v["family_shape"], true);
}

#[test]
fn custom_spec_file() {
    let dir = std::env::temp_dir().join(format!("gelfand-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("pair.json");
    // gl1 ⊕ gl1 with the swap
    std::fs::write(
        &path,
        r#"{"family":"custom","custom":{"dim":2,
            "structure_constants":[[[0,0],[0,0]],[[0,0],[0,0]]],
            "theta_matrix":[[0,1],[1,0]],
            "realization":[[[1,0],[0,0]],[[0,0],[0,1]]],
            "representatives":[[0,0]]}}"#,
    )
    .unwrap();
    let out = run(&["audit", "--spec", path.to_str().unwrap()], None);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["orbit_scope"], "representatives as supplied");
    std::fs::write(&path, r#"{"family":"custom","custom":{"dim":1}}"#).unwrap();
    assert_eq!(run(&["audit", "--spec", path.to_str().unwrap()], None).status.code(), Some(2));
    let _ = std::fs::remove_dir_all(&dir);
}
