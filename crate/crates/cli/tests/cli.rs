use std::path::{Path, PathBuf};
use std::process::Command;

use network_core::samples::{parallel_pair, single_edge, star3, star3_linear};
use network_core::{ConductanceSpec, Network};
use proptest::prelude::*;
use serde_json::{json, Value};
use tempfile::TempDir;

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = cli::run(std::iter::once("netrecover").chain(args.iter().copied()), &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn json_of(args: &[&str]) -> Value {
    let (code, out, err) = run(args);
    assert_eq!(code, 0, "{err}");
    serde_json::from_str(&out).unwrap()
}

fn save(dir: &TempDir, name: &str, value: Value) -> PathBuf {
    let path = dir.path().join(name);
    std::fs::write(&path, serde_json::to_string_pretty(&value).unwrap()).unwrap();
    path
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn close(a: f64, b: f64) -> bool {
    (a - b).abs() < 1e-8
}

#[test]
fn response_of_a_single_edge() {
    let dir = TempDir::new().unwrap();
    let f = save(&dir, "edge.json", json!(single_edge(ConductanceSpec::linear(5.0))));
    assert_eq!(json_of(&["response", s(&f)]), json!([[5.0, -5.0], [-5.0, 5.0]]));
}

#[test]
fn check_reports_recoverability() {
    let dir = TempDir::new().unwrap();
    let star = save(&dir, "star.json", json!(star3_linear([1.0, 2.0, 3.0])));
    let pair = save(&dir, "pair.json", json!(parallel_pair(1.0, 2.0)));
    let (code, out, _) = run(&["check", s(&star)]);
    assert_eq!((code, out.trim()), (0, "RECOVERABLE"));
    let (code, out, _) = run(&["check", s(&pair)]);
    assert_eq!(code, 0);
    assert!(out.starts_with("NOT RECOVERABLE, DoubleCrossing"), "{out}");
    let v = json_of(&["--json", "check", s(&pair)]);
    assert_eq!(v["recoverable"], json!(false));
    assert!(v["witness"].is_object());
    assert_eq!(json_of(&["check", "--json", s(&star)])["recoverable"], json!(true));
}

#[test]
fn validate_sets_the_exit_code() {
    let dir = TempDir::new().unwrap();
    let good = save(&dir, "good.json", json!(star3_linear([1.0, 1.0, 1.0])));
    let mut broken: Network = star3_linear([1.0, 1.0, 1.0]);
    broken.rotations.remove("h");
    let bad = save(&dir, "bad.json", json!(broken));
    assert_eq!(run(&["validate", s(&good)]).0, 0);
    assert_eq!(run(&["validate", s(&bad)]).0, 1);
    assert_eq!(json_of(&["--json", "validate", s(&good)])["valid"], json!(true));
    let (code, _, err) = run(&["validate", s(&dir.path().join("missing.json"))]);
    assert_eq!(code, 1);
    assert!(err.starts_with("error:"));
}

#[test]
fn recover_the_three_star() {
    let dir = TempDir::new().unwrap();
    let hidden = save(&dir, "hidden.json", json!(star3_linear([1.0, 2.0, 3.0])));
    let bare = save(&dir, "shape.json", json!(star3_linear([1.0, 2.0, 3.0]).shape()));
    let decoy = save(&dir, "decoy.json", json!(star3_linear([7.0, 7.0, 7.0])));
    for extra in [&["--linear"][..], &["--probes", "1,2,4"][..], &["--probes", "1,2,4", "--order", "last"][..]] {
        let from_bare = [&["recover", s(&bare), "--hidden", s(&hidden)][..], extra].concat();
        let from_decoy = [&["recover", s(&decoy), "--hidden", s(&hidden)][..], extra].concat();
        let v = json_of(&from_bare);
        assert!(v["max_deviation"].as_f64().unwrap() < 1e-8, "{v}");
        assert_eq!(v["within_tolerance"], json!(true));
        assert!(v["oracle_queries"].as_u64().unwrap() > 0);
        assert_eq!(run(&from_bare).1, run(&from_decoy).1);
    }
}

#[test]
fn recover_refuses_a_parallel_pair() {
    let dir = TempDir::new().unwrap();
    let pair = save(&dir, "pair.json", json!(parallel_pair(1.0, 2.0)));
    let (code, _, err) = run(&["recover", s(&pair), "--hidden", s(&pair), "--linear"]);
    assert_eq!(code, 1);
    assert!(err.contains("DoubleCrossing"), "{err}");
}

#[test]
fn dirichlet_and_neumann_agree_with_the_response() {
    let dir = TempDir::new().unwrap();
    let net = star3_linear([1.0, 2.0, 3.0]);
    let f = save(&dir, "star.json", json!(net));
    let volts = save(&dir, "v.json", json!({ "role": "voltage", "v1": 1.0, "v2": 0.0, "v3": -2.0 }));
    let lambda = forward::response_matrix(&net).unwrap().apply(&[1.0, 0.0, -2.0]);
    let d = json_of(&["dirichlet", s(&f), "--boundary", s(&volts)]);
    for (k, want) in ["v1", "v2", "v3"].iter().zip(&lambda) {
        assert!(close(d["boundary_currents"][k].as_f64().unwrap(), *want), "{d}");
    }
    // hub voltage is the conductance-weighted mean
    assert!(close(d["voltages"]["h"].as_f64().unwrap(), -5.0 / 6.0));

    let currents = json!({ "role": "current", "v1": lambda[0], "v2": lambda[1], "v3": lambda[2] });
    let i = save(&dir, "i.json", currents);
    let n = json_of(&["neumann", s(&f), "--boundary", s(&i)]);
    let back: Vec<f64> = ["v1", "v2", "v3"].iter().map(|k| n["boundary_voltages"][k].as_f64().unwrap()).collect();
    let shift = back[0] - 1.0;
    assert!(close(back[1] - shift, 0.0) && close(back[2] - shift, -2.0), "{n}");

    let unbalanced = save(&dir, "u.json", json!({ "role": "current", "v1": 1.0, "v2": 0.0, "v3": 0.0 }));
    assert_eq!(run(&["neumann", s(&f), "--boundary", s(&unbalanced)]).0, 1);
    assert_eq!(run(&["dirichlet", s(&f), "--boundary", s(&i)]).0, 1);
}

#[test]
fn transform_keeps_the_response() {
    let dir = TempDir::new().unwrap();
    let net = star3_linear([1.0, 2.0, 3.0]);
    let f = save(&dir, "star.json", json!(net));
    let o = dir.path().join("delta.json");
    let (code, out, err) = run(&["transform", s(&f), "--op", "ydelta", "--at", "h", "-o", s(&o)]);
    assert_eq!(code, 0, "{err}");
    assert!(serde_json::from_str::<Value>(&out).unwrap().is_object());
    let delta: Network = serde_json::from_str(&std::fs::read_to_string(&o).unwrap()).unwrap();
    assert!(delta.interior.is_empty());
    assert_eq!(run(&["validate", s(&o)]).0, 0);
    let gap = forward::response_matrix(&net).unwrap().max_abs_diff(&forward::response_matrix(&delta).unwrap());
    assert!(gap < 1e-12);

    let back = json_of(&["transform", s(&o), "--op", "deltay", "--at", "v1,v2,v3"]);
    let star: Network = serde_json::from_value(back["network"].clone()).unwrap();
    assert_eq!(star.interior.len(), 1);
}

#[test]
fn usage_errors_exit_with_two() {
    let dir = TempDir::new().unwrap();
    let f = save(&dir, "star.json", json!(star3_linear([1.0, 2.0, 3.0])));
    assert_eq!(run(&["transform", s(&f), "--op", "ydelta", "--at", "h,v1"]).0, 2);
    assert_eq!(run(&["--tolerance", "0", "check", s(&f)]).0, 2);
    assert_eq!(run(&["frobnicate"]).0, 2);
    assert_eq!(run(&["el2n", "verify", "--n", "0"]).0, 2);
    assert_eq!(run(&["el2n", "probe", "--word", "1,9", "--n", "2"]).0, 2);
    assert_eq!(run(&["--help"]).0, 0);
}

#[test]
fn transform_domain_errors_exit_with_one() {
    let dir = TempDir::new().unwrap();
    let f = save(&dir, "star.json", json!(star3_linear([1.0, 2.0, 3.0])));
    assert_eq!(run(&["transform", s(&f), "--op", "series", "--at", "h"]).0, 1);
    assert_eq!(run(&["transform", s(&f), "--op", "ydelta", "--at", "nope"]).0, 1);
}

#[test]
fn el2n_commands() {
    let (code, out, _) = run(&["el2n", "verify", "--n", "3", "--samples", "20"]);
    assert_eq!(code, 0);
    assert!(out.trim_end().ends_with("PASS"));
    let v = json_of(&["--json", "el2n", "verify"]);
    assert_eq!(v["passes"], json!(true));

    let reduced = json_of(&["--json", "el2n", "probe", "--word", "1,2,1", "--trials", "200"]);
    assert_eq!((reduced["reduced"].clone(), reduced["collision"].clone()), (json!(true), Value::Null));
    let repeat = json_of(&["--json", "el2n", "probe", "--word", "1,1", "--trials", "50"]);
    assert!(repeat["collision"].is_object());
    let (_, text, _) = run(&["el2n", "probe", "--word", "1,3,1", "--n", "2", "--mode", "nonlinear-u", "--trials", "50"]);
    assert!(text.contains("reduced: no") && text.contains("collision: distance"), "{text}");
}

#[test]
fn medial_writes_svg() {
    let dir = TempDir::new().unwrap();
    let f = save(&dir, "star.json", json!(star3_linear([1.0, 2.0, 3.0])));
    let svg = dir.path().join("m.svg");
    let (code, out, _) = run(&["medial", s(&f), "--svg", s(&svg)]);
    assert_eq!(code, 0);
    assert!(!out.is_empty());
    let text = std::fs::read_to_string(&svg).unwrap();
    assert!(text.starts_with("<?xml") && text.contains("<svg") && text.trim_end().ends_with("</svg>"));
    assert!(json_of(&["--json", "medial", s(&f)]).is_object());
}

#[test]
fn binary_reports_exit_codes() {
    let dir = TempDir::new().unwrap();
    let pwl = ConductanceSpec::pwl(vec![[1.0, 2.0], [2.0, 3.0]], 1.0);
    let f = save(&dir, "star.json", json!(star3([pwl.clone(), pwl.clone(), pwl])));
    let bin = env!("CARGO_BIN_EXE_netrecover");
    let ok = Command::new(bin).args(["check", s(&f)]).output().unwrap();
    assert_eq!(ok.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&ok.stdout).trim(), "RECOVERABLE");
    let bad = Command::new(bin).args(["response", s(&f)]).output().unwrap();
    assert_eq!(bad.status.code(), Some(1));
    let usage = Command::new(bin).arg("nonsense").output().unwrap();
    assert_eq!(usage.status.code(), Some(2));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn reruns_are_byte_identical(seed in 0u64..1000) {
        let seed = seed.to_string();
        let args = ["--seed", seed.as_str(), "el2n", "probe", "--word", "1,2,1,2", "--trials", "40"];
        prop_assert_eq!(run(&args), run(&args));
        let verify = ["--seed", seed.as_str(), "--json", "el2n", "verify", "--samples", "5"];
        prop_assert_eq!(run(&verify), run(&verify));
    }
}
