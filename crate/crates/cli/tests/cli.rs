use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn sdist(args: &[&str], stdin: Option<&[u8]>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_sdist"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("spawn sdist");
    if let Some(bytes) = stdin {
        child.stdin.take().unwrap().write_all(bytes).unwrap();
    }
    drop(child.stdin.take());
    child.wait_with_output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn johnson2_report() {
    let cat = sdist(&["catalog", "johnson2", "--n", "5"], None);
    assert!(cat.status.success());
    let out = sdist(&["analyze", "-"], Some(&cat.stdout));
    assert!(out.status.success());
    let r = json(&out);
    assert_eq!(r["k"][0]["exact"], "2");
    assert_eq!(r["k"][1]["exact"], "-1");
    assert_eq!(r["k_integral"], serde_json::json!([true, true]));
    assert_eq!(r["thresholds"]["threshold_met_new"], true);
    assert_eq!(r["N_new"], 5);
}

#[test]
fn pentagon_pipes_into_analyze() {
    let cat = sdist(&["catalog", "polygon", "--n", "5"], None);
    let out = sdist(&["analyze", "-"], Some(&cat.stdout));
    assert!(out.status.success());
    let r = json(&out);
    assert_eq!(r["k_integral"], serde_json::json!([false, false]));
    assert_eq!(r["thresholds"]["threshold_met_new"], false);
    assert_eq!(r["k"][0]["exact"]["m"], 5);
}

#[test]
fn every_catalog_family_pipes() {
    let cases: &[&[&str]] = &[
        &["simplex", "--n", "4"],
        &["cross-polytope", "--d", "3"],
        &["johnson", "--n", "6", "--w", "3"],
        &["hypercube", "--d", "3"],
        &["polygon", "--n", "12"],
        &["paley", "--q", "13"],
    ];
    for case in cases {
        let mut args = vec!["catalog"];
        args.extend_from_slice(case);
        let cat = sdist(&args, None);
        assert!(cat.status.success(), "{:?}", case);
        let out = sdist(&["analyze", "-", "--certificates"], Some(&cat.stdout));
        assert!(out.status.success(), "{:?}: {}", case, String::from_utf8_lossy(&out.stderr));
    }
}

#[test]
fn reports_are_byte_identical() {
    let cat = sdist(&["catalog", "paley", "--q", "13"], None);
    let a = sdist(&["analyze", "-", "--certificates"], Some(&cat.stdout));
    let b = sdist(&["analyze", "-", "--certificates"], Some(&cat.stdout));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn recover_prints_spectrum() {
    let out = sdist(&["recover", "--k", "3,-3,1", "--tol", "1e-9"], None);
    assert!(out.status.success());
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "0.333333333333, 0.666666666667, 1");
}

#[test]
fn input_errors_exit_2_with_json() {
    for (args, stdin) in [
        (vec!["analyze", "-"], Some(&b"{ not json"[..])),
        (vec!["recover", "--k", "2,1"], None),
        (vec!["recover", "--k", "2,-1", "--tol", "0"], None),
        (vec!["catalog", "paley", "--q", "7"], None),
        (vec!["catalog", "dodecahedron"], None),
        (vec!["verify", "--suite", "lemma9"], None),
    ] {
        let out = sdist(&args, stdin);
        assert_eq!(out.status.code(), Some(2), "{:?}", args);
        let err: Value = serde_json::from_slice(&out.stderr).expect("stderr is JSON");
        assert!(err["error"].is_string() && err["message"].is_string());
    }
}

#[test]
fn verify_passing_suite() {
    let out = sdist(&["verify", "--suite", "lemma4", "--format", "text"], None);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("lemma4: pass"));
}

#[test]
fn verify_all_orders_suites_stably() {
    let out = sdist(&["verify", "--suite", "all"], None);
    let reports = json(&out);
    let names: Vec<&str> = reports.as_array().unwrap().iter().map(|r| r["suite"].as_str().unwrap()).collect();
    assert_eq!(names, ["lemma4", "lemma5", "lemma6", "theorem3", "bbs", "integrality", "evaluation"]);
    let all_pass = reports.as_array().unwrap().iter().all(|r| r["pass"] == true);
    assert_eq!(out.status.code(), Some(if all_pass { 0 } else { 1 }));
}

#[test]
fn out_flag_writes_file() {
    let path = std::env::temp_dir().join(format!("sdist-out-{}.json", std::process::id()));
    let out = sdist(&["catalog", "simplex", "--n", "3", "--out", path.to_str().unwrap()], None);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    std::fs::remove_file(&path).ok();
    assert_eq!(serde_json::from_str::<Value>(&text).unwrap()["name"], "simplex");
}
