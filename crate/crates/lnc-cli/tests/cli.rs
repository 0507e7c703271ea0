use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn lnc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lnc")).args(args).output().expect("binary runs")
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("lnc-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, contents).unwrap();
    p
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("report is JSON")
}

fn max_jump(csv: &[u8]) -> f64 {
    let text = String::from_utf8(csv.to_vec()).unwrap();
    let line = text.lines().find(|l| l.starts_with("max_jump,")).expect("footer");
    line["max_jump,".len()..].parse().unwrap()
}

#[test]
fn exit_codes() {
    let ball = scratch("ball.json", r#"{"kind":"ball","center":[0,0,0],"radius":1}"#);
    let bad = scratch("bad.json", r#"{"kind":"ball""#);
    assert_eq!(lnc(&["--body", ball.to_str().unwrap(), "--pairs", "40", "check-lnc"]).status.code(), Some(0));
    assert_eq!(lnc(&["--gallery", "cone9", "--seed", "1", "check-lnc"]).status.code(), Some(1));
    assert_eq!(lnc(&["--body", bad.to_str().unwrap(), "check-lnc"]).status.code(), Some(2));
    assert_eq!(lnc(&["--gallery", "nope", "check-lnc"]).status.code(), Some(2));
    assert_eq!(lnc(&["--gallery", "square", "--map", "x+y", "--target", "2.5", "section"]).status.code(), Some(1));
}

#[test]
fn section_reports() {
    let ball = scratch("ball3.json", r#"{"kind":"ball","center":[0,0,0],"radius":1}"#);
    let out = lnc(&["--body", ball.to_str().unwrap(), "--map", "proj-xy", "--target", "0.6,0", "--method", "min-norm", "section"]);
    assert!(out.status.success());
    let r = json(&out);
    let p: Vec<f64> = r["result"]["point"].as_array().unwrap().iter().map(|v| v.as_f64().unwrap()).collect();
    assert!((p[0] - 0.6).abs() < 1e-7 && p[1].abs() < 1e-7 && p[2].abs() < 1e-7);
    assert_eq!(r["config"]["membership_tol"].as_f64(), Some(1e-9));
    assert!(r.get("timestamp").is_some());

    let out = lnc(&["--gallery", "epigraph19", "--target", "0.5", "--method", "gamma", "section"]);
    let p = &json(&out)["result"]["point"];
    assert!((p[0].as_f64().unwrap() - 0.5).abs() < 1e-7);
    assert!(p[1].as_f64().unwrap().abs() < 1e-6);
    assert!((p[2].as_f64().unwrap() - 2.0).abs() < 1e-6);
}

#[test]
fn probes_match_the_gallery_examples() {
    let out = lnc(&["--gallery", "cone9", "--method", "gv-lowest", "probe"]);
    assert!(out.status.success());
    assert!(max_jump(&out.stdout) >= 0.99);

    let out = lnc(&["--gallery", "square", "--map", "x", "--method", "gamma", "probe", "--path", "segment:0.1;0.9;100"]);
    assert!(max_jump(&out.stdout) <= 0.1);

    let out = lnc(&["--gallery", "helix10", "--n", "128", "--method", "min-norm", "probe"]);
    assert!(max_jump(&out.stdout) >= 6.0);
}

#[test]
fn embedded_config_reproduces_the_report() {
    let first = lnc(&["--gallery", "psd12", "--pairs", "80", "--seed", "4", "--deterministic", "check-lnc"]);
    let report = scratch("report.json", std::str::from_utf8(&first.stdout).unwrap());
    let again = lnc(&["--gallery", "psd12", "--config", report.to_str().unwrap(), "--deterministic", "check-lnc"]);
    assert_eq!(first.stdout, again.stdout);
    assert!(json(&first).get("timestamp").is_none());
}

#[test]
fn out_flag_writes_the_file() {
    let dir = scratch("placeholder", "");
    let target = dir.with_file_name("list.json");
    let out = lnc(&["--out", target.to_str().unwrap(), "gallery", "list"]);
    assert!(out.status.success());
    let text = std::fs::read_to_string(&target).unwrap();
    for id in ["ball", "cone9", "epigraph19", "example13", "helix10", "polytope", "prop11", "psd12", "square", "zonotope"] {
        assert!(text.contains(&format!("\"{id}\"")), "{id} missing");
    }
}

#[test]
fn gallery_runs_agree_with_their_verdicts() {
    for id in ["cone9", "psd12", "ball", "square"] {
        let out = lnc(&["--deterministic", "gallery", "run", id]);
        assert_eq!(out.status.code(), Some(0), "{id}: {}", String::from_utf8_lossy(&out.stderr));
        assert_eq!(json(&out)["result"]["agrees"], Value::Bool(true), "{id}");
    }
}
