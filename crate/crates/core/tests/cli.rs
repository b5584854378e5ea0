use std::process::{Command, Output};

use serde_json::Value;

fn chtg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_chtg"))
        .args(args)
        .env_remove("CHTG_PRECISION_BITS")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    assert_eq!(o.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_slice(&o.stdout).expect("valid json")
}

#[test]
fn scan_rows() {
    let v = json(&chtg(&["scan", "--m", "2", "--alpha-steps", "8"]));
    let rows = v.as_array().unwrap();
    assert_eq!(rows.len(), 8);
    assert!(rows.iter().all(|r| r["class"] == "Boundary"));

    let v = json(&chtg(&["scan", "--m", "3", "--alpha-steps", "4"]));
    let row = &v.as_array().unwrap()[2];
    assert!((row["alpha"].as_f64().unwrap() - std::f64::consts::PI).abs() < 1e-15);
    assert!((row["tau_re"].as_f64().unwrap() + 5.0).abs() < 1e-12);
    assert!(row["tau_im"].as_f64().unwrap().abs() < 1e-12);
    assert_eq!(row["class"], "Loxodromic");
}

#[test]
fn scan_csv() {
    let o = chtg(&["scan", "--m", "5", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("alpha,tau_re,tau_im,f,class"));
    assert_eq!(lines.count(), 1024);
}

#[test]
fn windows_output() {
    let v = json(&chtg(&["windows", "--m", "2"]));
    assert_eq!(v, Value::Array(vec![]));
    let v = json(&chtg(&["windows", "--m", "10"]));
    let w: Vec<(f64, f64)> = v
        .as_array()
        .unwrap()
        .iter()
        .map(|p| (p[0].as_f64().unwrap(), p[1].as_f64().unwrap()))
        .collect();
    assert_eq!(w.len(), 2);
    let tol = 1e-5;
    let two_pi = 2.0 * std::f64::consts::PI;
    assert!((w[0].0 - (two_pi - w[1].1)).abs() < tol);
    assert!((w[0].1 - (two_pi - w[1].0)).abs() < tol);
}

#[test]
fn certify_verdicts_and_exit_codes() {
    let v = json(&chtg(&["certify", "--m", "3", "--alpha", "3.14159"]));
    assert_eq!(v["verdict"], "NotApplicable");
    let v = json(&chtg(&["certify", "--m", "2", "--alpha", "1.0"]));
    assert_eq!(v["verdict"], "NotApplicable");

    let w = json(&chtg(&["windows", "--m", "10"]));
    let mid = 0.5 * (w[0][0].as_f64().unwrap() + w[0][1].as_f64().unwrap());
    let mid = format!("{mid}");
    let args = ["certify", "--m", "10", "--alpha", &mid, "--n-max", "24"];
    let first = chtg(&args);
    let v = json(&first);
    assert_eq!(v["verdict"], "NonDiscreteOrNonFaithful");
    assert_eq!(v["class"], "RegularElliptic");
    assert_eq!(v["search"]["survivors"], Value::Array(vec![]));
    let keys: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
    for k in ["params", "tau", "class", "verdict", "n_max", "checks", "search"] {
        assert!(keys.contains(&k), "missing {k}");
    }
    assert_eq!(first.stdout, chtg(&args).stdout);

    let o = chtg(&["certify", "--m", "10"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(!String::from_utf8_lossy(&o.stderr).contains("panicked"));
    let v = json(&chtg(&["certify", "--m", "3", "--alpha-turns", "1/2"]));
    assert_eq!(v["verdict"], "NotApplicable");
}

#[test]
fn search_reports() {
    let v = json(&chtg(&["search", "--m", "3", "--n-max", "12"]));
    assert_eq!(v["survivors"], Value::Array(vec![]));
    let total: u64 = v["rejections"].as_object().unwrap().values().map(|x| x.as_u64().unwrap()).sum();
    assert_eq!(total + v["accepted"].as_u64().unwrap(), v["candidates_examined"].as_u64().unwrap());

    let v = json(&chtg(&["search", "--m", "4", "--n-max", "1"]));
    assert_eq!(v["candidates_examined"], 1);
    assert_eq!(v["rejections"]["not_regular_elliptic"], 1);
    assert_eq!(v["survivors"], Value::Array(vec![]));
}

#[test]
fn number_theory() {
    let o = chtg(&["nt", "phi", "12"]);
    assert_eq!((o.status.code(), stdout(&o).trim()), (Some(0), "4"));
    let o = chtg(&["nt", "moebius", "12"]);
    assert_eq!(stdout(&o).trim(), "0");
    let o = chtg(&["nt", "cyclopoly", "4"]);
    assert_eq!(stdout(&o).trim(), "x^2 + 1");
    let o = chtg(&["nt", "phi", "twelve"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn usage_errors() {
    for args in [
        &["scan", "--m", "1"][..],
        &["search", "--m", "3", "--n-max", "0"],
        &["search", "--m", "3", "--precision-bits", "20"],
        &["search", "--m", "3", "--precision-bits", "5000"],
        &["frobnicate"],
    ] {
        let o = chtg(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(!String::from_utf8_lossy(&o.stderr).contains("panicked"));
    }
    let o = Command::new(env!("CARGO_BIN_EXE_chtg"))
        .args(["search", "--m", "3", "--n-max", "4"])
        .env("CHTG_PRECISION_BITS", "7")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn out_file() {
    let dir = std::env::temp_dir().join(format!("chtg-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("search.json");
    let o = chtg(&["search", "--m", "3", "--n-max", "6", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let written = std::fs::read(&path).unwrap();
    assert_eq!(written, chtg(&["search", "--m", "3", "--n-max", "6"]).stdout);
    let bad = dir.join("missing").join("x.json");
    let o = chtg(&["nt", "phi", "3", "--out", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    std::fs::remove_dir_all(&dir).unwrap();
}
