use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_freebessel"))
        .args(args)
        .env("FREEBESSEL_THREADS", "2")
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = run(args);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("stdout is one JSON document")
}

fn without_wall_time(mut v: Value) -> Value {
    v.as_object_mut().unwrap().remove("wall_time");
    v
}

#[test]
fn moments_from_all_routes() {
    let v = json(&["moments", "--s", "2", "--t", "1", "--k", "4"]);
    assert_eq!(v["command"], "moments");
    assert_eq!(v["version"], env!("CARGO_PKG_VERSION"));
    let got: Vec<&str> = v["results"]["moments"]
        .as_array()
        .unwrap()
        .iter()
        .map(|m| m["closed_form"].as_str().unwrap())
        .collect();
    assert_eq!(got, ["1/1", "3/1", "12/1", "55/1"]);
    for m in v["results"]["moments"].as_array().unwrap() {
        assert_eq!(m["series"], m["closed_form"]);
        assert_eq!(m["partitions"], m["closed_form"]);
    }
    assert_eq!(v["results"]["all_routes_agree"], true);
}

#[test]
fn fractional_s_is_exact() {
    let v = json(&["moments", "--s", "0.5", "--t", "1", "--k", "2"]);
    assert_eq!(v["results"]["moments"][1]["closed_form"], "3/2");
    assert_eq!(v["results"]["moments"][1]["partitions"], Value::Null);
}

#[test]
fn critical_rectangle_needs_force() {
    let out = run(&["moments", "--s", "0.5", "--t", "2", "--k", "4"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(out.stdout.is_empty());
    let v = json(&["moments", "--s", "0.5", "--t", "2", "--k", "4", "--force"]);
    assert_eq!(v["results"]["in_defined_region"], false);
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(run(&["moments", "--s", "abc", "--t", "1"]).status.code(), Some(1));
    assert_eq!(run(&["nonsense"]).status.code(), Some(1));
    assert_eq!(run(&["glm", "--K", "3", "--format", "csv"]).status.code(), Some(1));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
    assert_eq!(run(&["--version"]).status.code(), Some(0));
}

#[test]
fn density_reports_the_atom() {
    let v = json(&["density", "--s", "2", "--t", "0.5", "--grid-points", "50"]);
    let atoms = v["results"]["atoms"].as_array().unwrap();
    assert_eq!(atoms.len(), 1);
    assert!((atoms[0]["mass"].as_f64().unwrap() - 0.5).abs() < 1e-12);
    assert_eq!(v["results"]["grid"].as_array().unwrap().len(), 50);
}

#[test]
fn density_csv() {
    let out = run(&["density", "--s", "1", "--t", "1", "--grid-points", "20", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("x,density"));
    assert_eq!(lines.count(), 20);
}

#[test]
fn glm_constant_term() {
    let v = json(&["glm", "--K", "4", "--s", "2"]);
    assert_eq!(v["results"]["constant_term"], "3/1");
}

#[test]
fn probe_grid_csv() {
    let out = run(&["probe", "--s-grid", "0.1:1:10", "--t-grid", "1:8:15", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "s,t,pass,failed_matrix,failed_minor");
    assert_eq!(lines.len(), 1 + 150);
    // t = 1 is outside the critical rectangle for every s.
    assert!(lines[1].starts_with("1/10,1/1,true"));
    // s = 1 is on the boundary and always passes.
    assert!(lines[1..].iter().filter(|l| l.starts_with("1/1,")).all(|l| l.contains(",true,")));
}

#[test]
fn mc_is_reproducible() {
    let args = ["mc", "--model", "product", "--s", "2", "--k", "1", "2", "--dim", "12", "--trials", "20", "--seed", "9"];
    let a = without_wall_time(json(&args));
    let b = without_wall_time(json(&args));
    assert_eq!(a, b);
    let reports = a["results"]["reports"].as_array().unwrap();
    assert_eq!(reports.len(), 2);
    assert_eq!(reports[1]["limit"], 3.0);
}

#[test]
fn classical_fourier_matches() {
    let v = json(&["classical", "--s", "3", "--t", "1", "--z", "0.5,0.2"]);
    let f = &v["results"]["fourier"][0];
    for i in 0..2 {
        let d = f["truncated"][i].as_f64().unwrap() - f["exact"][i].as_f64().unwrap();
        assert!(d.abs() <= 1e-12);
    }
}

#[test]
fn weingarten_at_full_truncation() {
    let v = json(&["weingarten", "--s", "2", "--word", "UUŪŪ", "--n", "8", "--t", "1"]);
    assert!((v["results"]["result"]["value"].as_f64().unwrap() - 3.0).abs() < 1e-9);
}

#[test]
fn out_file_keeps_stdout_clean() {
    let path = std::env::temp_dir().join(format!("freebessel-cli-{}.json", std::process::id()));
    let out = run(&["partitions", "--s", "2", "--k", "3", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["results"]["count"], 12);
    let _ = std::fs::remove_file(path);
}
