use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rindler-twist"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_json(args: &[&str]) -> Value {
    let out = run(args);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn commutators_case_i_minkowski() {
    let v = stdout_json(&["commutators", "--case", "i", "--i", "1", "--k", "2", "--l", "3"]);
    let entries = v["entries"].as_array().unwrap();
    assert_eq!(entries.len(), 6);
    let e02 = entries.iter().find(|e| e["mu"] == 0 && e["nu"] == 2).unwrap();
    assert_eq!(e02["expr_text"], "i*inv_kappa*x1");
    let e23 = entries.iter().find(|e| e["mu"] == 2 && e["nu"] == 3).unwrap();
    assert_eq!(e23["expr_text"], "2*i*theta23");
}

#[test]
fn commutators_table_is_human_readable() {
    let out = run(&["commutators", "--case", "iii", "--format", "table"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 7);
    assert!(text.contains("[x₀, x₁]⋆"));
}

#[test]
fn spectrum_without_deformation_is_planckian() {
    let v = stdout_json(&[
        "spectrum",
        "--case",
        "iii",
        "--a",
        "6.283185307",
        "--theta01",
        "0",
        "--omega-min",
        "0.25",
        "--omega-max",
        "4",
        "--points",
        "6",
    ]);
    #[allow(clippy::approx_constant)]
    let t = 6.283185307 / (2.0 * std::f64::consts::PI);
    for p in v["points"].as_array().unwrap() {
        let w = p["omega"].as_f64().unwrap();
        let base = p["base"].as_f64().unwrap();
        let planck = (1.0 / t) / ((w / t).exp() - 1.0);
        assert!((base - planck).abs() <= 1e-12 * planck, "omega {w}: {base} vs {planck}");
        assert_eq!(p["corrected"].as_f64().unwrap(), base);
    }
}

#[test]
fn spectrum_writes_csv_file_and_plot() {
    let dir = tempfile::tempdir().unwrap();
    let csv_path = dir.path().join("s.csv");
    let svg_path = dir.path().join("s.svg");
    let out = run(&[
        "spectrum",
        "--case",
        "i",
        "--inv-kappa",
        "0.1",
        "--points",
        "4",
        "--format",
        "csv",
        "--output",
        csv_path.to_str().unwrap(),
        "--plot",
        svg_path.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(out.stdout.is_empty());
    let csv_text = std::fs::read_to_string(&csv_path).unwrap();
    assert_eq!(csv_text.lines().count(), 5);
    assert!(std::fs::read_to_string(&svg_path).unwrap().starts_with("<svg"));
}

#[test]
fn spectrum_rejects_nonpositive_grid() {
    let out = run(&["spectrum", "--case", "ii", "--omega-min", "-1"]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("strictly positive"));
}

#[test]
fn invalid_indices_fail_with_guidance() {
    let out = run(&["commutators", "--case", "ii", "--i", "2", "--k", "2", "--l", "3"]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("permutation of 1 2 3"));
    let out = run(&["commutators", "--case", "i", "--i", "4"]);
    assert!(!out.status.success());
}

#[test]
fn dump_twist_and_metric() {
    let v = stdout_json(&["dump-twist", "--case", "ii", "--chart", "rindler"]);
    assert!(v["log"]["terms"].as_u64().unwrap() > 0);
    assert_eq!(v["order"], 1);
    let m = stdout_json(&["metric"]);
    assert_eq!(m["metric"][1][1], "1");
    assert_eq!(m["g00_matches_alternative"], false);
}

#[test]
fn verify_passes_at_order_two() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let out = run(&["verify", "--order", "2", "--json", "--output", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["all_passed"], true);
    let checks = v["checks"].as_array().unwrap();
    let cocycles = checks.iter().filter(|c| c["name"] == "cocycle").count();
    assert_eq!(cocycles, 54);
    assert!(checks.iter().all(|c| c["status"] == "PASS"));
}
