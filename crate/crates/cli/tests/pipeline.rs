//! End-to-end runs of the `quietlight` binary.

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn quietlight(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_quietlight")).args(args).output().unwrap()
}

fn write_scenario(dir: &Path, runs: usize) -> String {
    let path = dir.join("cavity.json");
    let text = format!(
        r#"{{"model": "cavity", "params": {{"n_atoms": 20, "duration": 10, "sample_interval": 0.1}},
            "output": "sim", "seed": 5, "runs": {runs}}}"#
    );
    fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_owned()
}

fn read_dir_sorted(dir: &Path) -> Vec<(String, Vec<u8>)> {
    let mut files: Vec<(String, Vec<u8>)> = fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.is_file())
        .map(|p| (p.file_name().unwrap().to_string_lossy().into_owned(), fs::read(&p).unwrap()))
        .collect();
    files.sort();
    files
}

#[test]
fn simulate_analyze_compare_is_reproducible() {
    let tmp = tempfile::tempdir().unwrap();
    let scenario = write_scenario(tmp.path(), 3);
    let mut outputs = Vec::new();
    for name in ["a", "b"] {
        let sim = tmp.path().join(name);
        let o = quietlight(&["simulate", &scenario, "--out", sim.to_str().unwrap()]);
        assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
        let pattern = format!("{}/run_*.events", sim.display());
        let ana = sim.join("analysis");
        let o = quietlight(&["analyze", &pattern, "--spectrum", "--gtau", "--count-var", "--out", ana.to_str().unwrap()]);
        assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
        outputs.push((read_dir_sorted(&sim), read_dir_sorted(&ana)));
    }
    // the manifest records the output directory, so compare everything else
    let strip = |v: &[(String, Vec<u8>)]| v.iter().filter(|f| f.0 != "manifest.json").cloned().collect::<Vec<_>>();
    assert_eq!(strip(&outputs[0].0), strip(&outputs[1].0));
    assert_eq!(outputs[0].1, outputs[1].1);
    let names: Vec<&str> = outputs[0].0.iter().map(|f| f.0.as_str()).collect();
    assert_eq!(names, ["m_samples.csv", "manifest.json", "run_0.events", "run_1.events", "run_2.events", "tallies.csv"]);
    for f in &outputs[0].1 {
        assert!(f.1.starts_with(b"# "), "{} lacks a units header", f.0);
    }
}

#[test]
fn manifest_repeats_the_run() {
    let tmp = tempfile::tempdir().unwrap();
    let scenario = write_scenario(tmp.path(), 2);
    let first = tmp.path().join("first");
    assert!(quietlight(&["simulate", &scenario, "--seed", "9", "--out", first.to_str().unwrap()]).status.success());
    let manifest: serde_json::Value = serde_json::from_slice(&fs::read(first.join("manifest.json")).unwrap()).unwrap();
    assert_eq!(manifest["scenario"]["seed"], 9);
    assert_eq!(manifest["units"]["time"], "1/g");
    let again = tmp.path().join("again.json");
    fs::write(&again, manifest["scenario"].to_string()).unwrap();
    let second = tmp.path().join("second");
    assert!(quietlight(&["simulate", again.to_str().unwrap(), "--out", second.to_str().unwrap()]).status.success());
    for f in ["run_0.events", "run_1.events", "tallies.csv"] {
        assert_eq!(fs::read(first.join(f)).unwrap(), fs::read(second.join(f)).unwrap(), "{f}");
    }
}

#[test]
fn compare_exit_codes() {
    let tmp = tempfile::tempdir().unwrap();
    let mc = tmp.path().join("mc.csv");
    fs::write(&mc, "# S/D - 1\nomega,value,stderr\n0.5,-0.8,0.1\n1.0,-0.5,0.1\n1.5,-0.31,0.1\n").unwrap();
    let good = tmp.path().join("good.csv");
    fs::write(&good, "# S/D - 1\nomega,value\n0.0,-1.0\n1.0,-0.5\n2.0,-0.3\n").unwrap();
    let bad = tmp.path().join("bad.csv");
    fs::write(&bad, "# S/D - 1\nomega,value\n0.0,1.0\n2.0,1.0\n").unwrap();
    let m = mc.to_str().unwrap();
    assert_eq!(quietlight(&["compare", m, good.to_str().unwrap(), "--band", "0:2"]).status.code(), Some(0));
    let o = quietlight(&["compare", m, bad.to_str().unwrap(), "--band", "0:2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).starts_with("FAIL"));
    assert_eq!(quietlight(&["compare", m, "missing.csv"]).status.code(), Some(1));
}

#[test]
fn errors_name_the_field() {
    let tmp = tempfile::tempdir().unwrap();
    let path = tmp.path().join("bad.json");
    fs::write(&path, r#"{"model": "diode", "params": {"q": 1.5}}"#).unwrap();
    let o = quietlight(&["simulate", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("params.q"));
    let o = quietlight(&["analytic", "nosuch"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("darkroom"));
}

#[test]
fn analytic_and_linewidth_emit_data() {
    let o = quietlight(&["analytic", "diode", "--tau_p", "2", "--points", "5"]);
    assert!(o.status.success());
    let text = String::from_utf8(o.stdout).unwrap();
    assert!(text.starts_with('#'));
    assert_eq!(text.lines().count(), 2 + 5);
    let o = quietlight(&["linewidth", "series-rlc", "--r_a", "0.3", "--l", "1", "--c", "1"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let rec: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(rec["model"], "series-rlc");
    assert!(rec["product_checks"].as_array().unwrap().iter().all(|c| c["rel_err"].as_f64().unwrap() < 1e-6));
}
