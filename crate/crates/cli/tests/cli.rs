use std::path::Path;
use std::process::{Command, Output};

use qtrace::diffop::LxSeries;
use qtrace::macdonald::appendix;
use serde_json::Value;

fn qtrace(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qtrace")).args(args).env_remove("QTRACE_CACHE_DIR").output().expect("binary runs")
}

fn qtrace_cached(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qtrace")).args(args).env("QTRACE_CACHE_DIR", dir).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8")
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("stdout is JSON")
}

fn golden(name: &str) -> String {
    std::fs::read_to_string(Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name)).expect("golden file")
}

/// `terms` of a Ψ artifact as (μ, canonical text) pairs.
fn artifact_terms(v: &Value) -> Vec<(Vec<i64>, String)> {
    v["terms"]
        .as_array()
        .unwrap()
        .iter()
        .map(|t| {
            let mu = t["mu"].as_array().unwrap().iter().map(|x| x.as_i64().unwrap()).collect();
            (mu, t["B"][0][0].as_str().unwrap().to_string())
        })
        .collect()
}

fn series_terms(s: &LxSeries) -> Vec<(Vec<i64>, String)> {
    s.terms.iter().map(|(mu, m)| (mu.clone(), m[(0, 0)].canonical_text())).collect()
}

#[test]
fn psi_k1_matches_golden_and_closed_form() {
    let o = qtrace(&["--format", "json", "psi", "--system", "A1", "--theta", "2", "--depth", "8"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert_eq!(text, golden("psi_a1_theta2_d8.json"));
    let v: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(artifact_terms(&v), series_terms(&appendix::big_psi1(8).unwrap()));
}

#[test]
fn psi_k0_matches_golden_and_geometric_series() {
    let o = qtrace(&["--format", "json", "psi", "--system", "A1", "--theta", "0", "--depth", "10"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), golden("psi_a1_theta0_d10.json"));
    assert_eq!(artifact_terms(&json(&o)), series_terms(&appendix::big_psi0(10).unwrap()));
}

#[test]
fn build_op_c0_is_the_closed_form_m0() {
    let o = qtrace(&["--format", "json", "build-op", "--system", "A1", "--theta", "2", "--eigen", "c0", "--depth", "8"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(stdout(&o), golden("build_op_a1_c0_d8.json"));
    let v = json(&o);
    assert_eq!(v["gauge"], "normalized");
    let closed = appendix::m0().unwrap().to_series(8).unwrap().to_json();
    assert_eq!(v["operator"]["terms"], closed["terms"]);
}

#[test]
fn build_op_tie_breaking_does_not_change_the_operator() {
    let run = |tie: &str| json(&qtrace(&["--format", "json", "build-op", "--system", "A2", "--theta", "1,1", "--eigen", "c1", "--depth", "4", "--tie", tie]));
    assert_eq!(run("lex-largest")["operator"], run("lex-smallest")["operator"]);
}

#[test]
fn text_output_is_the_default() {
    let o = qtrace(&["commute", "--system", "A1", "--theta", "2", "--eigen", "c1", "--eigen", "c0", "--depth", "6"]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("[D_c1, D_c0] = 0"));
}

#[test]
fn output_flag_writes_identical_artifacts() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for p in [&a, &b] {
        let o = qtrace(&["--output", p.to_str().unwrap(), "mac-op", "--n", "3", "--k", "1", "--l", "2", "--verify-depth", "3"]);
        assert!(o.status.success());
    }
    let (x, y) = (std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    assert_eq!(x, y);
    let v: Value = serde_json::from_slice(&x).unwrap();
    assert_eq!(v["eigen_equation_holds"], true);
}

#[test]
fn usage_errors_exit_with_2() {
    assert_eq!(qtrace(&["psi", "--system", "Q7", "--theta", "1"]).status.code(), Some(2));
    assert_eq!(qtrace(&["psi", "--system", "A1"]).status.code(), Some(2));
    assert_eq!(qtrace(&["psi", "--system", "A1", "--theta", "2", "--depth", "0"]).status.code(), Some(2));
    assert_eq!(qtrace(&["psi", "--cartan", "[[2,-3],[-3,2]]", "--theta", "1,1"]).status.code(), Some(2));
    assert_eq!(qtrace(&["build-op", "--system", "A1", "--theta", "2", "--eigen", "c7"]).status.code(), Some(2));
    assert_eq!(qtrace(&["verify-all", "--profile", "lunch"]).status.code(), Some(2));
}

#[test]
fn json_errors_carry_the_exit_code() {
    let o = qtrace(&["--format", "json", "psi", "--system", "A1", "--theta", "1"]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(json(&o)["error"]["exit_code"], 2);
}

#[test]
fn depth_shortfall_exits_with_3() {
    let o = qtrace(&["duality", "--n", "2", "--k", "1", "--depth", "1"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn failed_criterion_exits_with_4_and_names_the_invariant() {
    let o = qtrace(&["--format", "json", "verify-all", "--profile", "quick", "--only", "10"]);
    assert_eq!(o.status.code(), Some(4));
    assert!(String::from_utf8_lossy(&o.stderr).contains("[acceptance]"));
    let v = json(&o);
    assert_eq!(v["failed"], 1);
    assert_eq!(v["criteria"][0]["name"], "classical-limit");
}

#[test]
fn verify_all_quick_subset_passes() {
    let o = qtrace(&["verify-all", "--profile", "quick", "--only", "1,2,3"]);
    assert!(o.status.success(), "{}", stdout(&o));
    let out = stdout(&o);
    assert_eq!(out.lines().filter(|l| l.starts_with("[PASS]")).count(), 3);
    assert!(out.ends_with("acceptance: 3 passed, 0 failed\n"));
}

#[test]
fn psi_cache_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["--format", "json", "psi", "--system", "A2", "--theta", "1,1", "--depth", "3"];
    let first = qtrace_cached(&args, dir.path());
    assert!(first.status.success());
    let files: Vec<_> = std::fs::read_dir(dir.path()).unwrap().map(|e| e.unwrap().path()).collect();
    assert_eq!(files.len(), 1);
    assert!(files[0].file_name().unwrap().to_str().unwrap().contains(env!("CARGO_PKG_VERSION")));
    let second = qtrace_cached(&args, dir.path());
    assert_eq!(first.stdout, second.stdout);
    assert_eq!(first.stdout, qtrace(&args).stdout);

    std::fs::write(&files[0], "not json").unwrap();
    let third = qtrace_cached(&args, dir.path());
    assert_eq!(first.stdout, third.stdout);
}

#[test]
fn cached_psi_serves_operator_reconstruction() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["--format", "json", "build-op", "--system", "A1", "--theta", "2", "--eigen", "c1", "--depth", "6"];
    let cold = qtrace_cached(&args, dir.path());
    let warm = qtrace_cached(&args, dir.path());
    assert!(cold.status.success());
    assert_eq!(cold.stdout, warm.stdout);
    let closed = appendix::m1(1).unwrap().to_series(6).unwrap().to_json();
    assert_eq!(json(&warm)["operator"]["terms"], closed["terms"]);
}
