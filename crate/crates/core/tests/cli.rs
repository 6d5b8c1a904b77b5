use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn fractalsep(args: &[&str], cache: Option<&Path>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_fractalsep"));
    cmd.args(args);
    match cache {
        Some(dir) => cmd.env("FRACTALSEP_CACHE_DIR", dir),
        None => cmd.env_remove("FRACTALSEP_CACHE_DIR"),
    };
    cmd.output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("{e}: {}{}", String::from_utf8_lossy(&out.stdout), String::from_utf8_lossy(&out.stderr))
    })
}

#[test]
fn generate_prints_sizes() {
    let out = fractalsep(&["generate", "--d", "2", "--b", "3", "--A", "1", "--m", "1", "--k", "2"], None);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["n"], 64);
    assert_eq!(v["matches_formula"], true);

    let out = fractalsep(&["generate", "--d", "2", "--b", "8", "--A", "1,3,6", "--m", "1", "--k", "2"], None);
    assert_eq!(json(&out)["n"], 3025);
}

#[test]
fn generate_writes_files_that_cut_reads() {
    let dir = tempfile::tempdir().unwrap();
    let prefix = dir.path().join("c1");
    let prefix = prefix.to_str().unwrap();
    let out = fractalsep(&["generate", "--k", "1", "--graph", "complete-lines", "--out", prefix], None);
    assert!(out.status.success());
    let header: Value = serde_json::from_str(&std::fs::read_to_string(format!("{prefix}.json")).unwrap()).unwrap();
    assert_eq!(header["n"], 8);
    assert_eq!(std::fs::read_to_string(format!("{prefix}.edges")).unwrap().lines().count(), 8);

    let out = fractalsep(&["cut", "--input", prefix, "--exact"], None);
    assert!(out.status.success());
    assert_eq!(json(&out)["cut_size"], 2);

    let zero = dir.path().join("zero");
    let zero = zero.to_str().unwrap();
    assert!(fractalsep(&["generate", "--k", "0", "--out", zero], None).status.success());
    let header: Value = serde_json::from_str(&std::fs::read_to_string(format!("{zero}.json")).unwrap()).unwrap();
    assert_eq!(header["vertices"], serde_json::json!([[0, 0]]));
}

#[test]
fn exact_cut_of_the_first_complete_lines_graph() {
    let out = fractalsep(&["cut", "--k", "1", "--graph", "complete-lines", "--epsilon", "0.5", "--exact"], None);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["cut_size"], 2);
    assert_eq!(v["proved_optimal"], true);
    assert_eq!(v["valid"], true);

    let out = fractalsep(&["cut", "--k", "2", "--format", "csv"], None);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("k,n,method"));
}

#[test]
fn paths_count_ordered_pairs() {
    let out = fractalsep(&["paths", "--k", "1"], None);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["pair_count"], 64);
    assert_eq!(v["n"], 8);
    assert_eq!(v["certified"], true);
}

#[test]
fn render_is_stable_and_highlights() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.svg");
    let b = dir.path().join("b.svg");
    for path in [&a, &b] {
        let out = fractalsep(
            &["render", "--k", "2", "--highlight-complete", "--out", path.to_str().unwrap()],
            None,
        );
        assert!(out.status.success());
    }
    let svg = std::fs::read_to_string(&a).unwrap();
    assert_eq!(svg, std::fs::read_to_string(&b).unwrap());
    assert_eq!(svg.matches("<rect class=\"cell").count(), 64);
    assert_eq!(svg.matches("class=\"cell complete\"").count(), 56);

    let out = fractalsep(&["render", "--k", "0"], None);
    assert_eq!(String::from_utf8(out.stdout).unwrap().matches("<rect class=\"cell").count(), 1);
    let out = fractalsep(&["render", "--d", "2", "--b", "5", "--A", "1,3", "--k", "2"], None);
    assert_eq!(String::from_utf8(out.stdout).unwrap().matches("<rect class=\"cell").count(), 441);
}

#[test]
fn exit_codes() {
    assert_eq!(fractalsep(&["generate", "--b", "3", "--A", "3"], None).status.code(), Some(2));
    assert_eq!(fractalsep(&["generate", "--unknown"], None).status.code(), Some(2));
    assert_eq!(fractalsep(&["render", "--d", "3", "--A", "1"], None).status.code(), Some(2));
    assert_eq!(
        fractalsep(&["generate", "--k", "8", "--max-vertices", "1000"], None).status.code(),
        Some(3)
    );
    let out = fractalsep(&["generate", "--k", "8", "--max-vertices", "1000"], None);
    assert!(String::from_utf8_lossy(&out.stderr).contains("16777216"));
    assert_eq!(fractalsep(&["experiment", "--suite", "nope"], None).status.code(), Some(2));
    assert_eq!(fractalsep(&["cut", "--epsilon", "0.25"], None).status.code(), Some(2));
}

#[test]
fn experiment_reports_are_deterministic() {
    let cache = tempfile::tempdir().unwrap();
    let args = ["experiment", "--suite", "carpet-sandwich", "--k", "4"];
    let first = fractalsep(&args, Some(cache.path()));
    assert!(first.status.success(), "{}", String::from_utf8_lossy(&first.stderr));
    assert!(std::fs::read_dir(cache.path()).unwrap().count() >= 4);
    let second = fractalsep(&args, Some(cache.path()));
    let digest = |o: &Output| {
        String::from_utf8_lossy(&o.stderr)
            .lines()
            .find_map(|l| l.strip_prefix("digest ").map(str::to_owned))
            .unwrap()
    };
    assert_eq!(digest(&first), digest(&second));

    let v = json(&first);
    assert_eq!(v["rows"].as_array().unwrap().len(), 4);
    assert_eq!(v["rows"][0]["exact_or_incumbent"], 2);
    let fit = v["fits"].as_array().unwrap().iter().find(|f| f["column"] == "constructive").unwrap();
    assert!(fit["fit"]["slope"].as_f64().unwrap() > 0.0);

    let out = fractalsep(&["experiment", "--suite", "counts", "--format", "csv"], None);
    assert!(out.status.success());
    assert!(String::from_utf8(out.stdout).unwrap().starts_with("k,quantity,axis"));
}

#[test]
fn counts_report_matches_golden() {
    let out = fractalsep(&["experiment", "--suite", "counts", "--k", "3"], None);
    assert!(out.status.success());
    let golden = include_str!("golden/counts_carpet_k3.json");
    assert_eq!(String::from_utf8(out.stdout).unwrap().trim_end(), golden.trim_end());
}
