use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use facloc::instances::{FamilyKind, RandomFamily};
use facloc_cli::file::InstanceFile;
use proptest::prelude::*;
use serde_json::Value;
use tempfile::TempDir;

fn facloc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_facloc"))
        .args(args)
        .env_remove("FLG_GUARD")
        .output()
        .expect("binary runs")
}

fn ok_json(args: &[&str]) -> Value {
    let out = facloc(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let path = dir.path().join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn construction(dir: &TempDir, name: &str, extra: &[&str]) -> PathBuf {
    let mut args = vec!["instance", "--construction", name];
    args.extend_from_slice(extra);
    let out = facloc(&args);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    write(dir, &format!("{name}.json"), std::str::from_utf8(&out.stdout).unwrap())
}

fn s(path: &Path) -> &str {
    path.to_str().unwrap()
}

#[test]
fn solve_reports_exact_optimum() {
    let dir = TempDir::new().unwrap();
    let e1 = construction(&dir, "example-1", &["--epsilon", "1/100"]);
    let v = ok_json(&["solve", s(&e1), "--objective", "sc"]);
    assert_eq!(v["optimal_value"]["exact"], "1/3");
    assert_eq!(v["optimal_outcomes"][0]["candidates"], serde_json::json!([2, 3]));

    let lb = construction(&dir, "two-lb-I'", &[]);
    let v = ok_json(&["solve", s(&lb), "--objective", "mc"]);
    assert_eq!(v["optimal_value"]["exact"], "11/10");
}

#[test]
fn solve_single_agent_on_candidate_is_zero() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "one.json", r#"{"space":"line","agents":["2"],"candidates":["0","2"],"k":1}"#);
    for objective in ["sc", "mc"] {
        let v = ok_json(&["solve", s(&f), "--objective", objective]);
        assert_eq!(v["optimal_value"]["exact"], "0");
    }
    let v = ok_json(&["run", s(&f), "--mechanism", "leftmost"]);
    assert_eq!(v["ratio_mc"]["exact"], "1");
}

#[test]
fn run_reports_costs_and_ratios() {
    let dir = TempDir::new().unwrap();
    let e1 = construction(&dir, "example-1", &["--epsilon", "1/100"]);
    let v = ok_json(&["run", s(&e1), "--mechanism", "two-extremes"]);
    assert_eq!(v["cost_sc"]["exact"], "491/300");
    assert_eq!(v["ratio_sc"]["exact"], "491/100");
    assert_eq!(v["ratio_sc"]["decimal"], "4.91");

    let remark = construction(&dir, "wpv-remark", &["--epsilon", "1/100"]);
    let v = ok_json(&["run", s(&remark), "--mechanism", "leftmost"]);
    assert_eq!(v["ratio_mc"]["exact"], "299/100");
}

#[test]
fn random_dictatorship_outcome_is_a_distribution() {
    let dir = TempDir::new().unwrap();
    let lb = construction(&dir, "single-lb-I", &[]);
    let v = ok_json(&["run", s(&lb), "--mechanism", "rd"]);
    assert_eq!(v["outcome"]["kind"], "randomized");
    let support = v["outcome"]["support"].as_array().unwrap();
    let total: facloc::Scalar = support
        .iter()
        .map(|e| facloc::scalar::parse_scalar(e["probability"]["exact"].as_str().unwrap()).unwrap())
        .sum();
    assert_eq!(total, facloc::scalar::int(1));
}

#[test]
fn verify_finds_nothing_for_two_extremes_on_constructions() {
    let dir = TempDir::new().unwrap();
    for name in ["two-lb-I", "two-lb-I'", "example-1"] {
        let f = construction(&dir, name, &[]);
        let v = ok_json(&["verify", s(&f), "--mechanism", "two-extremes", "--group-max", "2", "--grid", "9"]);
        assert_eq!(v["result"], "none", "{name}");
        assert_eq!(v["searched"]["max_coalition"], 2);
    }
}

#[test]
fn verify_catches_the_mean_rule() {
    let dir = TempDir::new().unwrap();
    let f = construction(&dir, "single-lb-I", &[]);
    let v = ok_json(&["verify", s(&f), "--mechanism", "mean"]);
    assert_eq!(v["result"], "witness");
    assert_eq!(v["coalition"], serde_json::json!([2]));
    assert_eq!(v["costs"][0]["truthful"]["exact"], "11/10");
    assert_eq!(v["costs"][0]["deviated"]["exact"], "9/10");
}

#[test]
fn group_max_one_is_the_unilateral_search() {
    let dir = TempDir::new().unwrap();
    let f = construction(&dir, "single-lb-I", &[]);
    let default = facloc(&["verify", s(&f), "--mechanism", "mean"]);
    let explicit = facloc(&["verify", s(&f), "--mechanism", "mean", "--group-max", "1"]);
    assert_eq!(default.stdout, explicit.stdout);
}

#[test]
fn empty_sweep_has_header_and_na_footer() {
    let out = facloc(&["sweep", "--mechanism", "leftmost", "--count", "0"]);
    assert!(out.status.success());
    assert_eq!(
        String::from_utf8(out.stdout).unwrap(),
        "index,n,m,k,mech_cost,opt_cost,ratio\nmax,,,,,,n/a\n"
    );
}

#[test]
fn sweep_writes_csv_and_prints_summary() {
    let dir = TempDir::new().unwrap();
    let csv = dir.path().join("sweep.csv");
    let v = ok_json(&["sweep", "--mechanism", "leftmost", "--count", "20", "--seed", "3", "--out", s(&csv)]);
    assert_eq!(v["count"], 20);
    let text = std::fs::read_to_string(&csv).unwrap();
    assert_eq!(text.lines().count(), 22);
    assert!(text.starts_with("index,n,m,k,"));
}

#[test]
fn exit_codes_distinguish_failures() {
    let dir = TempDir::new().unwrap();
    let garbage = write(&dir, "bad.json", "{ not json");
    assert_eq!(facloc(&["solve", s(&garbage)]).status.code(), Some(2));
    let lb = construction(&dir, "single-lb-I", &[]);
    assert_eq!(facloc(&["run", s(&lb), "--mechanism", "nope"]).status.code(), Some(2));
    // two facilities requested from a one-facility instance
    assert_eq!(facloc(&["run", s(&lb), "--mechanism", "two-extremes"]).status.code(), Some(4));
    assert_eq!(facloc(&["solve", "/nonexistent/file.json"]).status.code(), Some(1));

    let metric = write(
        &dir,
        "metric.json",
        r#"{"space":"metric","points":3,"matrix":[["0","5","4"],["5","0","6"],["4","6","0"]],"agents":[1],"candidates":[2,3],"k":1}"#,
    );
    assert_eq!(facloc(&["run", s(&metric), "--mechanism", "median"]).status.code(), Some(4));

    let guarded = Command::new(env!("CARGO_BIN_EXE_facloc"))
        .args(["solve", s(&lb)])
        .env("FLG_GUARD", "1")
        .output()
        .unwrap();
    assert_eq!(guarded.status.code(), Some(3));
}

#[test]
fn metric_dictatorship_uses_one_based_ids() {
    let dir = TempDir::new().unwrap();
    let f = write(
        &dir,
        "metric.json",
        r#"{"space":"metric","points":3,"matrix":[["0","5","4"],["5","0","6"],["4","6","0"]],"agents":[1],"candidates":[2,3],"k":1}"#,
    );
    let v = ok_json(&["run", s(&f), "--mechanism", "dictator:1"]);
    assert_eq!(v["outcome"]["candidates"], serde_json::json!([2]));
    assert_eq!(v["outcome"]["locations"], serde_json::json!(["#3"]));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn instance_files_round_trip(seed in any::<u64>(), n in 1usize..6, m in 1usize..5, k in 1usize..3, metric in any::<bool>()) {
        let family = if metric {
            RandomFamily::metric(n, m, k, seed)
        } else {
            RandomFamily::line(n, m, k, seed).with_kind(FamilyKind::LineUniform { lo: -5, hi: 5 })
        };
        let inst = family.instance(0).unwrap();
        let file = InstanceFile::from_instance(&inst);
        let reread = InstanceFile::parse(&file.to_json()).unwrap();
        prop_assert_eq!(&reread, &file);
        prop_assert_eq!(reread.to_instance().unwrap(), inst);
    }
}
