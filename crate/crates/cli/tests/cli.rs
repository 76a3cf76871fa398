use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_achlioptas"))
        .args(args)
        .env_remove("ACHLIOPTAS_THREADS")
        .output()
        .expect("spawn achlioptas")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn body(path: &Path) -> String {
    fs::read_to_string(path)
        .unwrap()
        .lines()
        .filter(|l| !l.starts_with('#'))
        .map(|l| format!("{l}\n"))
        .collect()
}

fn json(path: &Path) -> Value {
    serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn threshold_values() {
    for (k, l, want) in [
        ("3", "5", "5.06508"),
        ("2", "2", "1.05505"),
        ("2", "1", "1.00000"),
    ] {
        let o = run(&["threshold", "--k", k, "--l", l]);
        assert!(o.status.success());
        assert!(stdout(&o).contains(want), "{k},{l}: {}", stdout(&o));
    }
    let o = run(&["threshold", "--k", "3", "--l", "5"]);
    assert!(stdout(&o).contains("upper bound 4.508 (above)"));
}

#[test]
fn threshold_csv_has_provenance() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("t.csv");
    let o = run(&[
        "threshold",
        "--k",
        "2,3",
        "--l",
        "1,2",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    let text = fs::read_to_string(&out).unwrap();
    let config_line = text.lines().find(|l| l.starts_with("# config: ")).unwrap();
    let prov: Value = serde_json::from_str(&config_line["# config: ".len()..]).unwrap();
    assert_eq!(prov["command"], "threshold");
    assert_eq!(prov["config"]["k"], serde_json::json!([2, 3]));
    assert!(prov["build"].is_string());
    let b = body(&out);
    assert!(b.starts_with("k,l,p0,p1,p2,r_kl,upper_bound_2k_ln2,margin\n"));
    assert_eq!(b.lines().count(), 5);
}

#[test]
fn simulate_reruns_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let args = |out: &str, threads: &str| {
        run(&[
            "simulate",
            "--k",
            "3",
            "--l",
            "2",
            "--n",
            "40",
            "--ratios",
            "3.5,4.5,5.5",
            "--trials",
            "30",
            "--seed",
            "11",
            "--no-timing",
            "--threads",
            threads,
            "--out",
            out,
        ])
    };
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    assert!(args(a.to_str().unwrap(), "1").status.success());
    assert!(args(b.to_str().unwrap(), "2").status.success());
    assert_eq!(body(&a), body(&b));
    let lines = body(&a).lines().count();
    assert_eq!(lines, 1 + 30 * 3);
}

#[test]
fn simulate_empty_ratios_gives_header_only() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("e.csv");
    let summary = dir.path().join("e.json");
    let o = run(&[
        "simulate",
        "--ratios",
        "",
        "--trials",
        "5",
        "--out",
        out.to_str().unwrap(),
        "--summary",
        summary.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(body(&out), "rule,k,l,n,ratio,seed,verdict,millis\n");
    assert_eq!(json(&summary)["summary"], serde_json::json!([]));
}

#[test]
fn simulate_two_sat_summary() {
    let dir = tempfile::tempdir().unwrap();
    let summary = dir.path().join("s.json");
    let o = run(&[
        "simulate",
        "--rule",
        "majority-positive",
        "--k",
        "2",
        "--l",
        "2",
        "--n",
        "2000",
        "--ratios",
        "0.5",
        "--trials",
        "20",
        "--summary",
        summary.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    let s = json(&summary);
    assert_eq!(s["config"]["decider"], "two-sat");
    assert_eq!(s["summary"][0]["trials"], 20);
    assert!(s["summary"][0]["fraction"].as_f64().unwrap() > 0.9);
}

#[test]
fn verify_passes_with_four_items() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("v.json");
    let o = run(&["verify", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).matches("[PASS]").count(), 8);
    let v = json(&out);
    assert_eq!(v["passed"], true);
    assert_eq!(v["items"].as_array().unwrap().len(), 4);
}

#[test]
fn bounds_single_step_and_overflow() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("b.json");
    let o = run(&[
        "bounds",
        "--k",
        "2",
        "--l",
        "2",
        "--r",
        "1.0",
        "--n",
        "1000",
        "-L",
        "1",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    let v = json(&out);
    // L = 1: 2 n sqrt(p2/p0) with p0 = 3/16, p2 = 7/16
    let want = 2000.0 * (7.0f64 / 3.0).sqrt();
    let got = v["paths"]["value"].as_f64().unwrap();
    assert!((got - want).abs() < 1e-9 * want);

    let o = run(&[
        "bounds",
        "--r",
        "50",
        "--n",
        "1e6",
        "-L",
        "5000",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    let v = json(&out);
    assert!(v["paths"]["value"].is_null());
    assert!(v["paths"]["log"].as_f64().unwrap().is_finite());
}

#[test]
fn bounds_default_below_threshold_is_small() {
    let o = run(&["bounds"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("L = 553"), "{text}");
    assert!(text.contains("e-1 (ln"), "{text}");
}

#[test]
fn gap_reports_worst_case_and_exclusions() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("g.csv");
    let summary = dir.path().join("g.json");
    let export = dir.path().join("inst");
    let o = run(&[
        "gap",
        "--n",
        "30",
        "--trials",
        "4",
        "--rules",
        "always-first,random-coin",
        "--decider",
        "constant-yes",
        "--out",
        out.to_str().unwrap(),
        "--summary",
        summary.to_str().unwrap(),
        "--export-dir",
        export.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let b = body(&out);
    assert!(
        b.starts_with("rule,decider,n,c1,c2,trials,errors,excluded,error_rate,ci_low,ci_high\n")
    );
    assert_eq!(b.lines().count(), 3);
    let s = json(&summary);
    assert!(s["worst"].is_object());
    assert_eq!(s["excluded"], 0);
    assert_eq!(s["instances"].as_array().unwrap().len(), 8);
    let unsat_low = s["instances"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|i| i["truth"]["sat_low"] == false)
        .count();
    let errors: u64 = s["per_rule"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["errors"].as_u64().unwrap())
        .sum();
    assert_eq!(errors as usize, unsat_low);
    let cnf = fs::read_to_string(export.join("always-first-0000-c1.cnf")).unwrap();
    assert!(cnf.contains("p cnf 30 120"));
    let log = fs::read_to_string(export.join("random-coin-0003-log.csv")).unwrap();
    assert_eq!(log.lines().count(), 150);
}

#[test]
fn gap_zero_budget_excludes() {
    let dir = tempfile::tempdir().unwrap();
    let summary = dir.path().join("g.json");
    let o = run(&[
        "gap",
        "--n",
        "60",
        "--trials",
        "2",
        "--rules",
        "always-first",
        "--budget",
        "0",
        "--summary",
        summary.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    let s = json(&summary);
    let excluded = s["excluded"].as_u64().unwrap();
    let decided = s["instances"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|i| !i["truth"].is_null())
        .count();
    assert_eq!(excluded as usize + decided, 2);
}

#[test]
fn reduce_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("in.cnf");
    let output = dir.path().join("out.cnf");
    fs::write(&input, "c test\np cnf 4 2\n1 2 -3 0\n-1 -2 4 0\n").unwrap();
    let o = run(&[
        "reduce",
        "--input",
        input.to_str().unwrap(),
        "--output",
        output.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let text = fs::read_to_string(&output).unwrap();
    let clauses: Vec<&str> = text
        .lines()
        .filter(|l| !l.starts_with('c') && !l.starts_with('p'))
        .collect();
    assert!(text.contains("p cnf 4 2"));
    assert_eq!(clauses, ["1 2 0", "4 -1 0"]);
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(run(&["simulate", "--rule", "nope"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(
        run(&["gap", "--c1", "5", "--c2", "4"]).status.code(),
        Some(2)
    );
    assert_eq!(
        run(&["gap", "--decider", "positive-bias:NaN"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        run(&["simulate", "--rule", "symmetric-all", "--l", "3"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(run(&["reduce"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "--threads", "0"]).status.code(), Some(2));
}

#[test]
fn config_file_with_flag_override() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("c.json");
    let summary = dir.path().join("s.json");
    fs::write(
        &cfg,
        r#"{"simulate": {"k": 2, "l": 2, "n": 500, "ratios": [0.3], "trials": 7, "seed": 3}}"#,
    )
    .unwrap();
    let o = run(&[
        "--config",
        cfg.to_str().unwrap(),
        "simulate",
        "--trials",
        "4",
        "--summary",
        summary.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let s = json(&summary);
    assert_eq!(s["config"]["trials"], 4);
    assert_eq!(s["config"]["n"], 500);
    assert_eq!(s["config"]["seed"], 3);

    fs::write(&cfg, r#"{"trials": "many"}"#).unwrap();
    let o = run(&["--config", cfg.to_str().unwrap(), "simulate"]);
    assert_eq!(o.status.code(), Some(2));
    fs::write(&cfg, r#"{"bogus_field": 1}"#).unwrap();
    assert_eq!(
        run(&["--config", cfg.to_str().unwrap(), "verify"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn threads_env_is_recorded() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("v.json");
    let o = Command::new(env!("CARGO_BIN_EXE_achlioptas"))
        .args(["verify", "--out", out.to_str().unwrap()])
        .env("ACHLIOPTAS_THREADS", "3")
        .output()
        .unwrap();
    assert!(o.status.success());
    assert_eq!(json(&out)["threads"], 3);
}
