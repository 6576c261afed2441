//! End-to-end runs of the `fuzzyq` binary against fixture data.
//!
//! Golden files live in `tests/golden`; set `FUZZYQ_BLESS=1` to rewrite them
//! after an intended output change.

mod common;

use std::path::Path;

use common::*;

#[test]
fn golden_outputs_are_stable() {
    let bless = std::env::var_os("FUZZYQ_BLESS").is_some();
    for (name, args) in golden_cases() {
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let first = run_with_threads(&args, "1");
        assert_eq!(first.status.code(), Some(0), "{name}: {}", stderr(&first));
        let second = run_with_threads(&args, "4");
        assert_eq!(first.stdout, second.stdout, "{name}: output depends on the run or worker count");
        let path = golden_path(name);
        if bless {
            std::fs::write(&path, &first.stdout).unwrap();
            continue;
        }
        let expected = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{name}: {e}"));
        assert_eq!(stdout(&first), expected, "{name} differs from its golden file");
    }
}

#[test]
fn april_summary_statements() {
    let out = run(&[
        "summarize", "--config", &fixture("config.json"), "--data", &fixture("april.csv"),
        "--column", "temp", "--variable", "temperature", "--partition", "q5",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let summary: Vec<(String, String, f64)> = doc["summary"]
        .as_array()
        .unwrap()
        .iter()
        .map(|s| {
            (
                s["quantifier"].as_str().unwrap().to_string(),
                s["label"].as_str().unwrap().to_string(),
                s["degree"].as_f64().unwrap(),
            )
        })
        .collect();
    assert_eq!(
        summary,
        vec![("many".into(), "warm".into(), 0.72), ("a few".into(), "low".into(), 0.72)]
    );

    let out = run(&[
        "summarize", "--config", &fixture("config.json"), "--data", &fixture("april.csv"),
        "--column", "temp", "--variable", "temperature", "--partition", "q5", "--no-suppress-bottom",
    ]);
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let nn: Vec<&str> = doc["summary"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|s| s["quantifier"] == "nearly none")
        .map(|s| s["label"].as_str().unwrap())
        .collect();
    // Equal degrees keep the variable's label order.
    assert_eq!(nn, vec!["very low", "hot", "very hot"]);
}

#[test]
fn oil_trailing_windows_are_fully_rising() {
    let out = run(&[
        "slide", "--config", &fixture("config.json"), "--data", &fixture("oil.csv"),
        "--expr", "oil_pattern", "--theta", "0.8", "--format", "csv",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "t,time,degree,boundary,above_0.8");
    assert_eq!(lines.len(), 43);
    for line in &lines[lines.len() - 5..] {
        let cells: Vec<&str> = line.split(',').collect();
        assert_eq!(cells[2..], ["1", "false", "true"], "{line}");
    }
    // The first year has no percentage change and the window is clipped.
    assert!(lines[1].starts_with("1965,1965,"));
    assert!(lines[1].ends_with(",true,false"));
}

#[test]
fn empty_instant_selection() {
    let out = run(&[
        "slide", "--config", &fixture("config.json"), "--data", &fixture("oil.csv"),
        "--expr", "oil_pattern", "--from", "1990", "--to", "1989", "--format", "csv",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "t,time,degree,boundary\n");
}

#[test]
fn forced_crisp_degree_prints_one() {
    let dir = tempfile::tempdir().unwrap();
    let data = dir.path().join("crisp.csv");
    std::fs::write(&data, "t,a\n0,1\n1,1\n2,1\n3,1\n").unwrap();
    // Every instant of the whole-set window satisfies `a`.
    let cfg = dir.path().join("cfg.json");
    std::fs::write(
        &cfg,
        r#"{"quantifiers": {"every": {"kind": "all"}},
            "windows": {"w": {"kind": "trapezoid", "a": -1, "b": -1, "c": 0, "d": 0}}}"#,
    )
    .unwrap();
    let (cfg, data) = (cfg.display().to_string(), data.display().to_string());
    for method in ["md", "i", "a/exact", "a/dp", "a/mc:500:1"] {
        let out = run(&[
            "eval", "--config", &cfg, "--data", &data, "--method", method, "--expr", "every(w, a)", "--format", "csv",
        ]);
        assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
        assert_eq!(stdout(&out), format!("degree,instants,excluded,method\n1,4,0,{method}\n"));
    }
}

#[test]
fn monte_carlo_is_reproducible() {
    let args = [
        "eval", "--config", &fixture("config.json"), "--data", &fixture("weather.csv"),
        "--method", "a/mc:5000:7", "--expr", "most(last_week, temp is warm)",
    ];
    let a = run_with_threads(&args, "1");
    let b = run_with_threads(&args, "3");
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

fn write_cap_fixture(dir: &Path) -> (String, String) {
    let data = dir.join("big.csv");
    let mut text = String::from("t,x\n");
    for i in 0..20 {
        text.push_str(&format!("{i},{}\n", 0.05 * i as f64));
    }
    std::fs::write(&data, text).unwrap();
    let cfg = dir.join("cfg.json");
    std::fs::write(
        &cfg,
        r#"{"quantifiers": {"most": {"kind": "prop_binary", "fn": {"kind": "s", "alpha": 0.5, "gamma": 0.8}}},
            "windows": {"w": {"kind": "trapezoid", "a": -1, "b": -1, "c": 0, "d": 0}}}"#,
    )
    .unwrap();
    (cfg.display().to_string(), data.display().to_string())
}

#[test]
fn exact_beyond_cap_exits_4_without_output() {
    let dir = tempfile::tempdir().unwrap();
    let (cfg, data) = write_cap_fixture(dir.path());
    let out_path = dir.path().join("out.json");
    let out = run(&[
        "eval", "--config", &cfg, "--data", &data, "--method", "a/exact",
        "--expr", "most(w, x)", "--out", out_path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(4));
    assert!(stderr(&out).contains("cap"), "{}", stderr(&out));
    assert!(out.stdout.is_empty());
    assert!(!out_path.exists());
    // The cardinality DP has no such limit.
    let out = run(&["eval", "--config", &cfg, "--data", &data, "--expr", "most(w, x)"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn out_file_receives_the_result() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("r.csv");
    let args = [
        "rate-search", "--config", &fixture("config.json"), "--data", &fixture("weather.csv"),
        "--x1", "temp is warm", "--x2", "humidity is high", "--format", "csv",
    ];
    let direct = run(&args);
    let mut with_out = args.to_vec();
    with_out.extend(["--out", out_path.to_str().unwrap()]);
    let o = run(&with_out);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    assert_eq!(std::fs::read(&out_path).unwrap(), direct.stdout);
}

#[test]
fn error_paths_exit_nonzero_with_no_output() {
    let cfg = fixture("config.json");
    let oil = fixture("oil.csv");
    let weather = fixture("weather.csv");
    let dir = tempfile::tempdir().unwrap();
    let gap = dir.path().join("gap.csv");
    std::fs::write(&gap, "date,price\n2020-01-01,1\n2020-01-02,2\n2020-01-05,3\n").unwrap();
    let bad = dir.path().join("bad.csv");
    std::fs::write(&bad, "year,price\n1990,1\n1991,x\n").unwrap();
    let zero = dir.path().join("zero.csv");
    std::fs::write(&zero, "year,production\n1990,0\n1991,2\n1992,3\n").unwrap();
    let (gap, bad, zero) = (gap.display().to_string(), bad.display().to_string(), zero.display().to_string());

    let cases: Vec<(Vec<&str>, i32, &str)> = vec![
        (vec!["slide", "--config", &cfg, "--data", &oil, "--expr", "most("], 2, "column 6"),
        (vec!["slide", "--config", &cfg, "--data", &oil, "--expr", "nope(last_five_years, oil)"], 2, "unknown quantifier"),
        (vec!["slide", "--config", &cfg, "--data", &oil, "--expr", "sim80(last_five_years, oil is nsoil)"], 2, "takes 3"),
        (vec!["slide", "--config", &cfg, "--data", &oil, "--expr", "most(last_five_years, oil is nope)"], 2, "unknown label"),
        (vec!["slide", "--config", &cfg, "--data", &oil, "--expr", "oil_pattern", "--theta", "1.5"], 2, "threshold"),
        (vec!["slide", "--config", &cfg, "--data", &gap, "--expr", "oil_pattern"], 3, "row 4"),
        (vec!["slide", "--config", &cfg, "--data", &bad, "--expr", "oil_pattern"], 3, "row 3"),
        (vec!["slide", "--config", &cfg, "--data", &zero, "--expr", "oil_pattern"], 3, "instant 1991"),
        (vec!["slide", "--config", &cfg, "--data", &weather, "--expr", "most(last_week, rain is high)"], 2, "no column `rain`"),
        (vec!["eval", "--config", &cfg, "--data", &oil, "--expr", "oil_pattern", "--method", "zz"], 2, "method"),
        (vec!["summarize", "--config", &cfg, "--data", &weather, "--column", "temp", "--variable", "x", "--partition", "q5"], 2, "unknown variable"),
        (vec!["rate-search", "--config", &cfg, "--data", &weather, "--x1", "temp is warm", "--x2", "humidity is high", "--step", "0.5"], 2, "step"),
        (vec!["rate-search", "--config", &cfg, "--data", &weather, "--x1", "temp is", "--x2", "humidity"], 2, "--x1"),
        (vec!["eval", "--config", "/nonexistent.json", "--data", &oil, "--expr", "oil_pattern"], 2, "cannot read config"),
        (vec!["eval", "--config", &cfg, "--data", "/nonexistent.csv", "--expr", "oil_pattern"], 3, "cannot open"),
        (vec!["eval", "--config", &cfg, "--expr", "oil_pattern"], 2, "--data"),
        (vec!["frobnicate"], 2, "frobnicate"),
    ];
    for (args, code, needle) in cases {
        let out = run(&args);
        assert_eq!(out.status.code(), Some(code), "{args:?}: {}", stderr(&out));
        assert!(out.stdout.is_empty(), "{args:?} wrote output");
        assert!(stderr(&out).contains(needle), "{args:?}: {}", stderr(&out));
    }
}
