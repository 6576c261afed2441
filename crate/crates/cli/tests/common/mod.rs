#![allow(dead_code)]

//! Fixture paths, binary runner and the golden-file command table shared by
//! the CLI and acceptance tests.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

pub fn fixture(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
        .display()
        .to_string()
}

pub fn golden_path(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name)
}

pub fn run_with_threads(args: &[&str], threads: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fuzzyq"))
        .args(args)
        .env("RAYON_NUM_THREADS", threads)
        .output()
        .expect("binary runs")
}

pub fn run(args: &[&str]) -> Output {
    run_with_threads(args, "2")
}

pub fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

pub fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

/// `(golden file, command line)` for every command, in both formats where
/// the output differs in shape.
pub fn golden_cases() -> Vec<(&'static str, Vec<String>)> {
    let cfg = fixture("config.json");
    let oil = fixture("oil.csv");
    let weather = fixture("weather.csv");
    let april = fixture("april.csv");
    let v = |xs: &[&str]| xs.iter().map(|s| s.to_string()).collect::<Vec<_>>();
    vec![
        (
            "slide_oil.json",
            v(&["slide", "--config", &cfg, "--data", &oil, "--expr", "oil_pattern", "--theta", "0.8"]),
        ),
        (
            "slide_oil.csv",
            v(&["slide", "--config", &cfg, "--data", &oil, "--expr", "oil_pattern", "--theta", "0.8", "--format", "csv"]),
        ),
        (
            "slide_weather_md.csv",
            v(&[
                "slide", "--config", &cfg, "--data", &weather, "--method", "md", "--format", "csv",
                "--expr", "sim80(last_week, temp is warm, humidity is high shift 1)",
            ]),
        ),
        (
            "eval_weather.json",
            v(&["eval", "--config", &cfg, "--data", &weather, "--expr", "most(last_week, temp is warm)"]),
        ),
        (
            "eval_weather_at.json",
            v(&[
                "eval", "--config", &cfg, "--data", &weather, "--method", "i",
                "--expr", "most(last_week, humidity is high)", "--at", "2024-04-20",
            ]),
        ),
        (
            "eval_weather_mc.csv",
            v(&[
                "eval", "--config", &cfg, "--data", &weather, "--method", "mc", "--format", "csv",
                "--expr", "sim80(last_week, temp is warm, humidity is high)",
            ]),
        ),
        (
            "summarize_april.json",
            v(&["summarize", "--config", &cfg, "--data", &april, "--column", "temp", "--variable", "temperature", "--partition", "q5"]),
        ),
        (
            "summarize_april_all.csv",
            v(&[
                "summarize", "--config", &cfg, "--data", &april, "--column", "temp", "--variable", "temperature",
                "--partition", "q5", "--no-suppress-bottom", "--format", "csv",
            ]),
        ),
        (
            "summarize_weather_best.json",
            v(&[
                "summarize", "--config", &cfg, "--data", &weather, "--column", "temp", "--variable", "temperature",
                "--partition", "q5", "--best-only", "--method", "md",
            ]),
        ),
        (
            "summarize_weather_merge.csv",
            v(&[
                "summarize", "--config", &cfg, "--data", &weather, "--column", "temp", "--variable", "temperature",
                "--partition", "q5", "--merge", "--format", "csv",
            ]),
        ),
        (
            "rate_search_weather.json",
            v(&["rate-search", "--config", &cfg, "--data", &weather, "--x1", "temp is warm", "--x2", "humidity is high"]),
        ),
        (
            "rate_search_weather.csv",
            v(&[
                "rate-search", "--config", &cfg, "--data", &weather, "--x1", "temp is warm", "--x2", "humidity is high",
                "--delta-max", "0.3", "--step", "0.05", "--format", "csv",
            ]),
        ),
    ]
}
