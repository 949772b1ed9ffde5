use std::fs;
use std::path::Path;

use lanecraft::cli::{run_with, EXIT_ASSERT, EXIT_OK, EXIT_USAGE};

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("lanecraft").chain(args.iter().copied());
    let code = run_with(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn short_config(dir: &Path) -> String {
    let p = dir.join("short.json");
    fs::write(&p, r#"{ "time_cap": 60.0 }"#).unwrap();
    p.to_str().unwrap().to_owned()
}

#[test]
fn heatmap_writes_csv_and_pgm() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    let (code, stdout, _) = run(&["heatmap", "--scenario", "enemy-creeps", "--out", out]);
    assert_eq!(code, EXIT_OK);
    assert!(stdout.contains("enemy-creeps"));
    let csv = fs::read_to_string(dir.path().join("enemy-creeps.csv")).unwrap();
    let rows: Vec<&str> = csv.lines().collect();
    assert_eq!(rows.len(), 30);
    assert!(rows.iter().all(|r| r.split(',').count() == 120));
    let pgm = fs::read(dir.path().join("enemy-creeps.pgm")).unwrap();
    assert!(pgm.starts_with(b"P5\n120 30\n255\n"));
    assert_eq!(pgm.len(), b"P5\n120 30\n255\n".len() + 120 * 30);
}

#[test]
fn two_layer_scenario_gets_suffixed_files() {
    let dir = tempfile::tempdir().unwrap();
    let (code, _, _) = run(&["heatmap", "--scenario", "max-vs-sum", "--out", dir.path().to_str().unwrap()]);
    assert_eq!(code, EXIT_OK);
    for stem in ["max-vs-sum-max", "max-vs-sum-sum"] {
        assert!(dir.path().join(format!("{stem}.csv")).exists());
        assert!(dir.path().join(format!("{stem}.pgm")).exists());
    }
}

#[test]
fn unknown_scenario_lists_the_valid_ones() {
    let dir = tempfile::tempdir().unwrap();
    let (code, _, err) = run(&["heatmap", "--scenario", "volcano", "--out", dir.path().to_str().unwrap()]);
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains("volcano") && err.contains("full-compose"));
}

#[test]
fn simulate_writes_stats_and_replay() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = short_config(dir.path());
    let out = dir.path().join("run");
    let (code, stdout, _) = run(&["simulate", "--config", &cfg, "--seed", "4", "--out", out.to_str().unwrap()]);
    assert_eq!(code, EXIT_OK);
    assert!(stdout.contains("seed 4"));
    let stats: serde_json::Value = serde_json::from_str(&fs::read_to_string(out.join("stats.json")).unwrap()).unwrap();
    let replay = fs::read_to_string(out.join("replay.jsonl")).unwrap();
    assert_eq!(stats["seed"], 4);
    assert_eq!(stats["events"].as_u64().unwrap() as usize, replay.lines().count());
    let first: serde_json::Value = serde_json::from_str(replay.lines().next().unwrap()).unwrap();
    let keys: Vec<&str> = first.as_object().unwrap().keys().map(String::as_str).collect();
    for k in ["tick", "time", "kind", "actor", "target", "value"] {
        assert!(keys.contains(&k), "missing {k}");
    }
}

#[test]
fn solo_suite_writes_summaries() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = short_config(dir.path());
    let out = dir.path().join("suite");
    let (code, stdout, _) = run(&[
        "solo-suite", "--config", &cfg, "--n", "2", "--jobs", "1", "--replays", "--out", out.to_str().unwrap(),
    ]);
    assert_eq!(code, EXIT_OK);
    assert!(stdout.contains("cap"));
    let summary: serde_json::Value = serde_json::from_str(&fs::read_to_string(out.join("summary.json")).unwrap()).unwrap();
    assert_eq!(summary["n"], 2);
    assert_eq!(summary["capped"], 2);
    assert!(out.join("summary.txt").exists());
    assert!(out.join("replays").join("seed-0.jsonl").exists());
    assert!(out.join("replays").join("seed-1.jsonl").exists());
}

#[test]
fn failed_ablation_assert_exits_with_three() {
    let dir = tempfile::tempdir().unwrap();
    // a ten second cap leaves both arms at zero creep score
    let cfg = dir.path().join("tiny.json");
    fs::write(&cfg, r#"{ "time_cap": 10.0 }"#).unwrap();
    let out = dir.path().join("abl");
    let args = ["farm-ablation", "--config", cfg.to_str().unwrap(), "--n", "1", "--out", out.to_str().unwrap()];
    let (code, _, _) = run(&args);
    assert_eq!(code, EXIT_OK);
    assert!(out.join("ablation.json").exists() && out.join("ablation.txt").exists());
    let mut with_assert = args.to_vec();
    with_assert.push("--assert");
    let (code, _, err) = run(&with_assert);
    assert_eq!(code, EXIT_ASSERT);
    assert!(err.contains("assertion failed"));
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(run(&[]).0, EXIT_USAGE);
    assert_eq!(run(&["teleport"]).0, EXIT_USAGE);
    assert_eq!(run(&["solo-suite", "--n", "0"]).0, EXIT_USAGE);
    assert_eq!(run(&["farm-ablation", "--n", "0"]).0, EXIT_USAGE);
    assert_eq!(run(&["simulate", "--phi", "maybe"]).0, EXIT_USAGE);
    let (code, stdout, _) = run(&["--help"]);
    assert_eq!(code, EXIT_OK);
    assert!(stdout.contains("heatmap"));
}

#[test]
fn bad_config_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("bad.json");
    fs::write(&p, r#"{ "tick_hz": 0 }"#).unwrap();
    let (code, _, err) = run(&["simulate", "--config", p.to_str().unwrap(), "--out", dir.path().to_str().unwrap()]);
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains("tick_hz"), "{err}");
    let (code, _, _) = run(&["simulate", "--config", "/no/such/file.json"]);
    assert_eq!(code, EXIT_USAGE);
}
