use std::fs;
use std::path::Path;

use khcausal::cli::{run_with, CACHE_DIR_ENV};
use serde_json::Value;

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("khcausal").chain(args.iter().copied());
    let code = run_with(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn golden(name: &str) -> String {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name);
    fs::read_to_string(path).unwrap()
}

fn check_golden(args: &[&str], name: &str, code: i32) {
    let (c, out, err) = run(args);
    assert_eq!(c, code, "{args:?}: {err}");
    assert_eq!(out, golden(name), "{args:?}");
}

#[test]
fn golden_outputs() {
    check_golden(&["--no-cache", "kh", "--pd", "O(1)"], "kh_unknot.json", 0);
    check_golden(&["--no-cache", "kh", "--braid", "1 1", "--strands", "2"], "kh_hopf.json", 0);
    check_golden(&["--no-cache", "kh", "--pd", "X(1,3,2,4) X(3,1,4,2)"], "kh_hopf.json", 0);
    check_golden(&["--no-cache", "akh", "--braid", "", "--strands", "2"], "akh_u2.json", 0);
    check_golden(&["--no-cache", "akh", "--braid", "1 -1", "--strands", "2"], "akh_u2.json", 0);
    check_golden(&["--no-cache", "causal", "--events", "0,0,0;0.5,0,1"], "causal_timelike.json", 10);
    check_golden(&["--no-cache", "causal", "--events", "0,0,0;3,0,1"], "causal_spacelike.json", 0);
    check_golden(&["--no-cache", "causal", "--events", "0,0,0;1,0,1"], "causal_null.json", 10);
    check_golden(
        &["--no-cache", "causal", "--braid", "1 -1", "--route", "both"],
        "causal_braid_both.json",
        0,
    );
    check_golden(&["--no-cache", "verify", "--suite", "models"], "verify_models.json", 0);
}

#[test]
fn twisted_pair_differs_from_model() {
    let (c, out, _) = run(&["--no-cache", "akh", "--braid", "-1 -1", "--strands", "2"]);
    assert_eq!(c, 0);
    assert_ne!(out, golden("akh_u2.json"));
}

#[test]
fn verdict_schema() {
    let (c, out, _) = run(&["--no-cache", "causal", "--events", "0,0,0;0.5,0,1", "--route", "kh"]);
    assert_eq!(c, 10);
    let v: Value = serde_json::from_str(&out).unwrap();
    let keys: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
    assert_eq!(keys, ["related", "route", "model", "computed", "model_dims", "oracle", "braid"]);
    assert_eq!(v["route"], "kh");
    assert_eq!(v["model"], "P3");
    for entry in v["computed"].as_array().unwrap() {
        let keys: Vec<&str> = entry.as_object().unwrap().keys().map(String::as_str).collect();
        assert_eq!(keys, ["i", "j", "k", "dim"]);
    }
}

#[test]
fn exit_codes() {
    let (c, _, err) = run(&["kh", "--pd", "X(1,3,2,4)"]);
    assert_eq!(c, 2);
    assert!(err.contains("arc 1"), "{err}");

    let (c, _, err) = run(&["--no-cache", "causal", "--braid", "1", "--strands", "2"]);
    assert_eq!(c, 2);
    assert!(err.contains("1 component, expected 2"), "{err}");

    let (c, _, err) = run(&["--no-cache", "--crossing-limit", "2", "kh", "--braid", "1 1 1"]);
    assert_eq!(c, 3);
    assert!(err.contains("crossing limit"), "{err}");

    assert_eq!(run(&["--crossing-limit", "0", "kh", "--pd", "O(1)"]).0, 2);
    assert_eq!(run(&["--crossing-limit", "41", "kh", "--pd", "O(1)"]).0, 2);
    assert_eq!(run(&["--epsilon", "0", "causal", "--events", "0,0,0;3,0,1"]).0, 2);
    assert_eq!(run(&["kh", "--braid", "1 q"]).0, 2);
    assert_eq!(run(&["kh"]).0, 2);
    assert_eq!(run(&["causal", "--events", "0,0;1,1,1"]).0, 2);
    assert_eq!(run(&["verify", "--suite", "nope"]).0, 2);
    assert_eq!(run(&["bogus"]).0, 2);
    assert_eq!(run(&["--help"]).0, 0);
}

#[test]
fn verify_subsets() {
    let (c, out, _) = run(&["verify", "--suite", "euler", "--max-crossings", "8"]);
    assert_eq!(c, 0, "{out}");
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["suites"].as_array().unwrap().len(), 1);
    assert_eq!(v["suites"][0]["name"], "euler");

    let (c, out, _) = run(&["--output", "text", "verify", "--suite", "oracle,integrity", "--pairs", "20"]);
    assert_eq!(c, 0, "{out}");
    assert!(out.starts_with("PASS oracle"), "{out}");
    assert!(out.contains("PASS integrity"), "{out}");
}

#[test]
fn text_output() {
    let (c, out, _) = run(&["--no-cache", "--output", "text", "kh", "--pd", "O(1)"]);
    assert_eq!(c, 0);
    assert_eq!(out, "{(0,-1):1, (0,1):1}\n");
    let (c, out, _) = run(&["--no-cache", "--output", "text", "causal", "--events", "0,0,0;0.5,0,1"]);
    assert_eq!(c, 10);
    assert_eq!(out, "related (route akh, model U2)\n");
}

#[test]
fn dump_complex_goes_to_stderr() {
    let (c, out, err) = run(&["--no-cache", "kh", "--pd", "X(1,3,2,4) X(3,1,4,2)", "--dump-complex"]);
    assert_eq!(c, 0);
    assert_eq!(out, golden("kh_hopf.json"));
    assert!(err.starts_with("complex kh crossings=2 n_plus=2 n_minus=0"), "{err}");
    assert!(err.contains("d^0"));
}

#[test]
fn deterministic_output() {
    let args = ["--no-cache", "verify", "--suite", "oracle,euler", "--pairs", "30", "--max-crossings", "8", "--seed", "11"];
    assert_eq!(run(&args), run(&args));
    let a = ["--no-cache", "causal", "--events", "1,2,3;-0.5,0.25,1", "--route", "both"];
    assert_eq!(run(&a), run(&a));
}

#[test]
fn cache_round_trip() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path().join("cache");
    let dir_s = dir.to_str().unwrap();
    let args = ["--cache-dir", dir_s, "kh", "--braid", "1 -2 1 -2", "--strands", "3"];
    let first = run(&args);
    let files: Vec<_> = fs::read_dir(&dir).unwrap().map(|e| e.unwrap().path()).collect();
    assert_eq!(files.len(), 1);
    let name = files[0].file_name().unwrap().to_str().unwrap().to_string();
    assert!(name.starts_with("kh-") && name.ends_with(".json"), "{name}");
    // the cache holds exactly what was printed
    assert_eq!(fs::read_to_string(&files[0]).unwrap() + "\n", first.1);
    let second = run(&args);
    assert_eq!(first, second);
    let fresh = run(&["--no-cache", "kh", "--braid", "1 -2 1 -2", "--strands", "3"]);
    assert_eq!(fresh.1, first.1);

    // an unreadable entry is recomputed, not trusted
    fs::write(&files[0], "not json").unwrap();
    assert_eq!(run(&args), first);
    assert_eq!(fs::read_to_string(&files[0]).unwrap() + "\n", first.1);

    // both routes populate the cache, and a warm rerun agrees
    let causal = ["--cache-dir", dir_s, "causal", "--braid", "-1 -1", "--route", "both"];
    let cold = run(&causal);
    assert_eq!(cold.0, 10);
    assert_eq!(run(&causal), cold);
    let kinds: Vec<String> = fs::read_dir(&dir)
        .unwrap()
        .map(|e| e.unwrap().file_name().to_string_lossy().split('-').next().unwrap().to_string())
        .collect();
    assert!(kinds.contains(&"akh".to_string()) && kinds.contains(&"kh".to_string()), "{kinds:?}");
}

#[test]
fn cache_dir_from_environment() {
    let tmp = tempfile::tempdir().unwrap();
    std::env::set_var(CACHE_DIR_ENV, tmp.path());
    let (c, _, _) = run(&["akh", "--braid", "1 2", "--strands", "3"]);
    std::env::remove_var(CACHE_DIR_ENV);
    assert_eq!(c, 0);
    let names: Vec<String> = fs::read_dir(tmp.path())
        .unwrap()
        .map(|e| e.unwrap().file_name().to_string_lossy().into_owned())
        .collect();
    assert!(names.iter().any(|n| n.starts_with("akh-")), "{names:?}");
}

#[test]
fn batch_keeps_input_order() {
    let tmp = tempfile::tempdir().unwrap();
    let path = tmp.path().join("pairs.txt");
    let lines = [
        "0,0,0;0.5,0,1",
        "# comment",
        "0,0,0;3,0,1",
        "",
        "1,1,1;1,1.2,3",
        "0,0,0;1,0,1",
        "2,2,2;-2,-2,2.5",
    ];
    fs::write(&path, lines.join("\n")).unwrap();
    let (c, out, _) = run(&["--no-cache", "causal", "--batch", path.to_str().unwrap()]);
    assert_eq!(c, 0);
    let related: Vec<bool> = out
        .lines()
        .map(|l| serde_json::from_str::<Value>(l).unwrap()["related"].as_bool().unwrap())
        .collect();
    assert_eq!(related, [true, false, true, true, false]);
    // each line matches the single-pair command
    let single = run(&["--no-cache", "causal", "--events", "0,0,0;3,0,1"]).1;
    assert_eq!(out.lines().nth(1).unwrap(), single.trim_end());

    fs::write(&path, "0,0,0;0.5,0,1\nnonsense\n0,0,0;3,0,1\n").unwrap();
    let (c, out, err) = run(&["--no-cache", "causal", "--batch", path.to_str().unwrap()]);
    assert_eq!(c, 2);
    let v: Vec<Value> = out.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(v.len(), 3);
    assert_eq!(v[1]["line"], 2);
    assert!(err.contains("line 2"), "{err}");
    assert_eq!(v[2]["related"], false);
}
