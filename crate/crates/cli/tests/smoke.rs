//! End-to-end smoke tests: exit codes, JSON schema, file round-trips, and
//! report stability, all through the compiled binary.

use std::path::PathBuf;
use std::process::{Command, Output};

fn planelab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_planelab"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json_of(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("valid JSON report")
}

fn tmp(name: &str) -> PathBuf {
    let mut p = std::env::temp_dir();
    p.push(format!("planelab-smoke-{}-{name}", std::process::id()));
    p
}

#[test]
fn classify_example_reports_six_directions() {
    let out = planelab(&["directions", "classify", "--q", "9", "--fn", "half_power", "--json"]);
    assert!(out.status.success());
    let report = json_of(&out);
    assert_eq!(report["schema"], "v1");
    assert_eq!(report["command"], "directions classify");
    assert_eq!(report["field"]["p"], 3);
    assert_eq!(report["field"]["n"], 2);
    assert_eq!(report["payload"]["n_dirs"], 6);
    assert!(report["timing_ms"].is_u64());
}

#[test]
fn bruen_bound_for_q9_is_thirteen() {
    let out = planelab(&["blocking", "bounds", "--model", "bruen", "--q", "9", "--json"]);
    assert!(out.status.success());
    assert_eq!(json_of(&out)["payload"]["bound"], 13);
}

#[test]
fn double_blocking_below_fifteen_is_certified_impossible() {
    let out = planelab(&["search", "certify", "--q", "5", "--t", "2", "--max-size", "14", "--json"]);
    assert!(out.status.success());
    let report = json_of(&out);
    assert_eq!(report["payload"]["certified"], true);
    assert_eq!(report["exhausted"], true);
    assert!(report["nodes"].is_u64());
}

#[test]
fn refuted_certificates_exit_with_one() {
    let out = planelab(&["search", "certify", "--q", "2", "--t", "1", "--max-size", "7"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn usage_errors_exit_with_two() {
    // not a prime power
    let out = planelab(&["field", "tables", "--q", "6"]);
    assert_eq!(out.status.code(), Some(2));
    // randomized battery sweep without a seed
    let out = planelab(&["suite", "run", "--criteria", "direction-counts"]);
    assert_eq!(out.status.code(), Some(2));
    // randomized scattered search without a seed
    let out = planelab(&[
        "linearset", "scattered", "--q", "16", "--subq", "2", "--limit", "4", "--randomized",
    ]);
    assert_eq!(out.status.code(), Some(2));
    // budget above the default without --allow-long
    let out = planelab(&[
        "search", "run", "--q", "2", "--max-size", "3", "--budget", "2000000000",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn constructions_round_trip_through_files() {
    let path = tmp("baer9.pts");
    let out = planelab(&[
        "blocking",
        "construct",
        "--q",
        "9",
        "--kind",
        "baer",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let out = planelab(&["blocking", "analyze", "--file", path.to_str().unwrap(), "--json"]);
    assert!(out.status.success());
    let report = json_of(&out);
    assert_eq!(report["payload"]["size"], 13);
    assert_eq!(report["payload"]["minimal"], true);
    assert_eq!(report["payload"]["redei_type"], true);
    assert_eq!(report["payload"]["spectrum"]["1"], 78);
    assert_eq!(report["payload"]["spectrum"]["4"], 13);
    std::fs::remove_file(path).ok();
}

#[test]
fn reports_are_stable_excluding_timing() {
    let args = ["directions", "classify", "--q", "8", "--fn", "subfield_trace", "--e", "1", "--json"];
    let mut first = json_of(&planelab(&args));
    let mut second = json_of(&planelab(&args));
    first["timing_ms"] = 0.into();
    second["timing_ms"] = 0.into();
    assert_eq!(first, second);
}

#[test]
fn worker_count_does_not_change_search_reports() {
    let run = |workers: &str| {
        let out = planelab(&[
            "search", "run", "--q", "4", "--max-size", "7", "--mode", "all", "--nontrivial",
            "--workers", workers, "--json",
        ]);
        assert!(out.status.success());
        let mut report = json_of(&out);
        report["timing_ms"] = 0.into();
        report
    };
    assert_eq!(run("1"), run("3"));
}

#[test]
fn suite_subcommand_runs_selected_batteries() {
    let out = planelab(&[
        "suite", "run", "--seed", "3", "--criteria", "direction-counts", "--json",
    ]);
    assert!(out.status.success());
    let report = json_of(&out);
    assert_eq!(report["payload"][0]["name"], "direction-counts");
    assert_eq!(report["payload"][0]["passed"], true);
    assert_eq!(report["seed"], 3);
    let listing = planelab(&["suite", "list"]);
    assert!(listing.status.success());
    assert_eq!(String::from_utf8_lossy(&listing.stdout).lines().count(), 13);
}

#[test]
fn arc_workflow_extends_to_a_hyperoval() {
    let arc = tmp("arc5.pts");
    let hyper = tmp("hyper6.pts");
    let out = planelab(&[
        "search", "run", "--q", "4", "--kind", "arc", "--n", "2", "--max-size", "5",
        "--out", arc.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let out = planelab(&[
        "arcs", "extend", "--file", arc.to_str().unwrap(), "--out", hyper.to_str().unwrap(), "--json",
    ]);
    assert!(out.status.success());
    assert_eq!(json_of(&out)["payload"]["size"], 6);
    let out = planelab(&["arcs", "analyze", "--file", hyper.to_str().unwrap(), "--json"]);
    let report = json_of(&out);
    assert_eq!(report["payload"]["is_maximal"], true);
    assert_eq!(report["payload"]["complete"], true);
    std::fs::remove_file(arc).ok();
    std::fs::remove_file(hyper).ok();
}

#[test]
fn file_errors_carry_line_numbers() {
    let path = tmp("broken.pts");
    std::fs::write(&path, "q 9 irr 1,0,1\n0:0:1\nnot-a-point\n").unwrap();
    let out = planelab(&["blocking", "analyze", "--file", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let msg = String::from_utf8_lossy(&out.stderr);
    assert!(msg.contains("line 3"), "{msg}");
    std::fs::remove_file(path).ok();
}
