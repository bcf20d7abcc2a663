use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn data(name: &str) -> String {
    let mut p = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    p.push("tests/data");
    p.push(name);
    p.to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_spanshadow"))
        .args(args)
        .env("SPANSHADOW_WORKERS", "1")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json_lines(out: &Output) -> Vec<Value> {
    stdout(out).lines().map(|l| serde_json::from_str(l).unwrap()).collect()
}

#[test]
fn fix_count_of_a_three_cycle() {
    let out = run(&["count", "fix", "--map", &data("cycle3.json"), "--n", "3"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).trim(), "3");
    let once = run(&["count", "fix", "--map", &data("cycle3.json"), "--n", "1"]);
    assert_eq!(stdout(&once).trim(), "0");
}

#[test]
fn identity_has_no_points_of_least_period_two() {
    let out = run(&["count", "least-period", "--map", &data("id4.json"), "--n", "2"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).trim(), "0");
    let one = run(&["count", "least-period", "--map", &data("id4.json"), "--n", "1"]);
    assert_eq!(stdout(&one).trim(), "4");
}

#[test]
fn equivariant_count_of_a_swap() {
    // p ↔ q swapped by both f and the group; r fixed by both.
    let out = run(&[
        "count", "equivariant", "--map", &data("swap.json"), "--group", &data("C2.json"), "--subgroup", "C2", "--n", "1",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).trim(), "1");
    let trivial = run(&[
        "count", "equivariant", "--map", &data("swap.json"), "--group", &data("C2.json"), "--subgroup", "1", "--n", "2",
    ]);
    assert_eq!(stdout(&trivial).trim(), "3");
}

#[test]
fn certified_fuller_count_lists_a_bijection() {
    let out = run(&["count", "fuller", "--map", &data("cycle3.json"), "--n", "3", "--certify"]);
    assert_eq!(out.status.code(), Some(0));
    let v = &json_lines(&out)[0];
    assert_eq!(v["count"], 3);
    let pairs = v["bijection"].as_array().unwrap();
    assert_eq!(pairs.len(), 3);
    let mut targets: Vec<String> = pairs.iter().map(|p| p[1].to_string()).collect();
    targets.sort();
    targets.dedup();
    assert_eq!(targets.len(), 3);
}

#[test]
fn non_endo_map_is_an_input_error() {
    let out = run(&["count", "fix", "--map", &data("not_endo.json"), "--n", "1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stdout(&out).is_empty());
}

#[test]
fn missing_file_is_an_input_error() {
    let out = run(&["count", "fix", "--map", &data("absent.json"), "--n", "1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn identity_span_echoes_its_input() {
    let out = run(&["span", "act", &data("identity_span.json"), &data("input_x.json")]);
    assert_eq!(out.status.code(), Some(0));
    let v = &json_lines(&out)[0];
    assert_eq!(v["base"], "A");
    let mut fibers: Vec<(String, usize)> = Vec::new();
    for pair in v["proj"]["map"].as_array().unwrap() {
        let b = pair[1].as_str().unwrap().to_string();
        match fibers.iter_mut().find(|(k, _)| *k == b) {
            Some((_, n)) => *n += 1,
            None => fibers.push((b, 1)),
        }
    }
    fibers.sort();
    assert_eq!(fibers, vec![("a0".to_string(), 2), ("a1".to_string(), 1)]);
}

#[test]
fn nullary_span_acts_as_its_left_leg() {
    let out = run(&["span", "act", &data("suspension.json")]);
    assert_eq!(out.status.code(), Some(0));
    let v = &json_lines(&out)[0];
    assert_eq!(v["base"], "C");
    let over: Vec<&str> = v["proj"]["map"].as_array().unwrap().iter().map(|p| p[1].as_str().unwrap()).collect();
    assert_eq!(over.iter().filter(|c| **c == "c0").count(), 2);
    assert_eq!(over.iter().filter(|c| **c == "c1").count(), 1);
}

#[test]
fn arity_mismatch_is_an_input_error() {
    let out = run(&["span", "act", &data("identity_span.json")]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn rigidity_verdicts_exit_zero() {
    let out = run(&["span", "rigid", &data("suspension.json")]);
    assert_eq!(out.status.code(), Some(0));
    let v = &json_lines(&out)[0];
    assert_eq!(v["verdict"], "not-rigid");
    let w = v["witness"].as_array().unwrap();
    assert_ne!(w[0], w[1]);
    // b0 and b1 both lie over c0.
    let mut pair: Vec<&str> = w.iter().map(|x| x.as_str().unwrap()).collect();
    pair.sort();
    assert_eq!(pair, ["b0", "b1"]);

    let out = run(&["span", "rigid", &data("injective.json")]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json_lines(&out)[0]["verdict"], "rigid");
}

#[test]
fn coherence_examples_pass() {
    let out = run(&["coherence", "pentagon", "--instances", "200", "--seed", "7"]);
    assert_eq!(out.status.code(), Some(0));
    let v = &json_lines(&out)[0];
    assert_eq!(v["suite"], "pentagon");
    assert_eq!(v["seed"], 7);
    assert_eq!(v["instances"], 200);
    assert_eq!(v["failures"].as_array().unwrap().len(), 0);

    let out = run(&["coherence", "fuller.twist", "--n", "3"]);
    assert_eq!(out.status.code(), Some(0));

    let out = run(&["coherence", "equivariant.icon", "--group", &data("S3.json"), "--subgroup", "A3"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn coherence_over_a_base_file() {
    let base = data("base2.json");
    let out = run(&["coherence", "shadow_assoc", "--instances", "30", "--base", &base]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let out = run(&["coherence", "triangle", "--instances", "30", "--base", "point", "--max-size", "2"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn coherence_rejects_bad_requests() {
    assert_eq!(run(&["coherence", "hexagon"]).status.code(), Some(2));
    assert_eq!(run(&["coherence", "pentagon", "--n", "0"]).status.code(), Some(2));
    assert_eq!(run(&["coherence", "pentagon", "--instances", "many"]).status.code(), Some(2));
    assert_eq!(run(&["coherence", "pentagon", "--subgroup", "A3"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn reports_are_byte_identical_across_runs() {
    let args = ["coherence", "fuller.assoc", "--n", "2", "--instances", "40", "--seed", "11"];
    let a = run(&args);
    let b = Command::new(env!("CARGO_BIN_EXE_spanshadow"))
        .args(args)
        .env("SPANSHADOW_WORKERS", "3")
        .output()
        .unwrap();
    assert_eq!(a.stdout, b.stdout);
    assert!(!a.stdout.is_empty());
}

#[test]
fn graph_model_validates() {
    let out = run(&["deform", "validate", "--model", "graph", "--max-vertices", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let reports = json_lines(&out);
    assert_eq!(reports.len(), 4);
    assert!(reports.iter().all(|r| r["valid"] == true));
}

#[test]
fn homotopy_category_of_small_graphs() {
    // Condensations of graphs on at most three vertices: the acyclic graphs
    // up to isomorphism, 1 + 1 + 2 + 6.
    let out = run(&["deform", "ho", "--model", "graph", "--max-vertices", "3"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json_lines(&out)[0]["objects"], 10);
}

#[test]
fn comparison_of_composites_is_all_weak_equivalences() {
    let out = run(&["deform", "compare", "--model", "graph", "--max-vertices", "3", "--list", "condensation,vertices"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json_lines(&out)[0]["all_we"], true);
    assert_eq!(run(&["deform", "compare", "--model", "graph"]).status.code(), Some(2));
    assert_eq!(
        run(&["deform", "compare", "--model", "graph", "--max-vertices", "2", "--list", "vertices,nope"]).status.code(),
        Some(2)
    );
}

#[test]
fn derived_vertex_set_counts_components() {
    let out = run(&["deform", "derive", "--model", "graph", "--max-vertices", "3", "--functor", "V"]);
    assert_eq!(out.status.code(), Some(0));
    let v = &json_lines(&out)[0];
    let values = v["values"].as_array().unwrap();
    let cycle = values.iter().find(|p| p[0] == "G2[0→1,1→0]").unwrap();
    assert_eq!(cycle[1], "[1]");
}

#[test]
fn table_model_from_file() {
    let out = run(&["deform", "validate", "--model", &data("arrow.json")]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let out = run(&["deform", "ho", "--model", &data("arrow.json")]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json_lines(&out)[0]["objects"], 1);
}

#[test]
fn invalid_deformation_is_a_counterexample() {
    // R is the identity but b is not radiant.
    let out = run(&["deform", "validate", "--model", &data("broken_arrow.json")]);
    assert_eq!(out.status.code(), Some(1), "{}", String::from_utf8_lossy(&out.stderr));
    let v = &json_lines(&out)[0];
    assert_eq!(v["valid"], false);
    assert!(!v["violations"].as_array().unwrap().is_empty());
}
