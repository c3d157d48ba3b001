use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use pqcol::partition::PartitionDocument;
use pqcol::Property;
use serde_json::Value;

fn pqcol(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pqcol"))
        .current_dir(dir)
        .env_remove("PQCOL_FIXTURES_DIR")
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn write(dir: &Path, name: &str, text: &str) {
    fs::write(dir.join(name), text).unwrap();
}

#[test]
fn prop_check_reports_the_forbidden_graph() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "k2.g6", "A_\n");
    let o = pqcol(dir.path(), &["prop", "check", "O", "k2.g6"]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("contains forbidden K2"), "{}", stdout(&o));
    let o = pqcol(dir.path(), &["prop", "check", "T", "k2.g6"]);
    assert_eq!(code(&o), 0);
    let o = pqcol(dir.path(), &["--json", "prop", "check", "T", "K3"]);
    assert_eq!(code(&o), 1);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["witness"], serde_json::json!([0, 1, 2]));
}

#[test]
fn property_algebra_output_parses_back() {
    let dir = tempfile::tempdir().unwrap();
    let o = pqcol(dir.path(), &["prop", "intersect", "O", "T"]);
    assert_eq!(code(&o), 0);
    let p = Property::parse(&stdout(&o)).unwrap();
    assert_eq!(p, Property::edgeless());
    let o = pqcol(dir.path(), &["prop", "complement", "forbid:P3"]);
    let p = Property::parse(&stdout(&o)).unwrap();
    assert_eq!(p.forbidden().len(), 1);
    assert_eq!(p.forbidden()[0].size(), 1);
    write(dir.path(), "c4.prop", "property C4free\nC4\n");
    let o = pqcol(dir.path(), &["prop", "check", "c4.prop", "C4"]);
    assert_eq!(code(&o), 1);
}

#[test]
fn unique_search_and_check() {
    let dir = tempfile::tempdir().unwrap();
    let o = pqcol(dir.path(), &["unique", "search", "--props", "O,O", "--max-n", "4"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).lines().next(), Some("A_"));
    let o = pqcol(dir.path(), &["unique", "search", "--props", "O,T", "--max-n", "5"]);
    assert_eq!(code(&o), 1);
    let o = pqcol(dir.path(), &["unique", "check", "P4", "--props", "O,O"]);
    assert_eq!(code(&o), 0);
    let o = pqcol(dir.path(), &["unique", "check", "2K2", "--props", "O,O"]);
    assert_eq!(code(&o), 1);
}

#[test]
fn reduce_then_solve_then_certify() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    write(d, "single-edge.hyp", "3 1 3 1\n0 1 2\n");
    let o = pqcol(d, &["reduce", "single-edge.hyp", "--pair", "O,T", "--out", "out.g6"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let o = pqcol(d, &["solve", "out.g6", "O", "T"]);
    assert_eq!(code(&o), 0);
    let o = pqcol(d, &["--json", "solve", "out.g6", "O", "T"]);
    let doc: PartitionDocument = serde_json::from_str(&stdout(&o)).unwrap();
    fs::write(d.join("col.json"), serde_json::to_string(&doc).unwrap()).unwrap();
    let o = pqcol(d, &["--json", "certify", "out.g6", "col.json", "--map", "out.map.json"]);
    assert_eq!(code(&o), 0);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["certificate"].as_array().unwrap().len(), 1);

    // move a hypergraph vertex across: the colouring check catches it
    let mut bad = doc.clone();
    let moved = bad.parts[0].iter().position(|&v| v < 3).unwrap();
    let v0 = bad.parts[0].remove(moved);
    bad.parts[1].push(v0);
    bad.parts[1].sort();
    fs::write(d.join("bad.json"), serde_json::to_string(&bad).unwrap()).unwrap();
    let o = pqcol(d, &["--json", "certify", "out.g6", "bad.json", "--map", "out.map.json"]);
    assert_eq!(code(&o), 1);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["valid"], Value::Bool(false));
}

#[test]
fn unsatisfiable_instance_reduces_to_uncolourable_graph() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    write(d, "k4.hyp", "3 1 4 4\n0 1 2\n0 1 3\n0 2 3\n1 2 3\n");
    assert_eq!(code(&pqcol(d, &["reduce", "k4.hyp", "--out", "k4.g6"])), 0);
    assert_eq!(code(&pqcol(d, &["solve", "k4.g6", "O", "T"])), 1);
}

#[test]
fn gadget_files_and_status() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let o = pqcol(d, &["gadget", "pincushion", "--verify", "--out", "n.g6"]);
    assert_eq!(code(&o), 0);
    let side: Value = serde_json::from_str(&fs::read_to_string(d.join("n.json")).unwrap()).unwrap();
    assert_eq!(side["status"], "verified");
    assert_eq!(side["order"], 93);
    assert_eq!(side["ports"]["S[2]"], 2);
    assert_eq!(side["pins"].as_array().unwrap().len(), 9);
    assert_eq!(side["report"]["patterns"], serde_json::json!([[0], [1], [2]]));

    let o = pqcol(d, &["--json", "gadget", "replicator"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["sidecar"]["status"], "UNVERIFIED");
    let o = pqcol(d, &["--json", "--no-verify", "gadget", "replicator", "--verify"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["sidecar"]["status"], "UNVERIFIED");
    assert_eq!(v["sidecar"]["ports"]["x'"], 2);
}

#[test]
fn fixture_cache_is_reused_and_repaired() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let fx = d.join("fx");
    let fx_arg = fx.to_str().unwrap();
    let first = pqcol(d, &["--fixtures-dir", fx_arg, "gadget", "replicator", "--verify"]);
    assert_eq!(code(&first), 0);
    let files: Vec<_> = fs::read_dir(&fx).unwrap().map(|e| e.unwrap().path()).collect();
    assert_eq!(files.len(), 1);
    let entry: Value = serde_json::from_str(&fs::read_to_string(&files[0]).unwrap()).unwrap();
    assert_eq!(entry["fixture"]["graph"], "ELrw");
    let second = pqcol(d, &["--fixtures-dir", fx_arg, "gadget", "replicator", "--verify"]);
    assert_eq!(stdout(&first), stdout(&second));

    // a tampered witness is detected and the entry rebuilt
    let mut tampered = entry.clone();
    tampered["gadgets"]["cushion_witnesses"][0][0] = Value::from(1);
    tampered["gadgets"]["cushion_witnesses"][0][1] = Value::from(1);
    tampered["gadgets"]["cushion_witnesses"][0][2] = Value::from(1);
    fs::write(&files[0], serde_json::to_string(&tampered).unwrap()).unwrap();
    let third = Command::new(env!("CARGO_BIN_EXE_pqcol"))
        .current_dir(d)
        .env("PQCOL_FIXTURES_DIR", fx_arg)
        .args(["gadget", "replicator", "--verify"])
        .output()
        .unwrap();
    assert_eq!(stdout(&first), stdout(&third));
    let repaired: Value = serde_json::from_str(&fs::read_to_string(&files[0]).unwrap()).unwrap();
    assert_eq!(repaired, entry);
}

#[test]
fn sweep_is_deterministic_and_agrees() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let run = || pqcol(d, &["--json", "--seed", "3", "sweep", "equivalence", "--max-vertices", "4", "--max-edges", "2"]);
    let a = run();
    let b = run();
    assert_eq!(code(&a), 0);
    assert_eq!(stdout(&a), stdout(&b));
    let v: Value = serde_json::from_str(&stdout(&a)).unwrap();
    assert_eq!(v["all_agree"], Value::Bool(true));
    assert_eq!(v["instances"], 8);
}

#[test]
fn usage_and_bound_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    assert_eq!(code(&pqcol(d, &["solve"])), 2);
    assert_eq!(code(&pqcol(d, &["prop", "check", "O", "missing.g6"])), 2);
    assert_eq!(code(&pqcol(d, &["--max-n", "12", "unique", "search", "--props", "O,T"])), 2);
    write(d, "bad.hyp", "3 1 3 1\n0 1 1\n");
    assert_eq!(code(&pqcol(d, &["reduce", "bad.hyp"])), 2);
    write(d, "wide.hyp", "4 2 4 1\n0 1 2 3\n");
    assert_eq!(code(&pqcol(d, &["reduce", "wide.hyp"])), 2);
}
