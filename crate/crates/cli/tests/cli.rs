use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;

use capgraph::{dset_witness, parse_graph, validate_nash, CapacitatedGraph, NashSubgraph, Witness};
use serde_json::Value;
use tempfile::TempDir;

const K3: &str = "capgraph 3 3\nk 0 2\nk 1 2\nk 2 2\ne 0 1\ne 0 2\ne 1 2\n";
const STAR: &str = "capgraph 4 3\nk 0 1\nk 1 1\nk 2 1\nk 3 1\ne 0 1\ne 0 2\ne 0 3\n";
const PATH: &str = "capgraph 4 3\nk 0 1\nk 1 1\nk 2 1\nk 3 1\ne 0 1\ne 1 2\ne 2 3\n";
const SAT: &str = "p cnf 4 2\n1 -2 3 0\n-1 2 4 0\n";
const UNSAT: &str = "p cnf 3 8\n1 2 3 0\n-1 2 3 0\n1 -2 3 0\n-1 -2 3 0\n1 2 -3 0\n-1 2 -3 0\n1 -2 -3 0\n-1 -2 -3 0\n";

struct Run {
    code: i32,
    report: Value,
    stderr: String,
}

fn file(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    fs::write(&p, text).unwrap();
    p
}

fn run(args: &[&str], cwd: &Path) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_capgraph")).args(args).current_dir(cwd).output().unwrap();
    let stdout = String::from_utf8(out.stdout).unwrap();
    Run {
        code: out.status.code().unwrap(),
        report: serde_json::from_str(&stdout).unwrap_or(Value::Null),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

fn subgraph(v: &Value) -> NashSubgraph {
    serde_json::from_value(v.clone()).unwrap()
}

fn graph(text: &str) -> CapacitatedGraph {
    parse_graph(text).unwrap()
}

#[test]
fn enumerate_k3() {
    let dir = TempDir::new().unwrap();
    file(&dir, "k3.g", K3);
    let r = run(&["enumerate", "k3.g"], dir.path());
    assert_eq!(r.code, 0);
    assert_eq!(r.report["command"], "enumerate");
    assert_eq!(r.report["result"]["count"], 3);
    assert_eq!(r.report["result"]["dsets"], serde_json::json!([[0], [1], [2]]));
    assert_eq!(r.report["budget"]["enumerate_cap"], 24);

    let r = run(&["enumerate", "k3.g", "--pruned", "--timeout", "5"], dir.path());
    assert_eq!(r.code, 0);
    assert_eq!(r.report["result"]["mode"], "pruned");
    assert_eq!(r.report["result"]["count"], 3);

    let r = run(&["enumerate", "k3.g", "--limit", "1"], dir.path());
    assert_eq!(r.code, 0);
    assert_eq!(r.report["result"]["complete"], false);
    assert!(r.stderr.contains("limit reached"));
}

#[test]
fn unique_nash_star() {
    let dir = TempDir::new().unwrap();
    file(&dir, "star.g", STAR);
    let r = run(&["unique-nash", "star.g"], dir.path());
    assert_eq!(r.code, 0);
    assert_eq!(r.report["result"]["unique"], true);
    assert_eq!(r.report["result"]["witness"], Value::Null);
}

#[test]
fn unique_dset_witness_revalidates() {
    let dir = TempDir::new().unwrap();
    file(&dir, "path.g", PATH);
    let g = graph(PATH);
    for method in ["auto", "ostar", "mstar", "enumerate"] {
        let r = run(&["unique-dset", "path.g", "--method", method], dir.path());
        assert_eq!(r.code, 0, "{method}");
        let result = &r.report["result"];
        assert_eq!(result["unique"], false, "{method}");
        assert_eq!(result["witness_valid"], true, "{method}");
        let witness: Witness = serde_json::from_value(result["witness"].clone()).unwrap();
        match witness {
            Witness::DSet(s) => assert!(dset_witness(&g, &s).is_some()),
            Witness::Pair(a, b) => assert!(validate_nash(&g, &a) && validate_nash(&g, &b)),
            Witness::Subgraph(h) => assert!(validate_nash(&g, &h)),
        }
    }
}

#[test]
fn unique_nash_witness_revalidates() {
    let dir = TempDir::new().unwrap();
    file(&dir, "path.g", PATH);
    let g = graph(PATH);
    let r = run(&["unique-nash", "path.g"], dir.path());
    assert_eq!(r.code, 0);
    assert_eq!(r.report["result"]["unique"], false);
    let witness: Witness = serde_json::from_value(r.report["result"]["witness"].clone()).unwrap();
    match witness {
        Witness::Pair(a, b) => assert!(validate_nash(&g, &a) && validate_nash(&g, &b)),
        Witness::Subgraph(h) => assert!(validate_nash(&g, &h)),
        Witness::DSet(_) => panic!("unique-nash reports subgraphs"),
    }
}

#[test]
fn construct_and_is_dset() {
    let dir = TempDir::new().unwrap();
    file(&dir, "k3.g", K3);
    let g = graph(K3);
    let r = run(&["construct", "k3.g"], dir.path());
    assert_eq!(r.code, 0);
    let h = subgraph(&r.report["result"]["subgraph"]);
    assert!(validate_nash(&g, &h));
    assert_eq!(r.report["result"]["valid"], true);

    let r = run(&["is-dset", "k3.g", "--set", "1"], dir.path());
    assert_eq!(r.report["result"]["is_dset"], true);
    let w = subgraph(&r.report["result"]["witness"]);
    assert!(validate_nash(&g, &w));
    assert_eq!(w.d_set, [1].into_iter().collect());

    let r = run(&["is-dset", "k3.g", "--set", "0,1"], dir.path());
    assert_eq!(r.code, 0);
    assert_eq!(r.report["result"]["is_dset"], false);
    assert_eq!(r.report["result"]["witness"], Value::Null);

    let r = run(&["is-dset", "k3.g", "--set", ""], dir.path());
    assert_eq!(r.code, 0);
    assert_eq!(r.report["result"]["is_dset"], false);

    let r = run(&["is-dset", "k3.g", "--set", "7"], dir.path());
    assert_eq!(r.code, 1);
    assert!(r.stderr.contains("out of range"));
}

#[test]
fn normalize_and_partition() {
    let dir = TempDir::new().unwrap();
    file(&dir, "g.g", "capgraph 3 2\nk 0 0\nk 1 0\nk 2 5\ne 0 1\ne 1 2\n");
    let r = run(&["normalize", "g.g", "-o", "n.g"], dir.path());
    assert_eq!(r.code, 0);
    assert_eq!(r.report["result"]["changed"], true);
    assert_eq!(r.report["result"]["edges_removed"], 1);
    let written = fs::read_to_string(dir.path().join("n.g")).unwrap();
    assert_eq!(r.report["result"]["graph"], written.as_str());
    let n = graph(&written);
    assert!(n.is_normalized());
    assert_eq!(n.kappa(2), 1);

    let r = run(&["partition", "n.g"], dir.path());
    assert_eq!(r.code, 0);
    assert_eq!(r.report["result"]["x"], serde_json::json!([0, 2]));
    assert_eq!(r.report["result"]["y"], serde_json::json!([1]));
    assert_eq!(r.report["result"]["z"], serde_json::json!([]));
    assert_eq!(r.report["result"]["xz_independent"], true);
}

#[test]
fn gadget_writes_graph_and_map() {
    let dir = TempDir::new().unwrap();
    file(&dir, "sat1.cnf", SAT);
    let r = run(&["gadget", "--k", "2", "--cnf", "sat1.cnf", "-o", "out.g"], dir.path());
    assert_eq!(r.code, 0);
    let g = graph(&fs::read_to_string(dir.path().join("out.g")).unwrap());
    assert_eq!(g.vertex_count(), 25 * 4 / 2 + 7 + 2);
    assert_eq!(r.report["result"]["vertices"], g.vertex_count());
    assert_eq!(r.report["result"]["regions"]["X*"], 5);
    let map = fs::read_to_string(dir.path().join("out.g.map")).unwrap();
    assert_eq!(map.lines().filter(|l| l.starts_with("region ")).count(), g.vertex_count());
    assert_eq!(map.lines().filter(|l| l.starts_with("var ")).count(), 4);
    assert_eq!(map.lines().filter(|l| l.starts_with("clause ")).count(), 2);

    let r = run(&["gadget", "--k", "3", "--cnf", "sat1.cnf", "-o", "out3.g"], dir.path());
    assert_eq!(r.code, 0);
    assert_eq!(r.report["result"]["variables"], 6);
}

#[test]
fn verify_reduction_both_directions() {
    let dir = TempDir::new().unwrap();
    file(&dir, "sat1.cnf", SAT);
    file(&dir, "unsat.cnf", UNSAT);
    for k in ["2", "3"] {
        let r = run(&["verify-reduction", "--k", k, "--cnf", "sat1.cnf"], dir.path());
        assert_eq!(r.code, 0);
        let result = &r.report["result"];
        assert_eq!(result["satisfiable"], true);
        assert_eq!(result["witness_valid"], true);
        assert_eq!(result["canonical_valid"], true);
        assert_eq!(result["unique_dset"], false);
        assert_eq!(result["consistent"], true);
    }

    let r = run(&["verify-reduction", "--k", "2", "--cnf", "unsat.cnf", "--timeout", "60"], dir.path());
    assert_eq!(r.code, 0);
    let result = &r.report["result"];
    assert_eq!(result["satisfiable"], false);
    assert_eq!(result["witness"], Value::Null);
    assert_ne!(result["unique_dset"], false);
    assert_eq!(result["consistent"], true);

    let r = run(&["verify-reduction", "--k", "2", "--cnf", "unsat.cnf", "--timeout", "0"], dir.path());
    assert_eq!(r.code, 0);
    assert_eq!(r.report["result"]["search_complete"], false);
    assert_eq!(r.report["result"]["unique_dset"], Value::Null);
}

#[test]
fn budget_exceeded_exits_2() {
    let dir = TempDir::new().unwrap();
    file(&dir, "k3.g", K3);
    let r = run(&["unique-dset", "k3.g", "--method", "enumerate", "--budget", "2"], dir.path());
    assert_eq!(r.code, 2);
    assert_eq!(r.report["budget_exceeded"], true);
    assert!(r.report["error"].as_str().unwrap().contains("cap is 2"));

    let r = run(&["enumerate", "k3.g", "--budget", "2"], dir.path());
    assert_eq!(r.code, 2);

    let r = run(&["enumerate", "k3.g", "--pruned", "--timeout", "0"], dir.path());
    assert_eq!(r.code, 2);
    assert_eq!(r.report["budget_exceeded"], true);
    assert_eq!(r.report["result"]["complete"], false);
}

#[test]
fn input_errors_exit_1() {
    let dir = TempDir::new().unwrap();
    file(&dir, "bad.g", "capgraph 2 1\nk 0 1\nk 1 x\ne 0 1\n");
    let r = run(&["construct", "bad.g"], dir.path());
    assert_eq!(r.code, 1);
    assert!(r.stderr.contains("line 3"), "{}", r.stderr);
    assert!(r.report["error"].as_str().unwrap().contains("line 3"));

    let r = run(&["construct", "missing.g"], dir.path());
    assert_eq!(r.code, 1);

    file(&dir, "bad.cnf", "p cnf 2 1\n1 3 0\n");
    let r = run(&["gadget", "--k", "2", "--cnf", "bad.cnf", "-o", "x.g"], dir.path());
    assert_eq!(r.code, 1);

    let r = run(&["unique-dset"], dir.path());
    assert_eq!(r.code, 1);
    let r = run(&["frobnicate"], dir.path());
    assert_eq!(r.code, 1);
}

#[test]
fn reports_are_deterministic() {
    let dir = TempDir::new().unwrap();
    file(&dir, "path.g", PATH);
    file(&dir, "sat1.cnf", SAT);
    let strip = |mut r: Run| {
        r.report.as_object_mut().unwrap().remove("elapsed_ms");
        serde_json::to_string(&r.report).unwrap()
    };
    for args in [
        &["unique-dset", "path.g"][..],
        &["unique-nash", "path.g"],
        &["construct", "path.g"],
        &["enumerate", "path.g", "--pruned"],
        &["verify-reduction", "--k", "2", "--cnf", "sat1.cnf"],
    ] {
        assert_eq!(strip(run(args, dir.path())), strip(run(args, dir.path())), "{args:?}");
    }
}
