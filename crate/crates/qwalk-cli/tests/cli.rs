use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

const NAMES: [&str; 22] = [
    "line-walk",
    "hadamard-line",
    "entropy-series",
    "decoherence-sweep",
    "absorbing-boundary",
    "complete-graph-search",
    "star-search",
    "grover",
    "fixed-point",
    "szegedy-spectrum",
    "marked-gap",
    "subset-find",
    "cost-table",
    "ctqw-cycle",
    "ctqw-hypercube",
    "glued-trees",
    "analog-search",
    "nand",
    "mcmc-partition",
    "annealing",
    "mixing",
    "hitting",
];

fn qwalk(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qwalk")).args(args).output().expect("binary runs")
}

fn run_in(dir: &Path, name: &str, extra: &[&str]) -> Output {
    let out = dir.to_str().unwrap();
    let mut args = vec!["run", name, "--out", out];
    args.extend_from_slice(extra);
    qwalk(&args)
}

fn meta(dir: &Path, name: &str) -> Value {
    serde_json::from_str(&fs::read_to_string(dir.join(format!("{name}.json"))).unwrap()).unwrap()
}

#[test]
fn list_names_every_experiment_with_an_anchor() {
    let o = qwalk(&["list", "--json"]);
    assert!(o.status.success());
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    let names: Vec<&str> = v.as_array().unwrap().iter().map(|e| e["name"].as_str().unwrap()).collect();
    assert_eq!(names, NAMES);
    for e in v.as_array().unwrap() {
        assert!(!e["anchor"].as_str().unwrap().is_empty());
    }
    let text = String::from_utf8(qwalk(&["list"]).stdout).unwrap();
    assert!(NAMES.iter().all(|n| text.contains(n)) && text.contains("anchor:"));
}

#[test]
fn bad_input_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(run_in(dir.path(), "no-such-walk", &[]).status.code(), Some(2));
    assert_eq!(run_in(dir.path(), "grover", &["--param", "bogus=1"]).status.code(), Some(2));
    assert_eq!(run_in(dir.path(), "grover", &["--param", "n=ten"]).status.code(), Some(2));
    assert_eq!(run_in(dir.path(), "nand", &[]).status.code(), Some(2));
    assert_eq!(run_in(dir.path(), "subset-find", &["-p", "a=3", "-p", "b=3"]).status.code(), Some(2));
    // deterministic unless the random chain is asked for
    assert_eq!(run_in(dir.path(), "szegedy-spectrum", &[]).status.code(), Some(2));
    assert!(run_in(dir.path(), "szegedy-spectrum", &["-p", "chain=complete"]).status.success());
}

#[test]
fn hadamard_line_output() {
    let dir = tempfile::tempdir().unwrap();
    let o = run_in(dir.path(), "hadamard-line", &["-p", "m=20"]);
    assert!(o.status.success());
    let csv = fs::read_to_string(dir.path().join("hadamard-line.csv")).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("position,probability"));
    let total: f64 = lines.map(|l| l.split(',').nth(1).unwrap().parse::<f64>().unwrap()).sum();
    assert!((total - 1.0).abs() < 1e-12);
    let m = meta(dir.path(), "hadamard-line");
    assert_eq!(m["name"], "hadamard-line");
    assert_eq!(m["params"]["m"], 20);
    assert!(m["seed"].is_null() && m["started"].is_string() && m["duration_s"].is_number());
    assert!(!m["anchor"].as_str().unwrap().is_empty());
    assert_eq!(m["outputs"].as_array().unwrap().len(), 1);
}

#[test]
fn absorbing_boundary_reaches_two_over_pi() {
    let dir = tempfile::tempdir().unwrap();
    assert!(run_in(dir.path(), "absorbing-boundary", &["-p", "m_max=4000"]).status.success());
    let r = meta(dir.path(), "absorbing-boundary")["results"].clone();
    let total = r["final_cumulative"].as_f64().unwrap();
    assert!((total - 2.0 / std::f64::consts::PI).abs() < 1e-3, "{total}");
}

#[test]
fn seeded_runs_are_reproducible() {
    let (a, b) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    let args = ["--seed", "9", "-p", "samples=500"];
    assert!(run_in(a.path(), "mcmc-partition", &args).status.success());
    assert!(run_in(b.path(), "mcmc-partition", &args).status.success());
    let read = |d: &Path| fs::read(d.join("mcmc-partition.csv")).unwrap();
    assert_eq!(read(a.path()), read(b.path()));
    assert!(run_in(b.path(), "mcmc-partition", &["--seed", "10", "-p", "samples=500"]).status.success());
    assert_ne!(read(a.path()), read(b.path()));
}

#[test]
fn params_file_and_flag_override() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("grover.params");
    fs::write(&file, "# grover\nn = 256\nk=2\nseed=4\n").unwrap();
    let f = file.to_str().unwrap();
    assert!(run_in(dir.path(), "grover", &["--params-file", f, "-p", "k=4"]).status.success());
    let m = meta(dir.path(), "grover");
    assert_eq!(m["params"]["n"], 256);
    assert_eq!(m["params"]["k"], 4);
    assert_eq!(m["seed"], 4);
    assert!(run_in(dir.path(), "grover", &["--params-file", f, "--seed", "5"]).status.success());
    assert_eq!(meta(dir.path(), "grover")["seed"], 5);
}

#[test]
fn every_experiment_runs_small() {
    let small: [(&str, &[&str]); 22] = [
        ("line-walk", &["-p", "m=10"]),
        ("hadamard-line", &["-p", "m=10", "-p", "q=0.5", "-p", "sigma=pi"]),
        ("entropy-series", &["-p", "m_max=10"]),
        ("decoherence-sweep", &["-p", "m=8", "-p", "measurement=coin"]),
        ("absorbing-boundary", &["-p", "m_max=50"]),
        ("complete-graph-search", &["-p", "n=20", "-p", "k=2"]),
        ("star-search", &["-p", "n=40"]),
        ("grover", &["-p", "n=64", "-p", "steps=3"]),
        ("fixed-point", &["-p", "n=16", "-p", "levels=3", "-p", "base=identity"]),
        ("szegedy-spectrum", &["-p", "n=5", "--seed", "3"]),
        ("marked-gap", &["-p", "n=8", "-p", "marked=1,3"]),
        ("subset-find", &["-p", "n=6", "-p", "q=3", "-p", "a=0", "-p", "b=5"]),
        ("cost-table", &["-p", "variant=clique", "-p", "points=11"]),
        ("ctqw-cycle", &["-p", "n=100", "-p", "t=3", "-p", "max_offset=10"]),
        ("ctqw-hypercube", &["-p", "n=3", "-p", "points=11"]),
        ("glued-trees", &["-p", "kind=plain", "-p", "n=3"]),
        ("analog-search", &["-p", "n=16", "-p", "m=2", "-p", "points=11"]),
        ("nand", &["-p", "depth=3", "-p", "trees=5", "-p", "instance=hard", "--seed", "1"]),
        ("mcmc-partition", &["-p", "samples=200", "--seed", "1"]),
        ("annealing", &["-p", "model=quadratic", "-p", "n=16", "-p", "runs=2", "--seed", "1"]),
        ("mixing", &["-p", "graph=cycle:5", "-p", "t_max=50"]),
        ("hitting", &["-p", "graph=cycle:6", "-p", "target=3", "-p", "horizon=20"]),
    ];
    let dir = tempfile::tempdir().unwrap();
    for (name, args) in small {
        let o = run_in(dir.path(), name, args);
        assert!(o.status.success(), "{name}: {}", String::from_utf8_lossy(&o.stderr));
        let m = meta(dir.path(), name);
        for p in m["outputs"].as_array().unwrap() {
            let csv = fs::read_to_string(p.as_str().unwrap()).unwrap();
            assert!(csv.lines().count() >= 2, "{name}: empty table");
        }
    }
    assert_eq!(small.map(|s| s.0), NAMES);
}
