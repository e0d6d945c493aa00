use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn freedyn(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_freedyn"))
        .args(args)
        .env_remove("FREEDYN_CONFIG")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", stdout(o)))
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("freedyn-cli-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    fs::write(&path, contents).unwrap();
    path
}

const PHI1: &str = "\
alphabet: a b c d
map a -> a
map b -> b a
map c -> c a^2
map d -> d c
inv a -> a
inv b -> b a^-1
inv c -> c a^-2
inv d -> d a^2 c^-1
fix: a; b a b^-1; c a c^-1
seeds: b; b d^-1
";

#[test]
fn iterate_examples() {
    let o = freedyn(&["iterate", "phi_k:k=1", "b d^-1", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "b c^-2 d^-1\n");
    assert_eq!(stdout(&freedyn(&["iterate", "phi_k:k=1", "b d^-1", "0"])), "b d^-1\n");
    assert_eq!(
        stdout(&freedyn(&["iterate", "phi_k:k=1", "b d^-1", "-3"])),
        "b a^-3 c a^-6 c a^-4 c a^-2 d^-1\n"
    );
    let v = json(&freedyn(&["iterate", "phi_k:k=1", "d", "3", "--json"]));
    assert_eq!(v["word"], "d c^2 a^2 c a^4");
    assert_eq!(v["length"], 10);
}

#[test]
fn iterate_reports_budget_overflow() {
    let o = freedyn(&["iterate", "beta:N=6,theta=2", "e", "40", "--max-len", "1000"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("1000"));
}

#[test]
fn automorphism_files_and_specs_agree() {
    let path = scratch("phi1.aut", PHI1);
    let from_file = freedyn(&["iterate", path.to_str().unwrap(), "b d^-1", "4"]);
    let from_spec = freedyn(&["iterate", "phi_k:k=1", "b d^-1", "4"]);
    assert_eq!(from_file.status.code(), Some(0));
    assert_eq!(stdout(&from_file), stdout(&from_spec));
}

#[test]
fn omega_examples() {
    let v = json(&freedyn(&["omega", "phi_k:k=2", "c"]));
    assert_eq!(v["kind"], "rational");
    assert_eq!(v["head"], "c");
    assert_eq!(v["period"], "a");
    let v = json(&freedyn(&["omega", "phi_k:k=2", "c", "--backward"]));
    assert_eq!(v["period"], "a^-1");
    let v = json(&freedyn(&["omega", "phi_k:k=2", "a"]));
    assert_eq!(v["kind"], "fixed-element");
    let v = json(&freedyn(&["omega", "phi_k:k=2", "d"]));
    assert_eq!(v["kind"], "prefix-approx");
    assert!(v["prefix"].as_str().unwrap().starts_with("d c^2 a^3"));
}

#[test]
fn parabolic_exit_codes() {
    let o = freedyn(&["parabolic", "phi_k:k=1", "b d^-1"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["verdict"], "parabolic");
    assert_eq!(v["point"]["text"], "b (a^-1)^inf");
    assert_eq!(freedyn(&["parabolic", "phi_k:k=1", "d"]).status.code(), Some(1));
    let fixed = freedyn(&["parabolic", "phi_k:k=1", "a"]);
    assert_eq!(fixed.status.code(), Some(1));
    assert_eq!(json(&fixed)["verdict"], "not-parabolic");
    let starved = freedyn(&["parabolic", "phi_k:k=1", "b d^-1", "--max-iter", "5"]);
    assert_eq!(starved.status.code(), Some(2));
}

#[test]
fn config_file_from_environment() {
    let cfg = scratch("budget.toml", "max_iterations = 5\n");
    let o = Command::new(env!("CARGO_BIN_EXE_freedyn"))
        .args(["parabolic", "phi_k:k=1", "b d^-1"])
        .env("FREEDYN_CONFIG", &cfg)
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
    let o = Command::new(env!("CARGO_BIN_EXE_freedyn"))
        .args(["parabolic", "phi_k:k=1", "b d^-1", "--max-iter", "300"])
        .env("FREEDYN_CONFIG", &cfg)
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    let bad = scratch("bad.toml", "max_iter = 5\n");
    let o = Command::new(env!("CARGO_BIN_EXE_freedyn"))
        .args(["parabolic", "phi_k:k=1", "b d^-1"])
        .env("FREEDYN_CONFIG", &bad)
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn graph_shapes() {
    let v = json(&freedyn(&["graph", "phi_k:k=1"]));
    assert_eq!(v["vertices"].as_array().unwrap().len(), 8);
    assert_eq!(v["edges"].as_array().unwrap().len(), 7);
    assert_eq!(v["components"], 3);
    assert_eq!(v["parabolic_loop"], "b (a^-1)^inf");

    let v = json(&freedyn(&["graph", "twist:n=3,k=1"]));
    assert_eq!(v["vertices"].as_array().unwrap().len(), 2);
    assert_eq!(v["edges"].as_array().unwrap().len(), 2);
    assert_eq!(v["parabolic_loop"], Value::Null);

    let v = json(&freedyn(&["graph", "inner:u=a"]));
    assert_eq!(v["vertices"].as_array().unwrap().len(), 2);
    assert_eq!(v["edges"].as_array().unwrap().len(), 1);
}

#[test]
fn graph_seeds_and_dot_output() {
    let v = json(&freedyn(&["graph", "phi_k:k=1", "--seeds", "b; b d^-1"]));
    assert_eq!(v["vertices"].as_array().unwrap().len(), 2);
    let dot = scratch("fig2.dot", "");
    let o = freedyn(&["graph", "phi_k:k=1", "--dot", dot.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let text = fs::read_to_string(&dot).unwrap();
    assert!(text.starts_with("digraph dynamics {"));
    assert!(text.contains("[label=\"b d^-1\"]"));
    let printed = stdout(&freedyn(&["graph", "phi_k:k=1", "--dot", "-"]));
    assert_eq!(printed, text);
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["graph", "phi_k:k=2"][..],
        &["graph", "twist:n=2,k=-1", "--dot", "-"][..],
        &["parabolic", "phi_k:k=3", "b d^-1"][..],
    ] {
        assert_eq!(freedyn(args).stdout, freedyn(args).stdout, "{args:?}");
    }
}

#[test]
fn abelianize_examples() {
    let v = json(&freedyn(&["abelianize", "phi_k:k=1", "--power", "2"]));
    assert_eq!(v["rows"][0][3], 2);
    assert_eq!(v["rows"][0][2], 4);
    let v = json(&freedyn(&["abelianize", "identity:N=3"]));
    assert_eq!(v["rows"], serde_json::json!([[1, 0, 0], [0, 1, 0], [0, 0, 1]]));
    let inv = json(&freedyn(&["abelianize", "phi_k:k=1", "--power", "-1"]));
    assert_eq!(inv["rows"][0][1], -1);
}

#[test]
fn twist_commands() {
    assert_eq!(stdout(&freedyn(&["twist-classify", "3", "1"])), "semi-north-south\n");
    assert_eq!(stdout(&freedyn(&["twist-classify", "2", "-1"])), "north-south\n");
    assert_eq!(stdout(&freedyn(&["twist-classify", "2", "2"])), "two-component\n");
    assert_eq!(freedyn(&["twist-classify", "0", "1"]).status.code(), Some(3));

    let v = json(&freedyn(&["twist-reduce", "a^3", "2", "--json"]));
    assert_eq!(v["status"], "elliptic");
    assert_eq!(v["k"], 3);
    let o = freedyn(&["twist-reduce", "b", "1", "--bound", "3"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains("unresolved"));
}

#[test]
fn growth_and_period() {
    let v = json(&freedyn(&["growth", "phi_k:k=1", "d"]));
    assert_eq!(v["class"], "polynomial");
    let o = freedyn(&["period", "sigma", "b"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["period"], 2);
}

#[test]
fn repro_matches_goldens() {
    let o = freedyn(&["repro", "all"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert_eq!(stdout(&o).lines().count(), 8);
    let fig5 = freedyn(&["repro", "fig5"]);
    assert_eq!(fig5.status.code(), Some(0));
    assert!(stdout(&fig5).contains("2 vertices, 2 edges"));
    assert!(stdout(&freedyn(&["repro", "--list"])).contains("sec2"));
    assert_eq!(freedyn(&["repro", "fig9"]).status.code(), Some(3));
}

#[test]
fn explore_runs() {
    let o = freedyn(&["explore", "--samples", "2", "--moves", "3"]);
    assert!(matches!(o.status.code(), Some(0..=2)));
    let v = json(&o);
    assert_eq!(v["seeds_tested"], 2 * 36);
}

#[test]
fn input_errors_exit_three() {
    for args in [
        &["iterate", "nope:k=1", "a", "1"][..],
        &["iterate", "phi_k:k=1", "x", "1"][..],
        &["iterate", "phi_k:k=1", "a^", "1"][..],
        &["omega", "phi_k:k=1", "b", "--prefix", "0"][..],
        &["graph", "phi_k:k=1", "--seeds", "e"][..],
    ] {
        let o = freedyn(args);
        assert_eq!(o.status.code(), Some(3), "{args:?}");
        assert!(String::from_utf8_lossy(&o.stderr).starts_with("error:"), "{args:?}");
    }
    let bad = scratch("bad.aut", &PHI1.replace("inv b -> b a^-1", "inv b -> b a"));
    assert_eq!(freedyn(&["iterate", bad.to_str().unwrap(), "a", "1"]).status.code(), Some(3));
}
