use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

fn kindred(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kindred"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn write(dir: &TempDir, name: &str, text: &str) -> String {
    let p = dir.path().join(name);
    fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

const DIGRAPH: &str = "kindred-graph 1\nkind directed\nnode 1\nnode 2\nedge 1 -> 2\n";

#[test]
fn order_unattributed_below_attributed() {
    let o = kindred(&["order", "unattributed", "attributed"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert_eq!(out.lines().next(), Some("≼"));
    assert!(out.contains("forward: [unattributed_to_attributed (Lemma 3)]"), "{out}");
    assert!(out.contains("backward: none"), "{out}");
}

#[test]
fn order_directed_attributed_equivalent_to_heterogeneous() {
    let o = kindred(&["order", "attributed+directed", "attributed+heterogeneous"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().next(), Some("≈"));
}

#[test]
fn unknown_kind_flag_is_a_usage_error() {
    let o = kindred(&["order", "directed,bogus", "attributed"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("bogus"));
    assert_eq!(kindred(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(kindred(&["verify", "--embedding", "nope"]).status.code(), Some(2));
}

#[test]
fn plan_prints_steps() {
    let o = kindred(&["plan", "hyper", "undirected,attributed"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o),
        "hyper remove hyper_to_directed (Lemma 1)\ndirected remove directed_to_undirected (Lemma 6)\n"
    );
    let o = kindred(&["plan", "directed", "directed"]);
    assert_eq!(stdout(&o), "");
}

#[test]
fn convert_to_attributed_blanks_everything() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "g.graph", DIGRAPH);
    let o = kindred(&["convert", &input, "--to", "attributed"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(
        stdout(&o),
        "kindred-graph 1\nkind directed,attributed\nnode 1 = σ\nnode 2 = σ\nedge 1 -> 2 = σ\n"
    );
}

#[test]
fn convert_then_invert_restores_the_file() {
    let dir = TempDir::new().unwrap();
    let text = "kindred-graph 1\nkind directed,hyper,attributed\nalphabet a\nnode 1 = a\nnode 2 = σ\nnode 3 = σ\nhyperedge {1:1, 2:1, 3:2} = a\n";
    let input = write(&dir, "h.graph", text);
    let chain = dir.path().join("c.chain");
    let converted = dir.path().join("out.graph");
    let o = kindred(&[
        "convert",
        &input,
        "--to",
        "undirected,attributed,hetero,dynamic",
        "--chain-out",
        chain.to_str().unwrap(),
        "-o",
        converted.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(Path::new(&chain).exists());
    let o = kindred(&["invert", converted.to_str().unwrap(), "--chain", chain.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(stdout(&o), text);
}

#[test]
fn invert_rejects_graphs_outside_the_image() {
    let dir = TempDir::new().unwrap();
    let chain = write(
        &dir,
        "c.chain",
        "kindred-chain 1\nsource directed\ntarget directed,attributed\nstep attributed add unattributed_to_attributed\n",
    );
    let g = write(&dir, "g.graph", "kindred-graph 1\nkind directed,attributed\nnode 1 = a\n");
    let o = kindred(&["invert", &g, "--chain", &chain]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("not in image"), "{}", stderr(&o));
}

#[test]
fn validate_reports_violations() {
    let dir = TempDir::new().unwrap();
    let good = write(&dir, "good.graph", DIGRAPH);
    let o = kindred(&["validate", &good]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "valid directed (3 records)\n");

    let bad = write(&dir, "bad.graph", "kindred-graph 1\nkind undirected\nnode 1\nnode 2\nedge 1 -> 2\n");
    let o = kindred(&["validate", &bad]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("bad.graph"));

    let broken = write(&dir, "broken.graph", "kindred-graph 1\nkind directed\nnode x\n");
    let o = kindred(&["validate", &broken]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("broken.graph:3:"), "{}", stderr(&o));

    let missing = dir.path().join("missing.graph");
    assert_eq!(kindred(&["validate", missing.to_str().unwrap()]).status.code(), Some(1));
}

#[test]
fn verify_single_embedding_exhaustively() {
    let o = kindred(&["verify", "--embedding", "directed_to_hyper", "--exhaustive"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let out = stdout(&o);
    assert!(out.starts_with("kindred-report 1\nembedding directed_to_hyper\nsource-kind directed\nmode exhaustive\n"));
    assert!(out.contains("verdict verified"));
}

#[test]
fn verify_fuzz_is_seeded() {
    let args = ["verify", "--embedding", "dynamic_to_static", "--fuzz", "200", "--seed", "11"];
    let a = kindred(&args);
    let b = kindred(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(stdout(&a), stdout(&b));
    assert!(stdout(&a).contains("mode fuzz seed 11 count 200"));
}

#[test]
fn verify_reports_lossy_expansion_as_failure() {
    let o = kindred(&["verify", "--embedding", "untagged_clique_expansion", "--kind", "undirected,hyper"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("verdict failed"));
}

#[test]
fn verify_rejects_unaccepted_kind() {
    let o = kindred(&["verify", "--embedding", "directed_to_undirected", "--kind", "undirected"]);
    assert_eq!(o.status.code(), Some(2));
}
