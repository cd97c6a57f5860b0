//! Runs the built `septree` binary end to end.

mod common;

use std::collections::BTreeSet;
use std::io::Write;
use std::process::{Command, Output};

use common::*;
use septree::fixtures;
use septree::parse::to_edge_list;
use septree::treedec::DecompositionJson;
use septree::Graph;
use tempfile::NamedTempFile;

fn septree(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_septree")).args(args).output().unwrap()
}

fn file(text: &str) -> NamedTempFile {
    let mut f = NamedTempFile::new().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

fn graph_file(g: &Graph) -> NamedTempFile {
    file(&to_edge_list(g))
}

fn path(f: &NamedTempFile) -> &str {
    f.path().to_str().unwrap()
}

fn stdout(out: &Output) -> String {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn parts(json: &str, g: &Graph) -> Vec<BTreeSet<usize>> {
    let doc: DecompositionJson = serde_json::from_str(json).unwrap();
    let td = doc.to_decomposition(g).unwrap();
    let mut out: Vec<BTreeSet<usize>> = td.parts().iter().map(|p| p.iter().collect()).collect();
    out.sort();
    out
}

#[test]
fn decompose_then_verify() {
    let g = fixtures::three_blobs();
    let gf = graph_file(&g);
    let json = stdout(&septree(&["decompose", "--k", "2", path(&gf)]));
    assert_eq!(parts(&json, &g).len(), 7);
    let df = file(&json);
    let out = septree(&["verify", "--decomposition", path(&df), path(&gf)]);
    assert_eq!(out.status.code(), Some(0));

    let dot = stdout(&septree(&["decompose", "--k", "2", "--format", "dot", path(&gf)]));
    assert!(dot.starts_with("graph decomposition {"));
}

#[test]
fn output_is_deterministic_and_parallel_agrees() {
    let g = fixtures::tg3();
    let gf = graph_file(&g);
    let first = stdout(&septree(&["decompose", "--k", "4", path(&gf)]));
    let second = stdout(&septree(&["decompose", "--k", "4", path(&gf)]));
    let parallel = stdout(&septree(&["--parallel", "decompose", "--k", "4", path(&gf)]));
    assert_eq!(first, second);
    assert_eq!(first, parallel);
}

#[test]
fn relabelling_the_input_relabels_the_parts() {
    let mut rng = rng(31);
    for _ in 0..12 {
        let g = glued_cliques(&mut rng, 6, 10);
        let perm = random_permutation(&mut rng, g.n());
        let h = g.relabel(&perm);
        for k in ["2", "3"] {
            for strategy in ["|ext_r", "|loc_r", "|all_r"] {
                let (gf, hf) = (graph_file(&g), graph_file(&h));
                let pg = parts(
                    &stdout(&septree(&["decompose", "--k", k, "--strategy", strategy, path(&gf)])),
                    &g,
                );
                let ph = parts(
                    &stdout(&septree(&["decompose", "--k", k, "--strategy", strategy, path(&hf)])),
                    &h,
                );
                let mut mapped: Vec<BTreeSet<usize>> =
                    pg.iter().map(|p| p.iter().map(|&v| perm[v]).collect()).collect();
                mapped.sort();
                assert_eq!(mapped, ph, "{} k={k} {strategy}", edge_list(&g));
            }
        }
    }
}

#[test]
fn canon_check_reports_invariance() {
    let gf = graph_file(&fixtures::k4());
    let out = stdout(&septree(&["canon-check", "--k", "3", path(&gf)]));
    let doc: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(doc["automorphisms"], 24);
    assert_eq!(doc["invariant"], true);
}

#[test]
fn exit_codes() {
    let bad = file("3 1\n0 7\n");
    assert_eq!(septree(&["blocks", "--k", "2", path(&bad)]).status.code(), Some(2));

    let gf = graph_file(&fixtures::k4());
    let bad_strategy = septree(&["decompose", "--k", "2", "--strategy", "ext|ext", path(&gf)]);
    assert_eq!(bad_strategy.status.code(), Some(1));
    assert!(!bad_strategy.stderr.is_empty());

    let big = graph_file(&fixtures::grid(5, 5));
    let capped = septree(&["--max-vertices", "10", "profiles", "--k", "2", path(&big)]);
    assert_eq!(capped.status.code(), Some(3));

    let broken = file(r#"{"nodes":[{"id":0,"part":[0,1]}],"edges":[]}"#);
    let out = septree(&["verify", "--decomposition", path(&broken), path(&gf)]);
    assert_eq!(out.status.code(), Some(4));
}
