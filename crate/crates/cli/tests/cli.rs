//! End-to-end exercises of the command-line surface: conversions,
//! involutions, duals, flips, rotations, exit codes and the cache.

use std::io::Write;
use std::process::{Command, Output, Stdio};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_prograph"))
}

fn run_with_stdin(args: &[&str], input: &str) -> Output {
    let mut child = bin()
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("spawn");
    child
        .stdin
        .as_mut()
        .unwrap()
        .write_all(input.as_bytes())
        .unwrap();
    child.wait_with_output().expect("wait")
}

fn stdout_str(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).trim().to_string()
}

const MAX2: &str = r#"{"n":2,"rows":[[1,3],[2,5],[4,6]]}"#;

#[test]
fn count_matches_published_values() {
    let out = bin().args(["count", "--n", "3"]).output().unwrap();
    assert_eq!(stdout_str(&out), "42");
    let out = bin().args(["count", "--n", "6"]).output().unwrap();
    assert_eq!(stdout_str(&out), "87516");
    let out = bin()
        .args(["count", "--n", "6", "--sequence", "a274969"])
        .output()
        .unwrap();
    assert_eq!(stdout_str(&out), "4488");
}

#[test]
fn convert_roundtrip_through_every_encoding() {
    let p = run_with_stdin(&["convert", "--to", "prographs"], MAX2);
    assert!(p.status.success());
    let tri = run_with_stdin(&["convert", "--to", "triangulations"], &stdout_str(&p));
    assert!(tri.status.success());
    let back = run_with_stdin(&["convert", "--to", "tableaux"], &stdout_str(&tri));
    assert!(back.status.success());
    assert_eq!(stdout_str(&back), MAX2);
}

#[test]
fn involution_fixes_the_symmetric_tableau() {
    let out = run_with_stdin(&["involution"], MAX2);
    assert!(out.status.success());
    assert_eq!(stdout_str(&out), MAX2);
}

#[test]
fn rotation_and_flip_agree_through_duality() {
    let p = stdout_str(&run_with_stdin(&["convert", "--to", "prographs"], MAX2));
    let rotated = run_with_stdin(&["rotate", "--edge", "1", "--rule", "A"], &p);
    assert!(rotated.status.success());
    let rotated_tab =
        stdout_str(&run_with_stdin(&["convert", "--to", "tableaux"], &stdout_str(&rotated)));

    let tri = stdout_str(&run_with_stdin(&["dual"], &p));
    let flipped = run_with_stdin(&["flip", "--edge", "1"], &tri);
    assert!(flipped.status.success());
    let flipped_prograph = stdout_str(&run_with_stdin(&["dual"], &stdout_str(&flipped)));
    let flipped_tab =
        stdout_str(&run_with_stdin(&["convert", "--to", "tableaux"], &flipped_prograph));
    assert_eq!(rotated_tab, flipped_tab);
    assert_eq!(rotated_tab, r#"{"n":2,"rows":[[1,2],[3,5],[4,6]]}"#);
}

#[test]
fn lattice_check_output() {
    let out = bin().args(["lattice-check", "--n", "2"]).output().unwrap();
    assert!(out.status.success());
    assert_eq!(stdout_str(&out), "lattice: true");
    let out = bin().args(["lattice-check", "--n", "3"]).output().unwrap();
    assert!(out.status.success());
    let text = stdout_str(&out);
    assert!(text.starts_with("lattice: false"));
    assert!(text.contains("witness"));
}

#[test]
fn exit_codes_distinguish_usage_and_domain_errors() {
    // malformed JSON -> usage error, exit 2, message names the problem
    let out = run_with_stdin(&["convert", "--to", "prographs"], "{\"n\": 2}");
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("rows") || err.contains("operators") || err.contains("triangles"));

    // domain error: unflippable edge -> exit 1
    let p = stdout_str(&run_with_stdin(&["convert", "--to", "prographs"], MAX2));
    let tri = stdout_str(&run_with_stdin(&["dual"], &p));
    let root_flip = run_with_stdin(&["flip", "--edge", "6"], &tri);
    assert_eq!(root_flip.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&root_flip.stderr).contains("root"));

    // unknown flag -> clap usage error, exit 2
    let out = bin().args(["count", "--frobnicate"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn enumerate_uses_and_fills_the_cache() {
    let dir = std::env::temp_dir().join(format!("prograph-cache-{}", std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);
    let run = || {
        bin()
            .args([
                "enumerate",
                "--family",
                "prographs",
                "--n",
                "3",
                "--cache-dir",
                dir.to_str().unwrap(),
            ])
            .output()
            .unwrap()
    };
    let first = run();
    assert!(first.status.success());
    assert!(dir.join("prographs-3.ndjson").exists());
    let second = run();
    assert_eq!(first.stdout, second.stdout);
    assert_eq!(
        String::from_utf8_lossy(&first.stdout).lines().count(),
        42
    );
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn seeded_sample_is_deterministic() {
    let sample = |seed: &str| {
        stdout_str(
            &bin()
                .args(["enumerate", "--family", "tableaux", "--n", "3", "--seed", seed])
                .output()
                .unwrap(),
        )
    };
    assert_eq!(sample("42"), sample("42"));
}

#[test]
fn glue_size_mismatch_is_a_domain_error() {
    let out = run_with_stdin(
        &["glue"],
        r#"{"product_tree": {"left":null,"right":null}, "coproduct_tree": null}"#,
    );
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("size"));
}

#[test]
fn export_emits_diagram_sources() {
    let out = bin()
        .args(["export", "--kind", "poset", "--n", "2", "--format", "dot"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = stdout_str(&out);
    assert!(text.starts_with("digraph"));
    assert_eq!(text.matches(" -> ").count(), 6, "six covers");

    let out = bin()
        .args(["export", "--kind", "gallery", "--n", "2", "--format", "tikz"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = stdout_str(&out);
    assert_eq!(text.matches("begin{tikzpicture}").count(), 10, "5 prographs + 5 duals");
}

#[test]
fn mirrored_rotation_is_the_conjugated_rule() {
    // Mirrored rules reverse the orientation: the minimum ascends.
    let min = r#"{"n":2,"rows":[[1,2],[3,4],[5,6]]}"#;
    let p = stdout_str(&run_with_stdin(&["convert", "--to", "prographs"], min));
    let succ = run_with_stdin(&["successors", "--mirror"], &p);
    assert!(succ.status.success());
    let arr: serde_json::Value = serde_json::from_str(&stdout_str(&succ)).unwrap();
    assert_eq!(arr.as_array().unwrap().len(), 3, "the old minimum gains three mirrored steps");
}
