use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_polyprod"))
}

fn write(name: &str, text: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("polyprod-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut all = vec!["--format", "json"];
    all.extend_from_slice(args);
    let out = run(&all);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn homology_of_triangle_boundary() {
    let f = write("tri.txt", "m=3\nfacets=1 2,2 3,1 3\n");
    let v = json(&["homology", "--in", f.to_str().unwrap()]);
    let groups = v["groups"].as_array().unwrap();
    let rows: Vec<(u64, u64)> = groups
        .iter()
        .map(|g| (g["degree"].as_u64().unwrap(), g["free_rank"].as_u64().unwrap()))
        .collect();
    assert_eq!(rows, vec![(0, 1), (1, 1)]);
    assert!(groups.iter().all(|g| g["torsion"].as_array().unwrap().is_empty()));
}

#[test]
fn bad_input_exits_with_two() {
    let f = write("bad.txt", "m=3\nfacets=1 7\n");
    assert_eq!(run(&["homology", "--in", f.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(
        run(&["homology", "--in", "/nonexistent/polyprod.txt"]).status.code(),
        Some(2)
    );
    let g = write("tri2.txt", "m=3\nfacets=1 2,2 3,1 3\n");
    assert_eq!(
        run(&["homology", "--in", g.to_str().unwrap(), "--coeffs", "banana"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn oversized_ground_set_is_refused() {
    let f = write("big.txt", "m=40\nfacets=1 2\n");
    let code = run(&["total", "--in", f.to_str().unwrap()]).status.code();
    assert!(code == Some(2) || code == Some(3), "got {code:?}");
}

#[test]
fn json_output_is_deterministic() {
    let f = write("sq.txt", "m=4\nfacets=1 2,2 3,3 4,1 4\n");
    let p = f.to_str().unwrap();
    for args in [
        vec!["total", "--in", p, "--universe", "lm"],
        vec!["ring", "--in", p],
        vec!["dual", "--in", p, "--verify"],
        vec!["verify", "--suite", "duality", "--m", "4", "--n", "20", "--seed", "3"],
    ] {
        assert_eq!(json(&args), json(&args));
    }
}

#[test]
fn hochster_suite_with_custom_parameters() {
    let out = run(&["verify", "--suite", "hochster", "--m", "4", "--n", "100", "--seed", "7"]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stdout).contains("PASS"));
}

#[test]
fn dual_of_square_with_certificates() {
    let f = write("sq2.txt", "m=4\nfacets=1 2,2 3,3 4,1 4\n");
    let v = json(&[
        "dual",
        "--in",
        f.to_str().unwrap(),
        "--verify",
        "--coeffs",
        "f2",
        "--explicit",
    ]);
    let certs = v["certificates"].as_array().unwrap();
    // pairs with ω ≠ ∅ and σ ∩ ω = ∅ on four vertices
    assert_eq!(certs.len(), 3usize.pow(4) - 2usize.pow(4));
    assert!(certs.iter().all(|c| c["matched"] == true));
    assert!(certs.iter().all(|c| c["matrices"]
        .as_array()
        .unwrap()
        .iter()
        .all(|m| m["invertible"] == true)));
}

#[test]
fn explicit_needs_a_field() {
    let f = write("sq3.txt", "m=4\nfacets=1 2,2 3,3 4,1 4\n");
    assert_eq!(
        run(&["dual", "--in", f.to_str().unwrap(), "--verify", "--explicit"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn join_blocks_match_direct_computation() {
    let f = write("tri3.txt", "m=3\nfacets=1 2,2 3,1 3\n");
    let v = json(&["join", "--in", f.to_str().unwrap(), "--pair", "disk1", "--blocks", "xm"]);
    assert!(v["blocks"].is_array());
}

#[test]
fn table_and_csv_render() {
    let f = write("tri4.txt", "m=3\nfacets=1 2,2 3,1 3\n");
    let t = run(&["decompose", "--in", f.to_str().unwrap(), "--pair", "disk1"]);
    assert!(t.status.success());
    assert!(String::from_utf8_lossy(&t.stdout).contains("total"));
    let c = run(&["--format", "csv", "hochster", "--in", f.to_str().unwrap()]);
    assert!(String::from_utf8_lossy(&c.stdout).contains("i,multidegree,dim"));
}
