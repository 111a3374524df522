use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

const DIAMOND: &str = "p mve 4 4\ns 1\nt 4\ne 1 2 1\ne 2 4 1\ne 1 3 1\ne 3 4 1\n";

fn mve(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mve")).args(args).output().expect("binary runs")
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_owned()
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("solve prints JSON")
}

fn k5() -> String {
    let mut text = String::from("p mve 5 10\ns 1\nt 2\n");
    for u in 1..=5 {
        for v in u + 1..=5 {
            text += &format!("e {u} {v} 1\n");
        }
    }
    text
}

#[test]
fn diamond_min_cost() {
    let dir = tempfile::tempdir().unwrap();
    let file = write(dir.path(), "diamond.txt", DIAMOND);
    let report = json(&mve(&["solve", &file, "--variant", "mincost", "--ell", "3"]));
    assert_eq!(report["answer"], 2);
    assert_eq!(report["distance_after"], "infinite");
    assert_eq!(report["solution_edges"].as_array().unwrap().len(), 2);
}

#[test]
fn k5_with_three_deletions_stays_short() {
    let dir = tempfile::tempdir().unwrap();
    let file = write(dir.path(), "k5.txt", &k5());
    let report = json(&mve(&["solve", &file, "--ell", "3", "--k", "3"]));
    assert_eq!(report["answer"], "no");
    assert_eq!(report["algorithm"], "complete");
    let report = json(&mve(&["solve", &file, "--ell", "3", "--k", "4"]));
    assert_eq!(report["answer"], "yes");
}

#[test]
fn bruteforce_and_searchtree_agree_on_generated_instances() {
    for seed in 0..8 {
        let seed = seed.to_string();
        let answer = |alg: &str| {
            let out = mve(&["solve", "--family", "tree-plus-f-edges", "--seed", &seed, "--alg", alg, "--omit-timing"]);
            json(&out)["answer"].clone()
        };
        assert_eq!(answer("bruteforce"), answer("searchtree"), "seed {seed}");
    }
}

#[test]
fn verify_reports_each_violation() {
    let dir = tempfile::tempdir().unwrap();
    let inst = write(dir.path(), "diamond.txt", &format!("# k 2\n# ell 3\n{DIAMOND}"));
    let check = |solution: &str| {
        let sol = write(dir.path(), "sol.json", solution);
        let out = mve(&["verify", &inst, &sol]);
        (out.status.code(), String::from_utf8_lossy(&out.stdout).trim().to_owned())
    };
    assert_eq!(check(r#"{"solution_edges": [1, 3]}"#), (Some(0), "PASS".into()));
    let (code, text) = check(r#"{"solution_edges": [1, 9]}"#);
    assert_eq!(code, Some(1));
    assert!(text.starts_with("FAIL EdgeNotInGraph"), "{text}");
    let (code, text) = check(r#"{"solution_edges": [1]}"#);
    assert_eq!(code, Some(1));
    assert!(text.starts_with("FAIL DistanceTooSmall"), "{text}");
    let (code, text) = check(r#"{"solution_edges": [1, 2, 3]}"#);
    assert_eq!(code, Some(1));
    assert!(text.starts_with("FAIL OverBudget"), "{text}");
}

#[test]
fn solve_output_verifies() {
    let dir = tempfile::tempdir().unwrap();
    let gen = mve(&["gen", "cluster-plus-x", "--seed", "3", "--k", "2"]);
    assert!(gen.status.success());
    let inst = write(dir.path(), "cluster.txt", &String::from_utf8(gen.stdout).unwrap());
    let out = mve(&["solve", &inst, "--omit-timing"]);
    let sol = write(dir.path(), "sol.json", &String::from_utf8(out.stdout.clone()).unwrap());
    let verdict = json(&out)["answer"].clone();
    let check = mve(&["verify", &inst, &sol]);
    assert_eq!(check.status.code(), Some(if verdict == "yes" { 0 } else { 1 }));
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let file = write(dir.path(), "diamond.txt", DIAMOND);
    assert_eq!(mve(&["solve", &file, "--alg", "greedy"]).status.code(), Some(2));
    assert_eq!(mve(&["solve", &file, "--alg", "nonsense"]).status.code(), Some(2));
    let missing = dir.path().join("missing.txt");
    assert_eq!(mve(&["solve", missing.to_str().unwrap()]).status.code(), Some(3));
    let bad = write(dir.path(), "bad.txt", "p mve 2 1\ns 1\nt 2\ne 1 1 1\n");
    let out = mve(&["solve", &bad]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 4"));
}

#[test]
fn bench_tables() {
    let dir = tempfile::tempdir().unwrap();
    let empty = mve(&["bench", dir.path().to_str().unwrap()]);
    assert!(empty.status.success());
    assert_eq!(String::from_utf8(empty.stdout).unwrap().lines().count(), 1);

    for seed in 0..10 {
        let out = dir.path().join(format!("tree{seed}.txt"));
        let gen = mve(&["gen", "tree-plus-f-edges", "--seed", &seed.to_string(), "--n", "30", "--f", "4", "-o", out.to_str().unwrap()]);
        assert!(gen.status.success());
    }
    let out = mve(&["bench", dir.path().to_str().unwrap(), "--algs", "searchtree,bruteforce", "--omit-timing"]);
    assert!(out.status.success());
    let mut reader = csv::Reader::from_reader(out.stdout.as_slice());
    let headers = reader.headers().unwrap().clone();
    let col = |name: &str| headers.iter().position(|h| h == name).unwrap();
    let rows: Vec<csv::StringRecord> = reader.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 20);
    for pair in rows.chunks(2) {
        assert_eq!(&pair[0][col("answer")], &pair[1][col("answer")]);
        assert_eq!(&pair[0][col("kernel_within_bound")], "true");
        let f: usize = pair[0][col("feedback_edges")].parse().unwrap();
        let vertices: usize = pair[0][col("vertices_after")].parse().unwrap();
        let edges: usize = pair[0][col("edges_after")].parse().unwrap();
        assert!(vertices <= 5 * f + 2 && edges <= 6 * f + 2);
    }
    let text = mve(&["bench", dir.path().to_str().unwrap(), "--format", "text"]);
    assert!(String::from_utf8(text.stdout).unwrap().starts_with("file"));
}

#[test]
fn reductions_from_the_command_line() {
    let dir = tempfile::tempdir().unwrap();
    let tri = write(dir.path(), "tri.txt", "p tri 3 3\nc 1 1\nc 2 2\nc 3 3\ne 1 2\ne 2 3\ne 1 3\n");
    let reduced = dir.path().join("vc.txt");
    assert!(mve(&["reduce", "vc", &tri, "--h", "2", "-o", reduced.to_str().unwrap()]).status.success());
    let yes = json(&mve(&["solve", reduced.to_str().unwrap(), "--alg", "searchtree"]));
    assert_eq!(yes["answer"], "yes");
    assert!(mve(&["reduce", "vc", &tri, "--h", "1", "-o", reduced.to_str().unwrap()]).status.success());
    let no = json(&mve(&["solve", reduced.to_str().unwrap(), "--alg", "searchtree"]));
    assert_eq!(no["answer"], "no");

    let diamond = write(dir.path(), "diamond.txt", &format!("# k 1\n# ell 3\n{DIAMOND}"));
    let unbudgeted = write(dir.path(), "diamond0.txt", &format!("# k 0\n# ell 3\n{DIAMOND}"));
    let cases: [&[&str]; 3] = [
        &["subdivide", &diamond],
        &["complete", &diamond],
        &["split", &unbudgeted, "--multiplicity", "7"],
    ];
    for args in cases {
        let kind = args[0];
        let out = mve(&[&["reduce"], args].concat());
        assert!(out.status.success(), "{kind}");
        let file = write(dir.path(), &format!("{kind}.txt"), &String::from_utf8(out.stdout).unwrap());
        assert_eq!(json(&mve(&["solve", &file, "--alg", "searchtree"]))["answer"], "no", "{kind}");
    }
}
