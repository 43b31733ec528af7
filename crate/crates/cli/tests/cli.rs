use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

const K4: &str = "4\n0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n";
const C4: &str = "4\n0 1\n1 2\n2 3\n3 0\n";

fn corpus(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../corpus")
        .join(name)
}

fn pushing(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pushing"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write(dir: &TempDir, name: &str, text: &str) -> String {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_owned()
}

#[test]
fn verify_proper_and_conflicting() {
    let dir = TempDir::new().unwrap();
    let k4 = write(&dir, "k4.edges", K4);
    let c4 = write(&dir, "c4.edges", C4);

    let o = pushing(&["verify", "--graph", &k4, "--scheme", "0 1 2 3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("sigma: 9 11 13 15"));

    let o = pushing(&["verify", "--graph", &c4, "--scheme", "0 0 0 0"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("conflict: 0 1"));

    let o = pushing(&["verify", "--graph", &c4, "--scheme", "rho: 0 1 0 0"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn usage_and_parse_errors_exit_2() {
    let dir = TempDir::new().unwrap();
    let k4 = write(&dir, "k4.edges", K4);
    assert_eq!(
        pushing(&["verify", "--graph", &k4, "--bogus"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(pushing(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(
        pushing(&["verify", "--graph", &k4, "--scheme", "0 1"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        pushing(&["verify", "--graph", &k4, "--scheme", "0 x 1 2"])
            .status
            .code(),
        Some(2)
    );

    let bad = write(&dir, "bad.edges", "3\n0 1\n1 7\n");
    let o = pushing(&["verify", "--graph", &bad, "--scheme", "0 0 0"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 3"));

    let k2 = write(&dir, "k2.edges", "2\n0 1\n");
    assert_eq!(
        pushing(&["exact", "--p1", "--graph", &k2]).status.code(),
        Some(2)
    );
}

#[test]
fn exact_values() {
    let dir = TempDir::new().unwrap();
    let k4 = write(&dir, "k4.edges", K4);
    let c4 = write(&dir, "c4.edges", C4);

    let o = pushing(&["exact", "--p1", "--graph", &k4]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().next(), Some("3"));

    let o = pushing(&["exact", "--pt", "--graph", &k4]);
    assert_eq!(stdout(&o).lines().next(), Some("6"));

    let o = pushing(&["exact", "--pt", "--graph", &c4]);
    assert_eq!(stdout(&o).lines().next(), Some("1"));

    assert_eq!(
        pushing(&["exact", "--cap", "0", "--graph", &c4])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        pushing(&["exact", "--cap", "1", "--graph", &c4])
            .status
            .code(),
        Some(0)
    );
}

#[test]
fn greedy_trace_and_witness() {
    let dir = TempDir::new().unwrap();
    let c4 = write(&dir, "c4.edges", C4);
    let trace = dir.path().join("trace.csv");
    let witness = dir.path().join("w.txt");
    let o = pushing(&[
        "greedy",
        "--graph",
        &c4,
        "--ordering",
        "0 1 2 3",
        "--trace",
        trace.to_str().unwrap(),
        "--emit-witness",
        witness.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let csv = std::fs::read_to_string(&trace).unwrap();
    assert_eq!(csv.lines().nth(2), Some("2,1,1,0,1,1"));
    let w = std::fs::read_to_string(&witness).unwrap();
    assert_eq!(w.trim(), "rho: 0 1 0 0");
    let o = pushing(&["verify", "--graph", &c4, "--scheme", w.trim()]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn construct_cubic_with_dump() {
    let input = corpus("cubic_n10.g6");
    let o = pushing(&["construct", "--graph6", input.to_str().unwrap(), "--dump"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert_eq!(
        out.lines()
            .filter(|l| l.split_whitespace().count() == 5)
            .count(),
        10
    );
    let rho = out.lines().find(|l| l.starts_with("rho:")).unwrap();
    assert!(rho
        .split_whitespace()
        .skip(1)
        .all(|t| t.parse::<u32>().unwrap() <= 3));
}

#[test]
fn batch_is_deterministic_and_witnesses_verify() {
    let dir = TempDir::new().unwrap();
    let input = corpus("cubic_n06.g6");
    let witness = dir.path().join("w.txt");
    let run = |extra: &[&str]| {
        let mut args = vec![
            "batch",
            "--graph6",
            input.to_str().unwrap(),
            "--seed",
            "7",
            "--trials",
            "10",
        ];
        args.extend_from_slice(extra);
        pushing(&args)
    };
    let a = run(&["--emit-witness", witness.to_str().unwrap()]);
    let b = run(&[]);
    assert_eq!(a.status.code(), Some(0));
    let strip = |o: &Output| -> Vec<String> {
        stdout(o)
            .lines()
            .map(|l| l.rsplit_once(',').unwrap().0.to_owned())
            .collect()
    };
    assert_eq!(strip(&a), strip(&b));
    assert_eq!(strip(&a).len(), 3);
    assert!(stdout(&a).starts_with(
        "graph_id,n,m,delta,regular,girth,mode,p1_or_max,total,bound,trials,proper,runtime\n"
    ));

    let lines: Vec<String> = std::fs::read_to_string(&witness)
        .unwrap()
        .lines()
        .map(String::from)
        .collect();
    assert_eq!(lines.len(), 2);
    let graphs: Vec<String> = std::fs::read_to_string(&input)
        .unwrap()
        .lines()
        .map(String::from)
        .collect();
    for w in &lines {
        let (id, scheme) = w.split_once(' ').unwrap();
        let g6 = write(&dir, "one.g6", &graphs[id.parse::<usize>().unwrap() - 1]);
        assert_eq!(
            pushing(&["verify", "--graph6", &g6, "--scheme", scheme])
                .status
                .code(),
            Some(0)
        );
    }

    let json = run(&["--format", "json"]);
    let rows: serde_json::Value = serde_json::from_slice(&json.stdout).unwrap();
    assert_eq!(rows.as_array().unwrap().len(), 2);
    assert_eq!(rows[0]["mode"], "greedy");
}

#[test]
fn batch_skips_non_nice_and_bad_lines() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "mixed.g6", "A_\nC~\n!!\n");
    let o = pushing(&["batch", "--graph6", &input]);
    assert_eq!(o.status.code(), Some(0));
    let err = String::from_utf8_lossy(&o.stderr).into_owned();
    assert!(err.contains("skipped line 1"));
    assert!(err.contains("skipped line 3"));
    assert_eq!(stdout(&o).lines().count(), 2);

    let empty = write(&dir, "empty.g6", "");
    let o = pushing(&["batch", "--graph6", &empty]);
    assert_eq!(stdout(&o).lines().count(), 1);
}

#[test]
fn average_of_a_batch() {
    let dir = TempDir::new().unwrap();
    let input = corpus("cubic_n06.g6");
    let csv = dir.path().join("out.csv");
    let o = pushing(&[
        "batch",
        "--graph6",
        input.to_str().unwrap(),
        "--output",
        csv.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let o = pushing(&["average", "--csv", csv.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("rows: 2 "));

    let header_only = write(
        &dir,
        "h.csv",
        "graph_id,n,m,delta,regular,girth,mode,p1_or_max,total,bound,trials,proper,runtime\n",
    );
    assert_eq!(
        pushing(&["average", "--csv", &header_only]).status.code(),
        Some(2)
    );
}

#[test]
fn conjecture_over_a_corpus_file() {
    let input = corpus("quartic_n08.g6");
    let o = pushing(&["conjecture", "--graph6", input.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o).lines().filter(|l| l.contains(" holds ")).count(),
        6
    );
}

#[test]
fn perm_oracle_fractions() {
    let o = pushing(&["perm-oracle"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("S1,60480,1/60"));
    assert!(out.contains("S3,4320,1/840"));
    assert!(out.contains("bound,,23/840"));
}
