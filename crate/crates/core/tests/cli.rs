use std::io::Write;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::NamedTempFile;

const P3: &str = "3 2\n1 2\n2 3\n";
const P4: &str = "4 3\n1 2\n2 3\n3 4\n";
const C4: &str = "4 4\n1 2\n2 3\n3 4\n4 1\n";
const K4: &str = "4 6\n1 2\n1 3\n1 4\n2 3\n2 4\n3 4\n";
const STAR3: &str = "# star with three leaves\n4 3\n1 2\n1 3\n1 4\n";

fn graph_file(text: &str) -> NamedTempFile {
    let mut f = NamedTempFile::new().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

fn msvc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_msvc"))
        .args(args)
        .output()
        .unwrap()
}

fn solve_json(text: &str, extra: &[&str]) -> Value {
    let f = graph_file(text);
    let mut args = vec!["solve", f.path().to_str().unwrap(), "--json"];
    args.extend_from_slice(extra);
    let out = msvc(&args);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn solve_examples() {
    let r = solve_json(P3, &["--algo", "vc", "--max-k", "4"]);
    assert_eq!(r["cost"], 2);
    assert_eq!(r["k"], 1);
    assert_eq!(r["algorithm"], "vc");

    let r = solve_json(K4, &["--algo", "cm", "--max-k", "0"]);
    assert_eq!(r["cost"], 10);
    assert_eq!(r["k"], 0);

    let r = solve_json(P3, &["--algo", "greedy"]);
    assert_eq!(r["cost"], 2);
    assert_eq!(r["ordering"][0], 2);
}

#[test]
fn report_shape() {
    let r = solve_json(C4, &["--algo", "brute"]);
    for key in ["algorithm", "k", "cost", "ordering", "stats", "elapsed_ms"] {
        assert!(r.get(key).is_some(), "missing {key}");
    }
    let mut labels: Vec<u64> = r["ordering"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_u64().unwrap())
        .collect();
    labels.sort_unstable();
    assert_eq!(labels, [1, 2, 3, 4]);
    assert!(r["stats"]["nodes"].as_u64().unwrap() > 0);
}

#[test]
fn text_output() {
    let f = graph_file(P4);
    let out = msvc(&["solve", f.path().to_str().unwrap()]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("algorithm: vc"), "{text}");
    assert!(text.contains("cost: 4"), "{text}");
}

#[test]
fn verify_examples() {
    let f = graph_file(P4);
    let out = msvc(&["verify", f.path().to_str().unwrap(), "--algos", "brute,vc"]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stdout).contains("PASS cost 4"));

    let f = graph_file(C4);
    let out = msvc(&[
        "verify",
        f.path().to_str().unwrap(),
        "--algos",
        "brute,vc,cm",
    ]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stdout).contains("PASS cost 6"));

    let f = graph_file(STAR3);
    let out = msvc(&[
        "verify",
        f.path().to_str().unwrap(),
        "--algos",
        "brute,greedy",
        "--json",
    ]);
    assert!(out.status.success());
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["pass"], true);
    assert_eq!(v["greedy_ratio"], 1.0);
}

#[test]
fn random_graphs_are_seeded() {
    let a = msvc(&["generate", "--random", "8", "0.5", "--seed", "3"]);
    let b = msvc(&["generate", "--random", "8", "0.5", "--seed", "3"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);

    let out = msvc(&[
        "verify",
        "--random",
        "8",
        "0.5",
        "--seed",
        "3",
        "--algos",
        "brute,vc,greedy",
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stdout)
    );

    let out = msvc(&["solve", "--random", "8", "0.5"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn parse_errors_name_the_line() {
    let f = graph_file("2 1\n1 1\n");
    let out = msvc(&["solve", f.path().to_str().unwrap(), "--json"]);
    assert_eq!(out.status.code(), Some(2));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["error"]["kind"], "parse");
    let msg = v["error"]["message"].as_str().unwrap();
    assert!(msg.contains("line 2") && msg.contains("self-loop"), "{msg}");

    let f = graph_file("3 2\n1 2\n1 2\n");
    let out = msvc(&["solve", f.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3"));
}

#[test]
fn parameter_exceeded_is_reported() {
    let f = graph_file(K4);
    let out = msvc(&[
        "solve",
        f.path().to_str().unwrap(),
        "--algo",
        "vc",
        "--max-k",
        "2",
        "--json",
    ]);
    assert_eq!(out.status.code(), Some(2));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["error"]["kind"], "parameter_exceeded");

    let out = msvc(&[
        "solve",
        f.path().to_str().unwrap(),
        "--algo",
        "vc",
        "--budget",
        "1",
        "--json",
    ]);
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["error"]["kind"], "budget");
}
