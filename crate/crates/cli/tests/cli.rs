use std::fs;
use std::process::{Command, Output};

use tempfile::tempdir;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_cubic-tsp"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn solve_petersen_reports_bound() {
    let o = run(&["solve", "--gen", "petersen"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.starts_with("n=10 tour="), "{out}");
    assert!(out.trim_end().ends_with("≤ 11 PASS"), "{out}");
}

#[test]
fn oracle_k4() {
    let o = run(&["oracle", "--gen", "k4"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("opt=4"));
}

#[test]
fn oracle_refuses_large_graphs() {
    let o = run(&["oracle", "--gen", "moebius-kantor"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn solve_verify_and_tamper() {
    let dir = tempdir().unwrap();
    let graph = dir.path().join("g.txt");
    let sol = dir.path().join("s.json");
    let dot = dir.path().join("s.dot");
    let o = run(&[
        "generate",
        "random:n=24,seed=3",
        "--out",
        graph.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    let o = run(&[
        "solve",
        graph.to_str().unwrap(),
        "--out",
        sol.to_str().unwrap(),
        "--dot",
        dot.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", stdout(&o));
    assert!(fs::read_to_string(&dot).unwrap().starts_with("graph G {"));

    let o = run(&["verify", graph.to_str().unwrap(), sol.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("PASS"));

    // drop one single-copy edge from the solution
    let mut v: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(&sol).unwrap()).unwrap();
    let edges = v["edges"].as_array_mut().unwrap();
    let k = edges.iter().position(|e| e[2] == 1).unwrap();
    edges.remove(k);
    let tampered = dir.path().join("t.json");
    fs::write(&tampered, serde_json::to_string(&v).unwrap()).unwrap();
    let o = run(&[
        "verify",
        graph.to_str().unwrap(),
        tampered.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    assert!(out.contains("FAIL") && out.contains("all-even"), "{out}");
}

#[test]
fn json_output_is_deterministic() {
    let a = run(&["solve", "--gen", "random:n=40,seed=11", "--json"]);
    let b = run(&["solve", "--gen", "random:n=40,seed=11", "--json"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["n"], 40);
    assert!(v["certificate"]["verdict"]["connected"].as_bool().unwrap());
}

#[test]
fn invalid_inputs_exit_with_two() {
    let dir = tempdir().unwrap();
    let bad = dir.path().join("bad.txt");
    fs::write(&bad, "4 5\n0 1\n0 2\n0 3\n1 2\n1 3\n").unwrap();
    let o = run(&["solve", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["oracle", bad.to_str().unwrap(), "--require-cubic-3ec"]);
    assert_eq!(o.status.code(), Some(2));
    fs::write(&bad, "3 1\n0 7\n").unwrap();
    let o = run(&["solve", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2"));
    let o = run(&["generate", "random:n=7"]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["solve", "/nonexistent/graph.txt"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn stdin_and_json_graphs() {
    use std::io::Write;
    let mut child = bin()
        .args(["solve", "-"])
        .stdin(std::process::Stdio::piped())
        .stdout(std::process::Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(
            b"{\"n\": 6, \"edges\": [[0,1],[1,2],[2,0],[3,4],[4,5],[5,3],[0,3],[1,4],[2,5]]}",
        )
        .unwrap();
    let o = child.wait_with_output().unwrap();
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("n=6 tour=6 ≤ 6 PASS"));
}

#[test]
fn bench_writes_csv() {
    let dir = tempdir().unwrap();
    let csv = dir.path().join("b.csv");
    let o = run(&[
        "bench",
        "--sizes",
        "10..30:10",
        "--seeds",
        "1..3",
        "--csv",
        csv.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", stdout(&o));
    let text = fs::read_to_string(&csv).unwrap();
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "instance,n,tour,bound,ratio_to_n,compressions,split_offs,deg2_adjacent,\
         deg2_distance2,deg4_default,deg4_alternative,pass,wall_ms"
    );
    assert_eq!(lines.count(), 9);
    assert!(stdout(&o).starts_with("instances=9 failed=0"));
}

#[test]
fn bench_rejects_odd_sizes() {
    let o = run(&["bench", "--sizes", "9..11"]);
    assert_eq!(o.status.code(), Some(2));
}
