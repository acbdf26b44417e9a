use std::fs;
use std::process::{Command, Output};

use rrlab_core::lab::CheckReport;

fn rrlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rrlab")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn rank_on_triangle() {
    let o = rrlab(&["rank", "cycle:3", "1,0,0"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "0");
    let o = rrlab(&["rank", "banana:3", "-1,2"]);
    assert_eq!(stdout(&o).trim(), "-1");
}

#[test]
fn cycle_campaign_passes() {
    let o = rrlab(&["check", "cycle:3..6", "--which", "all"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("all 24 reports passed"));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(rrlab(&["bogus"]).status.code(), Some(2));
    assert_eq!(rrlab(&["check", "cycle:3", "--which", "nope"]).status.code(), Some(2));
    assert_eq!(rrlab(&["rank", "cycle:3", "1,0"]).status.code(), Some(2));
    assert_eq!(rrlab(&["witness", "banana:3", "1,1"]).status.code(), Some(2));
}

#[test]
fn malformed_graph_file_names_the_line() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g.txt");
    fs::write(&path, "3 2\n0 1\n1 x\n").unwrap();
    let o = rrlab(&["info", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("line 3"), "{err}");

    fs::write(&path, "{\"n\": 3, \"edges\": [[0,1]]}").unwrap();
    let o = rrlab(&["info", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn gen_then_inspect() {
    let dir = tempfile::tempdir().unwrap();
    let text = dir.path().join("b3.txt");
    let json = dir.path().join("b3.json");
    assert!(rrlab(&["gen", "--family", "banana", "--size", "3", "--out", text.to_str().unwrap()]).status.success());
    assert!(rrlab(&["gen", "--family", "banana", "--size", "3", "--format", "json", "--out", json.to_str().unwrap()])
        .status
        .success());
    assert_eq!(fs::read_to_string(&text).unwrap(), "2 3\n0 1\n0 1\n0 1\n");
    for path in [&text, &json] {
        let o = rrlab(&["info", path.to_str().unwrap()]);
        assert_eq!(stdout(&o), "n = 2\nm = 3\ng = 2\nK = (1,1)\n");
    }
    let a = stdout(&rrlab(&["gen", "--family", "random", "--size", "5", "--seed", "42"]));
    let b = stdout(&rrlab(&["gen", "--family", "random", "--size", "5", "--seed", "42"]));
    assert_eq!(a, b);
    assert_eq!(rrlab(&["gen", "--family", "cycle", "--size", "40"]).status.code(), Some(2));
}

#[test]
fn reduce_equiv_witness() {
    assert_eq!(stdout(&rrlab(&["reduce", "cycle:3", "-1,1,1", "--q", "0"])).trim(), "(1,0,0)");
    assert_eq!(stdout(&rrlab(&["equiv", "cycle:3", "1,0,0", "0,1,0"])).trim(), "false");
    assert_eq!(stdout(&rrlab(&["equiv", "cycle:3", "-1,1,1", "1,0,0"])).trim(), "true");
    assert_eq!(stdout(&rrlab(&["witness", "banana:3", "1,-1"])), "chain = [0]\nN = (2,-1)\n");
    assert_eq!(stdout(&rrlab(&["witness", "cycle:3", "-1,0,0"])), "chain = [1]\nN = (-1,1,0)\n");
}

#[test]
fn divisor_from_json_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("d.json");
    fs::write(&path, "[2, 0, 0]").unwrap();
    assert_eq!(stdout(&rrlab(&["rank", "cycle:3", path.to_str().unwrap()])).trim(), "1");
}

#[test]
fn curve_file_backend() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("curve.json");
    fs::write(&path, r#"{"p": 5, "a": 1, "b": 1}"#).unwrap();
    let o = rrlab(&["check", path.to_str().unwrap(), "--which", "rr,rr2", "--samples", "50", "--seed", "3"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    fs::write(&path, r#"{"p": 5, "a": 0, "b": 0}"#).unwrap();
    assert_eq!(rrlab(&["check", path.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn perturbed_backend_exits_1() {
    let o = rrlab(&["check", "complete:4", "--which", "rr,rr2", "--coeff-bound", "1", "--perturb-at", "1,1,1,1"]);
    assert_eq!(o.status.code(), Some(1), "{}", stdout(&o));
    assert!(stdout(&o).contains("FAIL rr2"));
    // a witness chain that cannot be completed is a theorem violation
    let o = rrlab(&["check", "banana:3", "--which", "rr1", "--perturb-at", "2,-1"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn json_reports_are_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let run = |name: &str| {
        let path = dir.path().join(name);
        let o = rrlab(&[
            "check", "complete:4", "--which", "rr,rr1,cnr", "--samples", "80", "--seed", "9", "--json",
            path.to_str().unwrap(),
        ]);
        assert!(o.status.success());
        let mut reports: Vec<CheckReport> = serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
        for r in &mut reports {
            r.wall_ms = 0;
        }
        serde_json::to_string(&reports).unwrap()
    };
    let a = run("a.json");
    assert_eq!(a, run("b.json"));
    let reports: Vec<CheckReport> = serde_json::from_str(&a).unwrap();
    assert_eq!(reports.len(), 3);
    assert!(reports.iter().all(|r| r.seed == Some(9)));
}
