use std::process::{Command, Output};

use tempfile::TempDir;
use tra_cli::{replay, revalidate_witness, RunReport};
use tra_core::limits::Limits;

fn tra(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tra"))
        .args(args)
        .env_remove("TRA_BUDGET")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

struct Specs {
    dir: TempDir,
}

impl Specs {
    fn new() -> Self {
        let s = Specs {
            dir: tempfile::tempdir().unwrap(),
        };
        s.write("full_2_2.alg", "n = 2\nbase = 2\ncarrier = \"full\"\n");
        s.write("full_2_3.alg", "n = 2\nbase = 3\ncarrier = \"full\"\n");
        s.write("unitvecs_3.alg", "n = 3\nbase = 2\ncarrier = [[1, 0, 0], [0, 1, 0], [0, 0, 1]]\n");
        s.write("single_01.alg", "n = 2\nbase = 2\ncarrier = [[0, 1]]\n");
        s.write("nonpermutable.alg", "n = 2\nbase = 2\ncarrier = [[0, 0], [0, 1]]\n");
        s.write("swap_pair.alg", "n = 2\nbase = 2\ncarrier = [[0, 1], [1, 0], [0, 1]]\n");
        s.write("bad.alg", "n = 2\nbase = 2\ncarrier = [[0, 5]]\n");
        s
    }

    fn write(&self, name: &str, text: &str) {
        std::fs::write(self.dir.path().join(name), text).unwrap();
    }

    fn path(&self, name: &str) -> String {
        self.dir.path().join(name).display().to_string()
    }
}

fn json_report(o: &Output) -> RunReport {
    RunReport::from_json(&stdout(o)).unwrap_or_else(|e| panic!("bad json ({e}): {}", stdout(o)))
}

#[test]
fn sigma_demo_reproduces_counterexample() {
    for n in ["2", "3"] {
        let o = tra(&["sigma-demo", "--n", n]);
        assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    }
    let text = stdout(&tra(&["sigma-demo", "--n", "3"]));
    for needle in [
        "{(0,0,1),(0,1,0),(1,0,0)}",
        "[1,2,0]",
        "[2,0,1]",
        "union = ∼X",
        "fails",
    ] {
        assert!(text.contains(needle), "missing {needle} in\n{text}");
    }
}

#[test]
fn sigma_demo_rejects_bad_dimension() {
    for n in ["1", "7", "x"] {
        let o = tra(&["sigma-demo", "--n", n]);
        assert_eq!(o.status.code(), Some(2));
        assert!(stderr(&o).contains("Usage") || stderr(&o).contains("usage"), "{}", stderr(&o));
    }
}

#[test]
fn check_involution_holds() {
    let s = Specs::new();
    let o = tra(&["check", "--spec", &s.path("full_2_2.alg"), "--eq", "s[0,1] s[0,1] x = x", "--exhaustive"]);
    assert_eq!(o.status.code(), Some(0), "{}{}", stdout(&o), stderr(&o));
}

#[test]
fn check_sigma_fails_on_unit_vectors() {
    let s = Specs::new();
    let o = tra(&[
        "check",
        "--spec",
        &s.path("unitvecs_3.alg"),
        "--quasi",
        "s{1,2,0} x | s{2,0,1} x = ~x => 0 = 1",
        "--exhaustive",
        "--json",
    ]);
    assert_eq!(o.status.code(), Some(1));
    let report = json_report(&o);
    let w = report.witness.as_ref().expect("witness");
    assert!(revalidate_witness(w, &Limits::default()).unwrap());
    // every singleton falsifies at n = 3; {e_1} must be listed
    let listed: Vec<&str> = report
        .details
        .iter()
        .filter(|r| r.key.starts_with("falsifier "))
        .map(|r| r.value.as_str())
        .collect();
    assert!(listed.contains(&"x = {(0,1,0)}"), "{listed:?}");
}

#[test]
fn malformed_input_exits_2() {
    let s = Specs::new();
    let spec = s.path("full_2_2.alg");
    let cases: Vec<Vec<&str>> = vec![
        vec!["check", "--spec", &spec, "--eq", "s[0,0] x = x"],
        vec!["check", "--spec", &spec, "--eq", "x = "],
        vec!["check", "--spec", &spec, "--quasi", "x = y =>"],
        vec!["check", "--spec", &spec, "--eq", "s[0,5] x = x"],
        vec!["check", "--spec", &spec],
        vec!["check", "--spec", "/nonexistent.alg", "--eq", "x = x"],
        vec!["check", "--spec", &spec, "--eq", "x = x", "--exhaustive", "--random", "5"],
    ];
    for args in &cases {
        let o = tra(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}: {}", stdout(&o));
        assert!(!stderr(&o).is_empty());
    }
    let bad = s.path("bad.alg");
    assert_eq!(tra(&["closure", "--spec", &bad]).status.code(), Some(2));
    assert_eq!(tra(&["bogus"]).status.code(), Some(2));
}

#[test]
fn budget_env_is_honoured() {
    let s = Specs::new();
    let o = Command::new(env!("CARGO_BIN_EXE_tra"))
        .args(["check", "--spec", &s.path("full_2_3.alg"), "--eq", "x | y = y | x", "--exhaustive"])
        .env("TRA_BUDGET", "100")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("budget"), "{}", stderr(&o));

    let o = Command::new(env!("CARGO_BIN_EXE_tra"))
        .args(["closure", "--spec", &s.path("single_01.alg")])
        .env("TRA_BUDGET", "lots")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn decompose_reports_atoms() {
    let o = tra(&["decompose", "--n", "2", "--k", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("atom (0,1)"));
    assert!(text.contains("range {0,1}, k_a = 2"));
    assert!(text.contains("separation          PASS") || text.contains("PASS"));
}

#[test]
fn closure_of_single_sequence() {
    let s = Specs::new();
    let o = tra(&["closure", "--spec", &s.path("single_01.alg")]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("{(0,1),(1,0)}"), "{text}");
    assert!(text.lines().any(|l| l.starts_with("permutable") && l.ends_with("yes")), "{text}");
}

#[test]
fn relativization_requires_permutable_sub() {
    let s = Specs::new();
    let o = tra(&["verify-relativization", "--big", &s.path("full_2_2.alg"), "--sub", &s.path("nonpermutable.alg")]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("G not permutable"));

    let o = tra(&["verify-relativization", "--big", &s.path("full_2_2.alg"), "--sub", &s.path("swap_pair.alg")]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn ultraproduct_at_each_index() {
    let s = Specs::new();
    for i0 in ["0", "1"] {
        let o = tra(&["ultraproduct", "--spec", &s.path("full_2_2.alg"), &s.path("full_2_3.alg"), "--i0", i0, "--random", "200"]);
        assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    }
    let o = tra(&["ultraproduct", "--spec", &s.path("full_2_2.alg"), "--i0", "3"]);
    assert_eq!(o.status.code(), Some(2));
    let o = tra(&["ultraproduct", "--spec", &s.path("single_01.alg")]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn reports_replay_identically() {
    let s = Specs::new();
    let full = s.path("full_2_2.alg");
    let unit = s.path("unitvecs_3.alg");
    let single = s.path("single_01.alg");
    let runs: Vec<Vec<&str>> = vec![
        vec!["sigma-demo", "--n", "3", "--json"],
        vec!["check", "--spec", &unit, "--quasi", "s{1,2,0} x | s{2,0,1} x = ~x => 0 = 1", "--json"],
        vec!["check", "--spec", &full, "--eq", "s[0,1] (x & y) = s[0,1] x & s[0,1] y", "--random", "300", "--seed", "0x2a", "--json"],
        vec!["decompose", "--n", "2", "--k", "2", "--json"],
        vec!["closure", "--spec", &single, "--json"],
    ];
    for args in runs {
        let first = json_report(&tra(&args));
        let second = json_report(&tra(&args));
        assert_eq!(first.timeless(), second.timeless(), "{args:?}");
        // replaying from the echoed inputs needs no files
        let replayed = replay(&first, &Limits::default()).unwrap();
        assert_eq!(replayed.timeless(), first.timeless(), "{args:?}");
    }
}

#[test]
fn workers_do_not_change_reports() {
    let s = Specs::new();
    let full = s.path("full_2_3.alg");
    let base = ["check", "--spec", &full, "--eq", "s[0,1] x = x", "--json"];
    let one = json_report(&tra(&base));
    let mut args = base.to_vec();
    args.extend(["--workers", "4"]);
    let mut four = json_report(&tra(&args));
    assert_eq!(one.outcome, four.outcome);
    four.mode.workers = 1;
    assert_eq!(one.timeless(), four.timeless());
}

#[test]
fn table_and_json_carry_the_same_fields() {
    let table = stdout(&tra(&["decompose", "--n", "2", "--k", "2"]));
    let report = json_report(&tra(&["decompose", "--n", "2", "--k", "2", "--json"]));
    for row in &report.details {
        assert!(table.contains(&row.key) && table.contains(&row.value), "{row:?}");
    }
    for key in ["command", "outcome", "mode", "elements tested", "assignments tested", "wall time"] {
        assert!(table.contains(key));
    }
}
