use std::fs;
use std::path::Path;
use std::process::Command;

use romandom::cli::run;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_romandom"))
}

fn run_in_process(args: &[&str]) -> (i32, String) {
    let mut out = Vec::new();
    let code = run(std::iter::once("romandom").chain(args.iter().copied()), &mut out);
    (code, String::from_utf8(out).unwrap())
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

const FIG3: &str = r#"{"ell":3,"q":2,"sets":[[0,1,3],[1,2,3],[2,4,5],[3,4,5]]}"#;

#[test]
fn reduce_then_decide_then_verify() {
    let dir = tempfile::tempdir().unwrap();
    let src = write(dir.path(), "fig3.json", FIG3);
    let red = dir.path().join("red.json");
    let red = red.to_str().unwrap();
    let (code, _) = run_in_process(&["reduce", "--name", "split", "--input", &src, "--output", red]);
    assert_eq!(code, 0);

    let witness = dir.path().join("w.json");
    let w = witness.to_str().unwrap();
    let (code, text) = run_in_process(&[
        "decide",
        "--objective",
        "grd",
        "--budget",
        "9",
        "--input",
        red,
        "--witness",
        w,
    ]);
    assert_eq!(code, 0);
    assert!(text.starts_with("yes"));

    let (code, text) = run_in_process(&["verify", "--labeling", w, "--mode", "grd", "--input", red]);
    assert_eq!(code, 0);
    assert!(text.starts_with("valid GRDF"));

    let (code, text) = run_in_process(&["decide", "--objective", "grd", "--budget", "8", "--input", red]);
    assert_eq!((code, text.trim()), (1, "no"));

    // the budget stored in the reduction output is the default
    let (code, _) = run_in_process(&["decide", "--objective", "grd", "--input", red]);
    assert_eq!(code, 0);
}

#[test]
fn verify_all_ones() {
    let dir = tempfile::tempdir().unwrap();
    let g = write(dir.path(), "c5.txt", "5 5\n0 1\n1 2\n2 3\n3 4\n4 0\n");
    let f = write(dir.path(), "f.json", r#"{"n":5,"labels":[1,1,1,1,1]}"#);
    let (code, text) = run_in_process(&["verify", "--labeling", &f, "--mode", "grd", "--input", &g]);
    assert_eq!(code, 0);
    assert!(text.starts_with("valid GRDF"), "{text}");

    let zero = write(dir.path(), "z.json", r#"{"n":5,"labels":[0,0,0,0,0]}"#);
    let (code, text) = run_in_process(&["verify", "--labeling", &zero, "--mode", "rd", "--input", &g]);
    assert_eq!(code, 1);
    assert!(text.starts_with("invalid RDF"));
}

#[test]
fn solve_json_is_machine_readable() {
    let dir = tempfile::tempdir().unwrap();
    let g = write(dir.path(), "c4.txt", "4 4\n0 1\n1 2\n2 3\n3 0\n");
    for (obj, want) in [("rd", 3), ("grd", 4), ("ds", 2)] {
        let (code, text) = run_in_process(&["solve", "--objective", obj, "--input", &g, "--format", "json"]);
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v["optimum"], want, "{obj}");
    }
}

#[test]
fn cograph_command() {
    let dir = tempfile::tempdir().unwrap();
    let k4 = write(dir.path(), "k4.txt", "4 6\n0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n");
    let (code, text) = run_in_process(&["cograph", "--input", &k4, "--witness-cap", "10"]);
    assert_eq!(code, 0);
    assert!(text.contains("gamma_R 2") && text.contains("gamma_gR 4"), "{text}");
    let p4 = write(dir.path(), "p4.txt", "4 3\n0 1\n1 2\n2 3\n");
    assert_eq!(run_in_process(&["cograph", "--input", &p4]).0, 2);
}

#[test]
fn gen_is_deterministic() {
    let a = run_in_process(&["gen", "--kind", "cubic", "--n", "10", "--seed", "4"]);
    let b = run_in_process(&["gen", "--kind", "cubic", "--n", "10", "--seed", "4"]);
    assert_eq!(a, b);
    assert_eq!(a.0, 0);
    assert!(a.1.starts_with("10 15\n"));
    let (code, text) = run_in_process(&[
        "gen",
        "--kind",
        "x3c",
        "--q",
        "2",
        "--t",
        "4",
        "--planted",
        "--format",
        "json",
    ]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["instance"]["sets"].as_array().unwrap().len(), 4);
    assert_eq!(run_in_process(&["gen", "--kind", "cubic", "--n", "5"]).0, 2);
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(run_in_process(&["frobnicate"]).0, 2);
    assert_eq!(run_in_process(&["solve"]).0, 2);
    assert_eq!(run_in_process(&["reduce", "--name", "nope"]).0, 2);
    assert_eq!(
        run_in_process(&["solve", "--objective", "rd", "--jobs", "0", "--input", "/nonexistent"]).0,
        2
    );
}

#[test]
fn time_budget_exit_3() {
    let dir = tempfile::tempdir().unwrap();
    let (_, g) = run_in_process(&["gen", "--kind", "erdos", "--n", "70", "--p", "0.08", "--seed", "1"]);
    let path = write(dir.path(), "g.txt", &g);
    let (code, _) = run_in_process(&["solve", "--objective", "grd", "--input", &path, "--time-budget-ms", "1"]);
    assert_eq!(code, 3);
}

#[test]
fn lemmas_table_is_independent_of_workers() {
    let strip = |s: String| -> Vec<String> {
        s.lines()
            .map(|l| {
                l.split_whitespace()
                    .filter(|w| w.parse::<u64>().is_err())
                    .collect::<Vec<_>>()
                    .join(" ")
            })
            .collect()
    };
    let (c1, t1) = run_in_process(&["lemmas", "--scale", "smoke", "--jobs", "1"]);
    let (c4, t4) = run_in_process(&["lemmas", "--scale", "smoke", "--jobs", "4"]);
    assert_eq!(c1, c4);
    assert_eq!(strip(t1.clone()), strip(t4));
    for name in [
        "f1",
        "f3",
        "split1",
        "chordal1",
        "g1",
        "grd-conclude",
        "x4cproof",
        "cograph-oracle",
    ] {
        assert!(t1.lines().any(|l| l.starts_with(name)), "missing row {name}");
    }
}

#[test]
fn binary_reports_exit_codes() {
    let status = bin().args(["gen", "--kind", "cubic", "--n", "4"]).output().unwrap();
    assert_eq!(status.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&status.stdout).lines().next(), Some("4 6"));
    let status = bin().arg("--help").output().unwrap();
    assert_eq!(status.status.code(), Some(0));
}
