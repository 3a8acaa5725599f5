use std::fs;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_capvertex"))
        .args(args)
        .env_remove("CAPVERTEX_CONVENTIONS")
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn passing_checks_exit_zero() {
    let o = run(&["verify", "kernel", "mellit", "osum", "degenerate", "--ymax", "3"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let out = stdout(&o);
    for check in ["kernel: PASS", "mellit: PASS", "osum: PASS", "degenerate: PASS"] {
        assert!(out.contains(check), "{out}");
    }
    assert_eq!(code(&run(&["verify", "ook", "--ymax", "2", "--zmax", "3"])), 0);
    assert_eq!(code(&run(&["verify", "prop1", "prop4", "--n", "2"])), 0);
}

#[test]
fn main_identity_mismatch_exits_one_with_witness() {
    let o = run(&["verify", "main", "--ymax", "2", "--zmax", "2", "--format", "csv"]);
    assert_eq!(code(&o), 1);
    let out = stdout(&o);
    let row = out.lines().nth(1).unwrap();
    assert!(row.starts_with("main,2,2,,symbolic,mismatch,y^1 z^1 p[1],"), "{row}");
}

#[test]
fn swapped_orientation_is_a_negative_control() {
    let o = run(&["verify", "kernel", "--ymax", "2", "--orientation", "swapped"]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("at y^2 p[1,1]"));
}

#[test]
fn usage_and_bound_errors_exit_two() {
    for args in [
        vec!["verify", "kernel", "--ymax", "9"],
        vec!["verify", "main", "--zmax", "40"],
        vec!["vertex", "--n", "5"],
        vec!["verify", "prop1", "--n", "4"],
        vec!["verify", "kernel", "--specialize", "t1=4/9"],
        vec!["verify", "kernel", "--specialize", "t1=x,t2=1,q=1,u=1"],
        vec!["verify", "main", "--shift", "2,0,0"],
        vec!["verify", "kernel", "--weight-scale", "0"],
        vec!["verify", "kernel", "--conventions", "/nonexistent/conventions.json"],
        vec!["calibrate", "--specialize", "t1=4/9,t2=9/25,q=3/7,u=5/11"],
    ] {
        let o = run(&args);
        assert_eq!(code(&o), 2, "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    }
}

#[test]
fn term_limit_exits_three() {
    let o = run(&["verify", "kernel", "--ymax", "3", "--max-terms", "2"]);
    assert_eq!(code(&o), 3);
    assert!(String::from_utf8_lossy(&o.stderr).contains("exceeds the limit"));
}

#[test]
fn output_independent_of_thread_count() {
    for args in [
        vec!["verify", "all", "--ymax", "3", "--zmax", "3", "--n", "2", "--format", "json"],
        vec!["vertex", "--n", "2", "--format", "json"],
        vec!["series", "built", "--ymax", "3", "--zmax", "3", "--format", "csv"],
    ] {
        let mut one = args.clone();
        one.extend(["--jobs", "1"]);
        let mut four = args.clone();
        four.extend(["--jobs", "4"]);
        let a = run(&one);
        let b = run(&four);
        assert_eq!(code(&a), code(&b));
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn calibrate_is_idempotent() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("conventions.json");
    let p = path.to_str().unwrap();
    let first = run(&["calibrate", "--out", p]);
    assert_eq!(code(&first), 0, "{}", String::from_utf8_lossy(&first.stderr));
    assert!(String::from_utf8_lossy(&first.stderr).contains("written"));
    let text = fs::read_to_string(&path).unwrap();
    let second = run(&["calibrate", "--out", p, "--conventions", p]);
    assert_eq!(code(&second), 0);
    assert!(String::from_utf8_lossy(&second.stderr).contains("unchanged"));
    assert_eq!(fs::read_to_string(&path).unwrap(), text);
    let o = run(&["verify", "kernel", "--ymax", "3", "--conventions", p]);
    assert_eq!(code(&o), 0);
}

#[test]
fn malformed_conventions_are_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    fs::write(&path, "{\"tangent\": 3}").unwrap();
    assert_eq!(code(&run(&["verify", "kernel", "--conventions", path.to_str().unwrap()])), 2);
}

#[test]
fn vertex_examples() {
    let o = run(&["vertex", "--n", "0"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).lines().any(|l| l == "∅ : 1"));

    let o = run(&["vertex", "--n", "1", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let entries = v["entries"].as_array().unwrap();
    assert_eq!(entries.len(), 1);
    assert_eq!(entries[0]["denominator"], serde_json::json!(["1", "-1"]));
    assert_eq!(v["q_independent"], serde_json::json!(true));
}

#[test]
fn series_output() {
    let o = run(&["series", "F", "--ymax", "1", "--zmax", "1"]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    assert_eq!(out.lines().next(), Some("1"));
    assert!(out.contains("* y^1*z^1*p1"));

    let built = run(&["series", "built", "--ymax", "3", "--zmax", "0", "--format", "json"]);
    let taubar = run(&["series", "taubar", "--ymax", "3", "--zmax", "0", "--format", "json"]);
    assert_eq!(built.stdout, taubar.stdout);
    let v: serde_json::Value = serde_json::from_slice(&built.stdout).unwrap();
    assert_eq!(v["y_order"], 3);
}

#[test]
fn specialized_run_matches_symbolic_verdicts() {
    let point = "t1=4/9,t2=9/25,q=3/7,u=5/11";
    assert_eq!(code(&run(&["verify", "kernel", "ook", "--ymax", "3", "--zmax", "3", "--specialize", point])), 0);
    assert_eq!(code(&run(&["verify", "main", "--ymax", "2", "--zmax", "2", "--specialize", point])), 1);
}
