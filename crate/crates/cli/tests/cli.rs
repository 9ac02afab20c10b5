use std::process::{Command, Output};

use serde_json::Value;

fn meadow(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_meadow"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut all = args.to_vec();
    all.push("--json");
    let o = meadow(&all);
    let v = serde_json::from_slice(&o.stdout).expect("valid JSON");
    (o.status.code().unwrap(), v)
}

#[test]
fn eval_totalized_division() {
    let o = meadow(&["eval", "1/0"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().next(), Some("0"));
}

#[test]
fn eval_with_digits() {
    let (code, v) = json(&["eval", "sqrt(8)", "--digits", "7"]);
    assert_eq!(code, 0);
    assert_eq!(v["canonical"], "2 * sqrt(2)");
    assert_eq!(v["decimal"], "2.8284271");
    assert_eq!(v["sign"], 1);
}

#[test]
fn equal_exit_codes() {
    assert_eq!(meadow(&["equal", "sqrt(2)*sqrt(3)", "sqrt(6)"]).status.code(), Some(0));
    let o = meadow(&["equal", "sqrt(2)", "577/408"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stdout(&o).trim(), "false");
}

#[test]
fn sign_of_terms() {
    assert_eq!(stdout(&meadow(&["sign", "0 - sqrt(-2)"])).trim(), "1");
    assert_eq!(stdout(&meadow(&["sign", "s(1/0)"])).trim(), "0");
    assert_eq!(stdout(&meadow(&["sign", "sqrt(2) - 3/2"])).trim(), "-1");
}

#[test]
fn simplify_open_terms() {
    assert_eq!(stdout(&meadow(&["simplify", "sqrt(x*x*s(x)) + 0"])).trim(), "x");
    let (_, v) = json(&["simplify", "inv(inv(inv(inv(x))))", "--steps", "1"]);
    assert_eq!(v["truncated"], true);
    assert_eq!(v["result"], "inv(inv(x))");
}

#[test]
fn check_square_roots() {
    let o = meadow(&["check", "SquareRoots", "--model", "exact", "--trials", "500", "--seed", "7"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let (code, v) = json(&["check", "Refutable", "--model", "fp:5"]);
    assert_eq!(code, 1);
    assert_eq!(v["reports"][0]["failure_count"], 1);
    assert_eq!(v["reports"][0]["failures"][0]["valuation"]["x"]["term"], "0");
}

#[test]
fn seeds_make_output_reproducible() {
    let args = ["check", "Signs", "--trials", "50", "--seed", "3", "--json"];
    assert_eq!(meadow(&args).stdout, meadow(&args).stdout);
    let args = ["gen", "--seed", "12", "--size", "9"];
    assert_eq!(meadow(&args).stdout, meadow(&args).stdout);
}

#[test]
fn scan_lagrange_two_is_empty() {
    let (code, v) = json(&["scan-lagrange", "--n", "2", "--limit", "10000"]);
    assert_eq!(code, 0);
    assert_eq!(v["holds"], Value::Array(vec![]));
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["counterexample_sample"]["2"], serde_json::json!([1, 0]));
}

#[test]
fn f3_demo_report() {
    let (code, v) = json(&["f3-demo"]);
    assert_eq!(code, 0);
    assert_eq!(v["squares"], serde_json::json!([0, 1]));
    assert_eq!(v["finite_value"], 0);
    assert_eq!(v["exact_value"], "1");
}

#[test]
fn propagation_command() {
    let (code, v) = json(&["propagation", "--kind", "zero", "--trials", "200", "--seed", "5"]);
    assert_eq!(code, 0);
    assert_eq!(v["verdict"], "pass");
    assert_eq!(v["trials"], 200);
}

#[test]
fn closed_generation() {
    let o = meadow(&["gen", "--seed", "4", "--size", "6", "--vars", ""]);
    let term = stdout(&o);
    assert_eq!(meadow(&["eval", term.trim()]).status.code(), Some(0));
}

#[test]
fn usage_errors_exit_two() {
    let o = meadow(&["eval", "1 + * 2"]);
    assert_eq!(o.status.code(), Some(2));
    let msg = String::from_utf8(o.stderr).unwrap();
    assert!(msg.contains("position 4"), "{msg}");
    for args in [
        vec!["check", "Nope"],
        vec!["check", "Md", "--model", "reals"],
        vec!["check", "Signs", "--model", "fp:5"],
        vec!["eval", "x + 1"],
        vec!["propagation", "--kind", "half"],
        vec!["scan-lagrange", "--n", "7", "--limit", "10"],
        vec!["frobnicate"],
        vec![],
    ] {
        assert_eq!(meadow(&args).status.code(), Some(2), "{args:?}");
    }
    let o = meadow(&["check", "Nope"]);
    assert!(String::from_utf8(o.stderr).unwrap().contains("SquareRoots"));
}
