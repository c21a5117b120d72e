use std::process::Command;

fn run(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_quadcycles")).args(args).output().unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap(), String::from_utf8(out.stderr).unwrap())
}

#[test]
fn eval_prints_canonical_cycles() {
    let (code, out, _) = run(&["--n", "5", "eval", "rho(2,1,1)"]);
    assert_eq!(code, 0);
    assert_eq!(out.trim(), "h^2 x l_1 + l_0 x h^1");
    let (_, out, _) = run(&["--n", "5", "eval", "deg(l_0 x l_0)"]);
    assert_eq!(out.trim(), "1");
    let (_, out, _) = run(&["--n", "5", "eval", "eqmodnoness(rho(1,0) + h^2 x 1, rho(1,0))"]);
    assert_eq!(out.trim(), "true");
    let (_, out, _) = run(&["--n", "6", "eval", "h^2 . h"]);
    assert_eq!(out.trim(), "l_3 + l'_3");
}

#[test]
fn eval_reports_parse_errors_with_position() {
    let (code, _, err) = run(&["--n", "5", "eval", "sym(1 x h^)"]);
    assert_eq!(code, 2);
    assert!(err.contains("1:11"), "{err}");
    assert!(err.contains("expected an integer"), "{err}");
}

#[test]
fn expect_mismatch_is_a_check_failure() {
    let (code, out, _) = run(&["--n", "5", "eval", "act(diag(), l_1)", "--expect", "l_1"]);
    assert_eq!(code, 0, "{out}");
    let (code, out, _) = run(&["--n", "5", "eval", "rho(1,0)", "--expect", "rho(1,1)"]);
    assert_eq!(code, 1);
    assert!(out.contains("FAIL"));
}

#[test]
fn edi_propagation_examples() {
    let (code, out, _) = run(&["--n", "9", "edi", "--aniso", "--seed", "4:1"]);
    assert_eq!(code, 0);
    assert!(out.lines().any(|l| l.starts_with("EDI(4)") && l.contains('5')), "{out}");
    let (code, out, _) = run(&["--n", "5", "edi", "--aniso", "--seed", "1:3"]);
    assert_eq!(code, 3);
    assert!(out.contains("isotropy-bound"), "{out}");
    let (code, out, _) = run(&["--n", "7", "edi"]);
    assert_eq!(code, 0);
    assert!(out.lines().filter(|l| l.starts_with("EDI(")).all(|l| l.ends_with("{}")), "{out}");
    let (code, _, _) = run(&["--n", "5", "edi", "--seed", "2:9"]);
    assert_eq!(code, 2);
}

#[test]
fn edi_trace_lists_firings() {
    let (code, out, _) = run(&["--n", "7", "--trace", "edi", "--i1", "2", "--seed", "1:4"]);
    assert_eq!(code, 3);
    assert!(out.contains("primordial-descent on 1:4 => {0:5}"), "{out}");
    assert!(out.contains("contradiction: isotropy-bound on 1:4 l=2"), "{out}");
}

#[test]
fn edi_enumeration_counts() {
    let (code, out, _) = run(&["--n", "5", "edi", "--mode", "enumerate", "--aniso"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("16 admissible tables"), "{out}");
    let (_, out, _) = run(&["--n", "5", "--json", "edi", "--mode", "enumerate", "--aniso"]);
    assert_eq!(out.lines().count(), 17);
    let (_, out, _) = run(&["--n", "9", "edi", "--mode", "enumerate", "--levels", "4"]);
    assert!(out.contains("admissible tables"));
}

#[test]
fn verify_runs_and_filters() {
    let (code, out, _) = run(&["verify", "--n-min", "4", "--n-max", "6", "--suite", "delta"]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().filter(|l| l.contains("0 failed")).count(), 3);
    let (code, out, _) = run(&["verify", "--n", "5", "--suite", "nothing-matches"]);
    assert_eq!(code, 0);
    assert!(out.is_empty());
    let (code, _, _) = run(&["verify", "--n-max", "20"]);
    assert_eq!(code, 2);
}

#[test]
fn json_reports_follow_the_schema() {
    let (_, out, _) = run(&["--n", "6", "--delta-middle-convention", "ldprime", "--json", "eval", "delta(3,2)"]);
    let v: serde_json::Value = serde_json::from_str(out.trim()).unwrap();
    assert_eq!(v["n"], 6);
    assert_eq!(v["conventions"]["delta_middle"], "ldprime");
    assert_eq!(v["checks"][0]["pass"], true);
    assert!(v["checks"][0]["witness"].is_null());
    assert_eq!(v["tables"], serde_json::json!([]));
}
