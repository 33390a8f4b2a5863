//! Command-line behavior: outputs, exit codes and file writing.

use std::process::Command;

use serde_json::Value;
use weilbench::cli::{run_args, Outcome, EXIT_BUDGET, EXIT_INPUT, EXIT_OK};

fn run(args: &[&str]) -> Outcome {
    run_args(std::iter::once("weilbench").chain(args.iter().copied()))
}

fn json(o: &Outcome) -> Value {
    serde_json::from_str(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", o.stdout))
}

#[test]
fn count_reports_the_circle() {
    let o = run(&[
        "count",
        "--field",
        "5",
        "--nvars",
        "2",
        "--poly",
        "X1^2+X2^2-1",
    ]);
    assert_eq!(o.code, EXIT_OK);
    assert_eq!(json(&o)["count"], 4);
    let o = run(&[
        "count",
        "--field",
        "5",
        "--nvars",
        "2",
        "--poly",
        "X1^2+X2^2-1",
        "--extension",
        "2",
    ]);
    assert_eq!(json(&o)["count"], 24);
}

#[test]
fn count_csv_has_a_header() {
    let o = run(&[
        "--format", "csv", "count", "--field", "3", "--nvars", "2", "--poly", "X1",
    ]);
    assert_eq!(o.code, EXIT_OK);
    let mut lines = o.stdout.lines();
    assert!(lines.next().unwrap().contains("count"));
    assert!(lines.next().unwrap().contains(",3,"));
}

#[test]
fn input_errors_exit_3() {
    for args in [
        vec!["count", "--field", "6", "--nvars", "2", "--poly", "X1"],
        vec!["count", "--field", "5", "--nvars", "2", "--poly", "X1 +* 2"],
        vec!["factor", "--field", "5", "--poly", "3"],
        vec!["bounds", "--formula", "weil_curve"],
        vec!["nonsense"],
    ] {
        let o = run(&args);
        assert_eq!(o.code, EXIT_INPUT, "{args:?}: {o:?}");
        assert!(!o.stderr.is_empty());
    }
}

#[test]
fn budget_exhaustion_exits_4() {
    let o = run(&[
        "--budget", "10", "count", "--field", "5", "--nvars", "3", "--poly", "X1",
    ]);
    assert_eq!(o.code, EXIT_BUDGET);
    assert!(o.stderr.contains("budget"));
}

#[test]
fn factor_splits_and_detects_closure_factors() {
    let o = run(&["factor", "--field", "5", "--poly", "X1^2+X2^2"]);
    assert_eq!(o.code, EXIT_OK);
    let v = json(&o);
    assert_eq!(v["nu"], 2);
    assert_eq!(v["factors"].as_array().unwrap().len(), 2);
    let o = run(&["factor", "--field", "3", "--poly", "X1^2+X2^2", "--closure"]);
    let v = json(&o);
    assert_eq!(v["absolutely_irreducible"], false);
    assert_eq!(v["nu"], 0);
}

#[test]
fn bounds_evaluate_and_list() {
    let o = run(&[
        "bounds",
        "--q",
        "7",
        "--n",
        "2",
        "--delta",
        "3",
        "--formula",
        "weil_curve",
    ]);
    assert_eq!(o.code, EXIT_OK);
    let v = json(&o);
    let b = &v["bounds"][0];
    assert_eq!(b["formula"], "weil_curve");
    assert!(b["value"].as_str().unwrap().ends_with("[up]"));
    let o = run(&["bounds", "--catalog"]);
    assert!(o.stdout.contains("cm_hypersurface"));
}

#[test]
fn bertini_sweeps_and_samples() {
    let o = run(&[
        "bertini",
        "--field",
        "2",
        "--nvars",
        "3",
        "--poly",
        "X1+X2+X3",
        "--exhaustive",
    ]);
    assert_eq!(o.code, EXIT_OK, "{}", o.stderr);
    let o = run(&[
        "--seed",
        "3",
        "bertini",
        "--field",
        "3",
        "--nvars",
        "3",
        "--poly",
        "X1^2+X2^2+X3",
        "--samples",
        "300",
    ]);
    assert_eq!(o.code, EXIT_OK);
    let again = run(&[
        "--seed",
        "3",
        "bertini",
        "--field",
        "3",
        "--nvars",
        "3",
        "--poly",
        "X1^2+X2^2+X3",
        "--samples",
        "300",
    ]);
    assert_eq!(o.stdout, again.stdout);
    assert_eq!(json(&o)["b_over_a"]["consistent"], true);
}

#[test]
fn project_round_trips_the_twisted_cubic() {
    let o = run(&[
        "--seed", "1", "project", "--field", "37", "--nvars", "3", "--poly", "X2-X1^2", "--poly",
        "X3-X1^3", "--dim", "1", "--degree", "3", "--check",
    ]);
    assert_eq!(o.code, EXIT_OK, "{}", o.stderr);
    let v = json(&o);
    assert_eq!(v["birational"]["v_off"], v["birational"]["w_off"]);
    assert_eq!(v["inverse_section"]["pass"], true);
}

#[test]
fn project_below_the_regularity_threshold_is_rejected() {
    let o = run(&[
        "project", "--field", "5", "--nvars", "3", "--poly", "X2-X1^2", "--poly", "X3-X1^3",
        "--dim", "1", "--degree", "3",
    ]);
    assert_eq!(o.code, EXIT_INPUT, "{o:?}");
}

#[test]
fn campaign_writes_json_and_csv() {
    let dir = std::env::temp_dir().join(format!("weilbench-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let stem = dir.join("run");
    let args = [
        "--seed",
        "9",
        "--out",
        stem.to_str().unwrap(),
        "campaign",
        "--fields",
        "5,7",
        "--nvars",
        "2",
        "--min-degree",
        "2",
        "--max-degree",
        "3",
        "--instances",
        "6",
    ];
    let o = run(&args);
    assert_eq!(o.code, EXIT_OK, "{}", o.stderr);
    assert_eq!(json(&o)["violations"], 0);
    let report = std::fs::read_to_string(stem.with_extension("json")).unwrap();
    let csv = std::fs::read_to_string(stem.with_extension("csv")).unwrap();
    assert!(csv.starts_with("instance,field,q,n,delta,seed"));
    assert!(!stem.exists());
    run(&args);
    assert_eq!(
        std::fs::read_to_string(stem.with_extension("json")).unwrap(),
        report
    );
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn out_flag_writes_the_report() {
    let path = std::env::temp_dir().join(format!("weilbench-count-{}.json", std::process::id()));
    let o = run(&[
        "--out",
        path.to_str().unwrap(),
        "count",
        "--field",
        "3",
        "--nvars",
        "1",
        "--poly",
        "X1^2-1",
    ]);
    assert_eq!(o.code, EXIT_OK);
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["count"], 2);
    std::fs::remove_file(path).unwrap();
}

#[test]
fn binary_propagates_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_weilbench");
    let ok = Command::new(bin)
        .args(["count", "--field", "2", "--nvars", "2", "--poly", "X1*X2"])
        .output()
        .unwrap();
    assert_eq!(ok.status.code(), Some(EXIT_OK));
    assert!(String::from_utf8_lossy(&ok.stdout).contains("\"count\": 3"));
    let bad = Command::new(bin)
        .args(["count", "--field", "4x"])
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(EXIT_INPUT));
}
