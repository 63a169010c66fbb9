use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_powersum")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn eval_regular_triangle() {
    let o = run(&["eval", "--regular", "--n", "3", "--lambda", "2", "--samples", "8", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("x,value"));
    let values: Vec<f64> = lines.map(|l| l.split(',').nth(1).unwrap().parse().unwrap()).collect();
    assert_eq!(values.len(), 8);
    assert!(values.iter().all(|v| (v - 6.0).abs() < 1e-12));

    let o = run(&["eval", "--regular", "--n", "3", "--lambda", "1", "--samples", "6", "--format", "csv"]);
    let row = stdout(&o).lines().nth(2).unwrap().to_string();
    assert_eq!(row, "1.0471975511965976e0,4.0000000000000000e0");
}

#[test]
fn poles_print_inf() {
    let o = run(&["eval", "--regular", "--n", "4", "--lambda", "-2", "--samples", "4", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).lines().skip(1).all(|l| l.ends_with(",inf")));
    let o = run(&["eval", "--regular", "--n", "4", "--lambda", "-2", "--samples", "4"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["rows"][0]["value"], "inf");
}

#[test]
fn csv_and_json_carry_the_same_numbers() {
    let args = ["eval", "--angles", "0,1.1,pi/2,4", "-a", "1.3", "--lambda", "2.7", "--samples", "50"];
    let json = stdout(&run(&args));
    let mut csv_args = args.to_vec();
    csv_args.extend(["--format", "csv"]);
    let csv = stdout(&run(&csv_args));
    let doc: serde_json::Value = serde_json::from_str(&json).unwrap();
    let rows = doc["rows"].as_array().unwrap();
    let csv_rows: Vec<&str> = csv.lines().skip(1).collect();
    assert_eq!(rows.len(), csv_rows.len());
    // compare printed tokens: the JSON reader's own float parsing may be off by an ulp
    for line in csv_rows {
        let (x, v) = line.split_once(',').unwrap();
        let expected = format!("{{\"value\":{v},\"x\":{x}}}");
        assert!(json.contains(&expected), "{expected} missing");
    }
}

#[test]
fn output_is_deterministic() {
    for args in [
        vec!["verify", "triangle-bound", "--trials", "20", "--lambda", "1,3", "--seed", "4"],
        vec!["conjecture", "characterize", "--n", "4", "--trials", "3", "--seed", "9"],
        vec!["sweep", "--regular", "--n", "5", "--lambda-min", "-1", "--lambda-max", "3", "--lambda-step", "0.5", "--samples", "16"],
    ] {
        let a = run(&args);
        let b = run(&args);
        assert_eq!(a.status.code(), Some(0), "{}", String::from_utf8_lossy(&a.stderr));
        assert_eq!(a.stdout, b.stdout);
    }
}

#[test]
fn extremize_verdicts() {
    let o = run(&["extremize", "--regular", "--n", "5", "-a", "1.25", "--lambda", "7"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["verdict"], "pass");

    let o = run(&["extremize", "--regular", "--n", "3", "--lambda", "3"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["verdict"], "pass");
    assert_eq!(v["max"]["predicted"]["location_class"], "vertex-ray");
    let max = v["max"]["oracle"]["value"].as_f64().unwrap();
    assert!((max - 2.0 * 3f64.sqrt().powi(3)).abs() < 1e-9);

    let o = run(&["extremize", "--regular", "--n", "3", "--lambda", "2"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["verdict"], "constant");

    let o = run(&["extremize", "--regular", "--n", "4", "--lambda", "-1"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["max"]["unbounded"], true);
    assert_eq!(v["max"]["predicted"]["value"], "inf");

    let o = run(&["extremize", "--angles", "0,1,2.5", "--lambda", "1.5"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["verdict"], "oracle-only");
}

#[test]
fn verify_examples_and_exit_codes() {
    let o = run(&["verify", "even-power", "--n", "6", "--k", "all", "--a", "0.7"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["passed"], true);
    assert_eq!(v["total"], 5);

    assert_eq!(run(&["verify", "inverse-square", "--n", "5", "--trials", "100"]).status.code(), Some(0));

    let o = run(&["verify", "two-chord", "--grid", "1000", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("two-chord,2.0000000000000000e0,2.0000000000000000e0"));

    // k outside 1..n has no predicted constant: a configuration error
    assert_eq!(run(&["verify", "even-power", "--n", "4", "--k", "4"]).status.code(), Some(2));

    // at n = 8 the k = n deviation is below the 1e-3 threshold, so the check fails
    let o = run(&["verify", "even-power-sharpness", "--n", "8", "--a", "1"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("FAIL"));
}

#[test]
fn legacy_check_names() {
    assert_eq!(run(&["verify", "theorem3", "--n", "6", "--k", "all", "--a", "0.7"]).status.code(), Some(0));
    assert_eq!(run(&["verify", "chebyshev-bound", "--n", "5", "--trials", "100"]).status.code(), Some(0));
    assert_eq!(run(&["verify", "lemma2", "--grid", "100"]).status.code(), Some(0));
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        vec!["eval", "--n", "3", "--lambda", "1"],
        vec!["eval", "--regular", "--n", "3", "--angles", "0,1", "--lambda", "1"],
        vec!["eval", "--regular", "--n", "3", "--lambda", "1", "-a", "-1"],
        vec!["extremize", "--regular", "--n", "3", "--lambda", "1", "--tolerance", "0.5"],
        vec!["extremize", "--regular", "--n", "3", "--lambda", "1", "--tolerance", "1e-13"],
        vec!["eval", "--angles", "0,0", "--lambda", "1"],
        vec!["verify", "nonsense"],
        vec!["verify", "all", "--n", "3"],
        vec!["conjecture", "minmax", "--lambda", "1", "--restarts", "2"],
        vec!["frobnicate"],
    ] {
        let o = run(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(o.stdout.is_empty(), "{args:?}");
    }
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn output_flag_writes_file() {
    let path = std::env::temp_dir().join(format!("powersum_cli_{}.csv", std::process::id()));
    let o = run(&["eval", "--regular", "--n", "3", "--lambda", "1", "--samples", "3", "--format", "csv", "-o", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    assert_eq!(text.lines().count(), 4);
    let _ = std::fs::remove_file(path);
}

#[test]
fn conjecture_reports_restriction() {
    let o = run(&["conjecture", "characterize", "--n", "3", "--k", "1,2", "--trials", "4"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["restriction"], "candidates constrained to the unit circle");
    assert_eq!(v["trials"].as_array().unwrap().len(), 4);
}
