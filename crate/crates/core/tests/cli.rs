use std::process::{Command, Output};

use cubic_pcf::cli::{SweepRow, SWEEP_COLUMNS};
use cubic_pcf::rigidity::TransversalityReport;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cubic-pcf"))
        .args(args)
        .env_remove("CUBIC_PCF_MAX_N")
        .env_remove("CUBIC_PCF_SEED")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn verify_first_pair_passes() {
    let o = run(&["verify", "--n", "1", "--m", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("degree 3 (expected 3), lead -64"), "{text}");
    assert!(text.contains("J = 1 mod 3 yes"), "{text}");
    assert!(text.contains("overall: PASS"), "{text}");
}

#[test]
fn verify_json_round_trips() {
    for args in [
        ["verify", "--n", "1", "--m", "1", "--emit", "json"].as_slice(),
        &["verify", "--n", "2", "--m", "1", "--tail-i", "1", "--tail-j", "1", "--emit", "json"],
    ] {
        let o = run(args);
        assert_eq!(o.status.code(), Some(0));
        let text = stdout(&o);
        let report: TransversalityReport = serde_json::from_str(&text).unwrap();
        assert!(report.overall);
        let again = serde_json::to_string_pretty(&report).unwrap() + "\n";
        assert_eq!(again, text);
        let raw: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert!(raw["K_poly_present"].as_bool().unwrap());
        assert!(raw["solutions"][0]["jacobian_value"]["re"].is_number());
        assert!(raw["solutions"][0]["residual_F"].is_number());
    }
}

#[test]
fn output_is_deterministic() {
    let args = ["sweep", "--n", "1..=2", "--m", "1..=2", "--all-tails", "--emit", "json"];
    let a = run(&args);
    let b = run(&[&args[..], &["--jobs", "1"]].concat());
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn sweep_csv_rows() {
    let o = run(&["sweep", "--n", "1..=2", "--m", "1..=2", "--tails", "00", "--emit", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let mut reader = csv::Reader::from_reader(o.stdout.as_slice());
    let header: Vec<String> = reader.headers().unwrap().iter().map(String::from).collect();
    assert_eq!(header, SWEEP_COLUMNS);
    let rows: Vec<csv::StringRecord> = reader.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 4);
    for r in &rows {
        assert_eq!(&r[4], &r[5], "degree equals expected");
        assert_eq!(&r[10], "true");
    }
}

#[test]
fn sweep_with_tails_and_json_rows() {
    let o = run(&["sweep", "--n", "1", "--m", "1", "--tails", "00,11", "--emit", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let rows: Vec<SweepRow> = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(rows.len(), 2);
    assert_eq!((rows[1].tail_i, rows[1].tail_j), (1, 1));
    assert!(rows.iter().all(|r| r.overall && r.error.is_none()));
}

#[test]
fn empty_sweep() {
    let o = run(&["sweep", "--n", "2..2", "--emit", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().count(), 1);
}

#[test]
fn sweep_row_failure_is_recorded() {
    let o = run(&["--max-n", "1", "sweep", "--n", "1..=2", "--m", "1", "--emit", "json"]);
    assert_eq!(o.status.code(), Some(1));
    let rows: Vec<SweepRow> = serde_json::from_slice(&o.stdout).unwrap();
    assert!(rows[0].overall);
    assert!(!rows[1].overall && rows[1].error.is_some());
}

#[test]
fn artin_schreier_with_oracle() {
    let o = run(&["artin-schreier", "--p", "3", "--n", "1", "--m", "2", "--oracle"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("closed form: A^9 + A^3 + 2*B^3"), "{text}");
    assert!(text.contains("matched sign: +1"), "{text}");
    let o = run(&["artin-schreier", "--p", "4", "--n", "1", "--m", "1"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn profile_table() {
    let o = run(&["profile", "--n", "2", "--emit", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let bounds: Vec<&str> = text.lines().skip(1).map(|l| l.split(',').nth(2).unwrap()).take(4).collect();
    assert_eq!(bounds, ["0", "-1", "-2", "1"]);
}

#[test]
fn resultant_methods_agree() {
    let o = run(&["resultant", "--n", "1", "--m", "1", "--method", "both", "--emit", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["degree"], 3);
    assert_eq!(v["lead_coeff"], "-64");
    assert_eq!(v["ord3_lead"], 0);
    assert_eq!(v["mod3_leading_term"], "2*y^3");
    assert_eq!(v["method_agreement"], true);
}

#[test]
fn solve_lists_points() {
    let o = run(&["solve", "--n", "1", "--m", "1", "--emit", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().count(), 4);
}

#[test]
fn usage_and_resource_errors_exit_two() {
    assert_eq!(run(&["verify", "--n", "1"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "--n", "0", "--m", "1"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "--n", "1", "--m", "1", "--tail-i", "2"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["--max-n", "2", "profile", "--n", "3"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "--n", "5", "--m", "5"]).status.code(), Some(2));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn environment_limits_and_flag_precedence() {
    let with_env = |args: &[&str]| {
        Command::new(env!("CARGO_BIN_EXE_cubic-pcf")).args(args).env("CUBIC_PCF_MAX_N", "2").output().unwrap()
    };
    assert_eq!(with_env(&["profile", "--n", "3"]).status.code(), Some(2));
    assert_eq!(with_env(&["--max-n", "3", "profile", "--n", "3"]).status.code(), Some(0));
}

#[test]
fn out_file() {
    let path = std::env::temp_dir().join(format!("cubic-pcf-{}.json", std::process::id()));
    let o = run(&["verify", "--n", "1", "--m", "2", "--emit", "json", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let report: TransversalityReport =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    std::fs::remove_file(&path).unwrap();
    assert_eq!(report.resultant_degree, 9);
}
