use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use enforcement::catalog;
use tempfile::TempDir;

fn enforce(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_enforce"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn write_json<T: serde::Serialize>(dir: &Path, name: &str, value: &T) -> String {
    let path = dir.join(name);
    fs::write(&path, serde_json::to_string_pretty(value).unwrap()).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn stage_equilibria_of_the_builtin_game() {
    let o = enforce(&["analyze-stage", "--game", "elvik-stage"]);
    assert!(o.status.success());
    let first = stdout(&o).lines().next().unwrap().to_string();
    assert_eq!(first, "pure NE: none; mixed NE: drivers (1/2,1/2), police (2/7,5/7)");
    assert!(stdout(&o).contains("E 2/7 (≈ 0.285714)"));
}

#[test]
fn verify_reads_game_and_automaton_files() {
    let dir = TempDir::new().unwrap();
    let game = write_json(dir.path(), "elvik.json", &catalog::elvik_stage());
    let auto = write_json(dir.path(), "auto1.json", &catalog::automaton_i());
    let o = enforce(&["verify", "--game", &game, "--automaton", &auto, "--delta", "9/10"]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stdout(&o).starts_with("Not_NE; witness Drivers@ω_(DE,DS)→S"), "{}", stdout(&o));
}

#[test]
fn expect_flag_sets_the_exit_status() {
    let base = ["verify", "--game", "elvik-stage", "--automaton", "automaton-i", "--delta", "9/10"];
    let hit = enforce(&[&base[..], &["--expect", "Not_NE"]].concat());
    assert_eq!(hit.status.code(), Some(0));
    let miss = enforce(&[&base[..], &["--expect", "SPE"]].concat());
    assert_eq!(miss.status.code(), Some(1));
    assert!(stderr(&miss).contains("expected SPE, got Not_NE"));
    assert!(stdout(&miss).starts_with("Not_NE"));
}

#[test]
fn verify_json_carries_classification_and_values() {
    let o = enforce(&[
        "verify",
        "--game",
        "elvik-stage",
        "--automaton",
        "stage-nash-repetition",
        "--delta",
        "1/2",
        "--format",
        "json",
    ]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["classification"], "SPE");
    assert_eq!(v["values"]["ω_NE"]["Police"]["exact"], serde_json::json!([-10000, 1]));
}

#[test]
fn thresholds_print_exact_and_decimal() {
    let o = enforce(&["thresholds", "--n", "2", "--delta", "99/100"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("10000/29701 (≈ 0.336689)"), "{}", stdout(&o));
}

#[test]
fn thresholds_csv_uses_sweep_columns() {
    let o = enforce(&["thresholds", "--n", "2", "--delta", "99/100", "--format", "csv"]);
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "n,delta_num,delta_den,driver_bound,police_bound,feasible,gamma_bruteforce,gamma_closed_form,b,alpha,beta"
    );
    assert_eq!(lines.next().unwrap(), "2,99,100,10000/29701,,,,,,,");
}

#[test]
fn decimals_are_rejected_with_exit_2() {
    let o = enforce(&["thresholds", "--n", "2", "--delta", "0.99"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("--delta"), "{}", stderr(&o));
    let o = enforce(&["sweep", "--n", "1", "--delta", "1/2,0.9", "--speeding", "1/3", "--alpha", "2", "--beta", "1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("--delta `1/2,0.9`: item 2"), "{}", stderr(&o));
}

#[test]
fn malformed_files_report_their_location() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("broken.json");
    fs::write(&path, "{\n  \"players\": [\"A\", \"B\"],\n  \"actions\": 7\n}\n").unwrap();
    let o = enforce(&["analyze-stage", "--game", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let err = stderr(&o);
    assert!(err.contains(&format!("{}:3:", path.display())), "{err}");
}

#[test]
fn unknown_builtins_list_the_catalog() {
    let o = enforce(&["analyze-stage", "--game", "no-such-game"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("short-period(N,alpha,beta)"));
    let o = enforce(&["verify", "--game", "elvik-stage", "--automaton", "grim", "--delta", "1/2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("automaton-ii(b,epsilon)"));
}

#[test]
fn infeasible_synthesis_exits_3_with_both_bounds() {
    let o = enforce(&[
        "synthesize", "--periods", "12", "--punishment", "2", "--delta", "19/20", "--speeding", "9/25", "--alpha",
        "40000", "--beta", "10000",
    ]);
    assert_eq!(o.status.code(), Some(3));
    let err = stderr(&o);
    assert!(err.contains("400/1141 (≈ 0.350570)") && err.contains("1/4 (≈ 0.250000)"), "{err}");
}

#[test]
fn synthesized_automaton_round_trips_through_verify() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("auto.json");
    let common = [
        "--periods", "12", "--punishment", "2", "--delta", "19/20", "--speeding", "9/25", "--alpha", "20000", "--beta",
        "10000",
    ];
    let o = enforce(&[&["synthesize"][..], &common, &["--expect", "NE_not_SPE"]].concat());
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let o = enforce(
        &[&["synthesize"][..], &common, &["--subsidize", "--automaton-out", out.to_str().unwrap()]].concat(),
    );
    assert!(o.status.success(), "{}", stderr(&o));
    let o = enforce(&[
        "verify",
        "--game",
        "short-period(12,20000,10000)",
        "--automaton",
        out.to_str().unwrap(),
        "--delta",
        "19/20",
        "--expect",
        "SPE",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}{}", stdout(&o), stderr(&o));
}

#[test]
fn subsidy_reports_both_gamma_forms() {
    let o = enforce(&[
        "subsidy", "--periods", "12", "--punishment", "2", "--delta", "19/20", "--speeding", "9/25", "--alpha",
        "20000", "--beta", "10000",
    ]);
    let text = stdout(&o);
    assert!(text.contains("binding constraint: m = 2"), "{text}");
    assert!(text.contains("gamma (brute force): 293600"), "{text}");
    assert!(text.contains("[differs from brute force]"), "{text}");
    assert!(text.contains("with subsidy: SPE"), "{text}");
}

#[test]
fn sweep_rows_follow_grid_order_and_are_reproducible() {
    let args = [
        "sweep", "--n", "1..=3", "--delta", "0,1/2,99/100", "--speeding", "1/3,2/5", "--alpha", "20000",
        "--beta-affine", "5000,10000", "--format", "csv",
    ];
    let a = enforce(&args);
    let b = enforce(&args);
    assert!(a.status.success(), "{}", stderr(&a));
    assert_eq!(a.stdout, b.stdout);
    let text = stdout(&a);
    assert!(!text.contains('\r'));
    let rows: Vec<&str> = text.lines().collect();
    assert_eq!(rows.len(), 1 + 3 * 3 * 2);
    let keys: Vec<(u32, String, String)> = rows[1..]
        .iter()
        .map(|r| {
            let f: Vec<&str> = r.split(',').collect();
            (f[0].parse().unwrap(), format!("{}/{}", f[1], f[2]), f[8].to_string())
        })
        .collect();
    let mut sorted = keys.clone();
    sorted.sort_by_key(|(n, _, _)| *n);
    assert_eq!(keys, sorted);
    assert_eq!(keys[0], (1, "0/1".into(), "1/3".into()));
    assert_eq!(keys[1], (1, "0/1".into(), "2/5".into()));
    assert_eq!(keys[2], (1, "1/2".into(), "1/3".into()));
    // β = 5000 + 10000·b at b = 1/3.
    assert!(rows[1].ends_with(",1/3,20000,25000/3"), "{}", rows[1]);
    // Subsidy columns are empty at δ = 0.
    assert!(rows[1].contains(",,,"), "{}", rows[1]);
}

#[test]
fn simulate_emits_trajectory_csv() {
    let dir = TempDir::new().unwrap();
    let spec = dir.path().join("spec.json");
    fs::write(
        &spec,
        r#"{"b0": [4, 5], "down_step": {"kind": "affine", "shift": [-1, 10]},
            "up_step": {"kind": "affine", "shift": [1, 10]}, "switch_up": [7, 10], "horizon": 8}"#,
    )
    .unwrap();
    let out = dir.path().join("traj.csv");
    let o = enforce(&[
        "simulate",
        "--spec",
        spec.to_str().unwrap(),
        "--format",
        "csv",
        "--output",
        out.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(o.stdout.is_empty());
    let text = fs::read_to_string(&out).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "t,action,b_num,b_den");
    assert_eq!(lines[4], "3,DE,1,2");
    assert_eq!(lines.len(), 9);
    let o = enforce(&["simulate", "--spec", spec.to_str().unwrap()]);
    assert!(stdout(&o).contains("cycle: period 6 from t = 0"));
}

#[test]
fn bad_spec_fields_are_rejected() {
    let dir = TempDir::new().unwrap();
    let spec = dir.path().join("spec.json");
    fs::write(&spec, r#"{"b0": [4, 5], "down_step": {"kind": "identity"}, "up_step": {"kind": "identity"}, "horizon": 3, "extra": 1}"#)
        .unwrap();
    let o = enforce(&["simulate", "--spec", spec.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("extra"), "{}", stderr(&o));
}

#[test]
fn induct_reports_the_pivot_probability() {
    let o = enforce(&["induct", "--tree", "elvik-tree-drivers-first", "--pivot", "R"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let text = stdout(&o);
    assert!(text.contains("[root] Drivers"));
    assert!(text.contains("P(Enforce) is above 2/7 (≈ 0.285714)"), "{text}");
    let o = enforce(&["induct", "--tree", "elvik-tree-police-first", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(v["path"].is_array());
}

#[test]
fn csv_is_refused_where_it_has_no_meaning() {
    let o = enforce(&["analyze-stage", "--game", "elvik-stage", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(2));
}
