//! End-to-end runs of the binary: flags, formats, exit codes and
//! reproducibility of emitted artifacts.

use std::process::{Command, Output};

fn repfn(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_repfn"))
        .args(args)
        .env_remove("REPFN_WORKERS")
        .output()
        .expect("binary runs")
}

fn stdout_of(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf8 output")
}

fn json_of(out: &Output) -> serde_json::Value {
    serde_json::from_str(&stdout_of(out)).expect("json output")
}

fn code_of(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

#[test]
fn tm_prints_the_level_three_partition() {
    let out = repfn(&["tm", "--level", "3"]);
    assert_eq!(code_of(&out), 0);
    let text = stdout_of(&out);
    assert!(text.contains("evil   {0,3,5,6}"), "{text}");
    assert!(text.contains("odious {1,2,4,7}"), "{text}");
}

#[test]
fn tm_classify_reports_class_and_exponent() {
    let out = repfn(&["tm", "--classify", "7", "--format", "json"]);
    assert_eq!(code_of(&out), 0);
    let v = json_of(&out);
    assert_eq!(v["class"], "ALL_IN_A");
    assert_eq!(v["exponent"], 3);

    let out = repfn(&["tm", "--classify", "5"]);
    assert!(stdout_of(&out).contains("MIXED"));
}

#[test]
fn tm_without_arguments_is_a_usage_error() {
    let out = repfn(&["tm"]);
    assert_eq!(code_of(&out), 2);
    let out = repfn(&["tm", "--level", "0"]);
    assert_eq!(code_of(&out), 2);
}

#[test]
fn construct_emits_the_pair_and_intersection() {
    let out = repfn(&["construct", "--l", "1", "--horizon", "27", "--format", "json"]);
    assert_eq!(code_of(&out), 0);
    let v = json_of(&out);
    assert_eq!(v["r1"], 6);
    assert_eq!(v["r2"], 7);
    assert_eq!(v["m"], 14);
    assert_eq!(
        v["intersection"]["members"],
        serde_json::json!([6, 7, 20, 21])
    );
    assert_eq!(v["c"]["bound"], 27);
}

#[test]
fn solve_family_expands_to_the_closed_form() {
    let by_spec = repfn(&["solve", "--spec", "pair:6,7,14", "--horizon", "27", "--format", "json"]);
    let by_family = repfn(&["solve", "--family", "l=1", "--horizon", "27", "--format", "json"]);
    assert_eq!(code_of(&by_spec), 0);
    assert_eq!(stdout_of(&by_spec), stdout_of(&by_family));
    let v = json_of(&by_spec);
    assert_eq!(v["status"], "UNIQUE");
}

#[test]
fn solve_reports_contradictions_plainly() {
    let out = repfn(&["solve", "--spec", "finite:{1}", "--horizon", "2"]);
    assert_eq!(code_of(&out), 0);
    assert_eq!(stdout_of(&out), "UNSAT at 1\n");

    let bad = repfn(&["solve", "--spec", "pair:7,6,14", "--horizon", "10"]);
    assert_eq!(code_of(&bad), 2);

    let neither = repfn(&["solve", "--horizon", "10"]);
    assert_eq!(code_of(&neither), 2);
}

#[test]
fn search_pair_finds_the_level_one_survivor() {
    let out = repfn(&[
        "search", "pair", "--m-max", "14", "--parity", "even", "--factor", "8",
        "--format", "json",
    ]);
    assert_eq!(code_of(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let v = json_of(&out);
    assert_eq!(v["passed"], true);
    assert_eq!(v["survivors"][0]["params"], serde_json::json!([6, 7, 14]));
}

#[test]
fn search_output_is_reproducible_modulo_runtime() {
    let args = [
        "search", "pair", "--m-max", "12", "--parity", "both", "--factor", "8",
        "--format", "json",
    ];
    let mut a = json_of(&repfn(&args));
    let mut b = json_of(&repfn(&args));
    a["runtime_ms"] = serde_json::json!(0);
    b["runtime_ms"] = serde_json::json!(0);
    assert_eq!(a, b);
}

#[test]
fn worker_flag_and_env_do_not_change_the_artifact() {
    let base = repfn(&["search", "interval", "--m-max", "16", "--format", "csv"]);
    let flagged = repfn(&[
        "search", "interval", "--m-max", "16", "--format", "csv", "--workers", "3",
    ]);
    assert_eq!(stdout_of(&base), stdout_of(&flagged));

    let via_env = Command::new(env!("CARGO_BIN_EXE_repfn"))
        .args(["search", "interval", "--m-max", "16", "--format", "csv"])
        .env("REPFN_WORKERS", "2")
        .output()
        .unwrap();
    assert_eq!(stdout_of(&base), stdout_of(&via_env));

    let zero_workers = repfn(&["search", "interval", "--m-max", "16", "--workers", "0"]);
    assert_eq!(code_of(&zero_workers), 2);
}

#[test]
fn search_csv_rows_carry_tuple_status() {
    let out = repfn(&["search", "single", "--m-max", "7", "--include-r-zero", "--format", "csv"]);
    assert_eq!(code_of(&out), 0);
    let text = stdout_of(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("r,m,status,fail_index"));
    assert!(text.lines().any(|l| l == "0,2,UNSAT,1"), "{text}");
    assert!(text.lines().any(|l| l.starts_with("3,7,UNIQUE")), "{text}");
}

#[test]
fn search_parameter_floors_are_usage_errors() {
    assert_eq!(code_of(&repfn(&["search", "pair", "--m-max", "2"])), 2);
    assert_eq!(
        code_of(&repfn(&["search", "pair", "--m-max", "14", "--factor", "2"])),
        2
    );
    assert_eq!(code_of(&repfn(&["search", "interval", "--m-max", "3"])), 2);
    assert_eq!(code_of(&repfn(&["search", "single", "--m-max", "1"])), 2);
}

#[test]
fn verify_commands_exit_by_assertion() {
    let out = repfn(&["verify", "construction", "--l", "1", "--horizon", "1000"]);
    assert_eq!(code_of(&out), 0);
    assert!(stdout_of(&out).contains("PASS"));

    let out = repfn(&["verify", "interval-pair", "--l", "1", "--format", "csv"]);
    assert_eq!(code_of(&out), 0);
    assert!(stdout_of(&out).starts_with("check,passed,detail"));

    assert_eq!(code_of(&repfn(&["verify", "interval-pair", "--l", "12"])), 2);
}

#[test]
fn identity_command_distinguishes_the_two_outcomes() {
    let holds = repfn(&[
        "identity", "--set", "{0,3,5,6,7,8,10,13,15,16,18,20}",
        "--r1", "6", "--r2", "7", "--m", "20",
    ]);
    assert_eq!(code_of(&holds), 0);
    assert_eq!(stdout_of(&holds), "identity holds\n");

    let broken = repfn(&[
        "identity", "--set", "{0,3,5,6,7,8,10,13,15,16,18,19}",
        "--r1", "6", "--r2", "7", "--m", "20", "--format", "json",
    ]);
    assert_eq!(code_of(&broken), 1);
    let v = json_of(&broken);
    assert_eq!(v["holds"], false);
    assert!(v["first_mismatch"].is_u64());

    let invalid = repfn(&[
        "identity", "--set", "{3,5,6,7}", "--r1", "6", "--r2", "7", "--m", "20",
    ]);
    assert_eq!(code_of(&invalid), 2);
}

#[test]
fn output_path_receives_the_artifact() {
    let dir = std::env::temp_dir().join(format!("repfn-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("tm.json");
    let out = repfn(&[
        "tm", "--level", "2", "--format", "json", "--output",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code_of(&out), 0);
    assert!(stdout_of(&out).is_empty());
    let contents: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(contents["evil"]["members"], serde_json::json!([0, 3]));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn unknown_subcommands_are_usage_errors() {
    assert_eq!(code_of(&repfn(&["frobnicate"])), 2);
    assert_eq!(code_of(&repfn(&["search", "pair", "--format", "yaml", "--m-max", "5"])), 2);
    // csv is reserved for search and verify artifacts
    assert_eq!(code_of(&repfn(&["tm", "--level", "3", "--format", "csv"])), 2);
}
