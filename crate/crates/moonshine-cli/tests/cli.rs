//! End-to-end tests of the binary: output shape, determinism, data-dir
//! override, and exit codes.

use std::process::Command;

fn run(args: &[&str]) -> (String, String, Option<i32>) {
    let out = Command::new(env!("CARGO_BIN_EXE_moonshine"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        String::from_utf8_lossy(&out.stdout).into_owned(),
        String::from_utf8_lossy(&out.stderr).into_owned(),
        out.status.code(),
    )
}

#[test]
fn f3_command_prints_exact_table() {
    let (stdout, _, code) = run(&["f3", "--trunc", "9"]);
    assert_eq!(code, Some(0));
    assert!(stdout.contains("-3,2"));
    assert!(stdout.contains("4,54000"));
    assert!(stdout.contains("9,-8192000"));
    assert!(stdout.contains("5,-171990"));
}

#[test]
fn f3_command_includes_row_12_at_higher_trunc() {
    let (stdout, _, code) = run(&["f3", "--trunc", "12"]);
    assert_eq!(code, Some(0));
    assert!(stdout.contains("12,88660992"));
}

#[test]
fn f3_output_is_deterministic() {
    let (a, _, _) = run(&["f3", "--trunc", "21"]);
    let (b, _, _) = run(&["f3", "--trunc", "21"]);
    assert_eq!(a, b);
}

#[test]
fn mt_command_3b_and_31a() {
    let (stdout, _, code) = run(&["mt", "3B", "--trunc", "8", "--cutoff", "2500"]);
    assert_eq!(code, Some(0), "{stdout}");
    assert!(stdout.contains("8,-108,trace"), "{stdout}");
    let (stdout, _, code) = run(&["mt", "31A", "--trunc", "5", "--cutoff", "2500"]);
    assert_eq!(code, Some(0));
    assert!(stdout.contains("5,-2,rademacher"), "{stdout}");
}

#[test]
fn mt_unknown_class_fails() {
    let (_, stderr, code) = run(&["mt", "99Z"]);
    assert_eq!(code, Some(2));
    assert!(stderr.contains("unknown conjugacy class"));
}

#[test]
fn trace_command_prints_support_and_value() {
    let (stdout, _, code) = run(&["trace", "--N", "3", "--D1", "-3", "--D2", "5", "--digits", "35"]);
    assert_eq!(code, Some(0));
    assert!(stdout.contains("[3 -3 2]"));
    assert!(stdout.contains("[6 3 1]"));
    // 27 sqrt(5) = 60.3738...
    assert!(stdout.contains("trace = 60.37383539249432"), "{stdout}");
}

#[test]
fn rademacher_command_csv_shape() {
    let (stdout, _, code) = run(&["rademacher", "--N", "1", "--v", "0", "--h", "1", "--n", "1", "--cutoff", "8000"]);
    assert_eq!(code, Some(0));
    let data_line = stdout.lines().last().unwrap();
    let fields: Vec<&str> = data_line.split(',').collect();
    assert_eq!(fields.len(), 9);
    assert_eq!(fields[6], "-240", "nearest integer field: {stdout}");
}

#[test]
fn json_format() {
    let (stdout, _, code) = run(&["f3", "--trunc", "5", "--format", "json"]);
    assert_eq!(code, Some(0));
    assert!(stdout.trim_start().starts_with('['));
    assert!(stdout.contains("\"m\": -3"));
    assert!(stdout.contains("\"c\": 2"));
}

#[test]
fn data_dir_override_and_validation() {
    // a tampered character table must be rejected at load time
    let dir = std::env::temp_dir().join("moonshine-bad-data");
    std::fs::create_dir_all(&dir).unwrap();
    let table = moonshine_core::thompson::EMBEDDED_CHARACTER_TABLE
        .replace("2,1A,248,0,0", "2,1A,249,0,0");
    std::fs::write(dir.join("thompson_character_table.csv"), table).unwrap();
    std::fs::write(
        dir.join("classes.csv"),
        moonshine_core::thompson::EMBEDDED_CLASSES,
    )
    .unwrap();
    let (_, stderr, code) = run(&["f3", "--trunc", "5", "--data-dir", dir.to_str().unwrap()]);
    assert_eq!(code, Some(2));
    assert!(stderr.contains("spot check failed"), "{stderr}");
}

#[test]
fn env_var_data_dir_is_honored() {
    let dir = std::env::temp_dir().join("moonshine-good-data");
    std::fs::create_dir_all(&dir).unwrap();
    std::fs::write(
        dir.join("thompson_character_table.csv"),
        moonshine_core::thompson::EMBEDDED_CHARACTER_TABLE,
    )
    .unwrap();
    std::fs::write(
        dir.join("classes.csv"),
        moonshine_core::thompson::EMBEDDED_CLASSES,
    )
    .unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_moonshine"))
        .args(["f3", "--trunc", "5"])
        .env("MOONSHINE_DATA_DIR", &dir)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
}
