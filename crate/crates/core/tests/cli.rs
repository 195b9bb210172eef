mod common;

use std::io::Write;
use std::process::{Command, Output};

use serde_json::Value;

fn braid3(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_braid3"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn batch_file(contents: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(contents.as_bytes()).unwrap();
    f
}

fn json_lines(o: &Output) -> Vec<Value> {
    stdout(o)
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect()
}

#[test]
fn analyze_minus_8_20() {
    let o = braid3(&["analyze", "--json", "h x y^-5"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(
        v["normal_form"],
        serde_json::json!({"family": "1", "d": 1, "a": [5]})
    );
    assert_eq!(v["determinant"], 9);
    assert_eq!(v["qa"], true);
    assert_eq!(v["delta"], serde_json::json!({"num": 0, "den": 1}));
    assert_eq!(v["word"], "h x y^-5");
}

#[test]
fn analyze_lens_space_l41() {
    let o = braid3(&["analyze", "--json", "x x y x x"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(
        v["normal_form"],
        serde_json::json!({"family": "2", "d": 1, "m": -1})
    );
    assert_eq!(v["l_space"], true);
    assert_eq!(
        v["correction_term"],
        serde_json::json!({"num": 3, "den": 4})
    );
}

#[test]
fn analyze_empty_word() {
    let o = braid3(&["analyze", "--json", ""]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(
        v["normal_form"],
        serde_json::json!({"family": "2", "d": 0, "m": 0})
    );
    assert_eq!(v["components"], 3);
    assert_eq!(v["determinant"], 0);
    assert_eq!(v["b1"], 2);
    let pretty = stdout(&braid3(&["analyze", ""]));
    assert!(
        pretty.contains("not a rational homology sphere"),
        "{pretty}"
    );
}

#[test]
fn analyze_flags_add_blocks() {
    let o = braid3(&[
        "analyze",
        "--json",
        "--oracle",
        "--torus-bundle",
        "x y^-1 x y^-1",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["oracle"]["agrees"], true);
    assert_eq!(v["oracle"]["determinant"], 5);
    assert_eq!(
        v["torus_bundle"]["s0"]["frees"],
        serde_json::json!([{"rank": 1, "num": -1, "den": 2}])
    );
}

#[test]
fn parse_error_exit_code() {
    let o = braid3(&["analyze", "x z"]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("token 2"), "{err}");
}

#[test]
fn conjugate_command() {
    assert_eq!(braid3(&["conjugate", "x", "y"]).status.code(), Some(0));
    assert_eq!(braid3(&["conjugate", "x", "x^-1"]).status.code(), Some(1));
    let o = braid3(&["conjugate", "--json", "x y^-1 x y^-2", "x y^-2 x y^-1"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["conjugate"], true);
}

#[test]
fn batch_of_valid_words() {
    let f = batch_file("# comment\nx y x y\n\nh\nx y^-1 x y^-1\n");
    let o = braid3(&["batch", "--json", f.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let lines = json_lines(&o);
    assert_eq!(lines.len(), 4);
    assert_eq!(lines[0]["word"], "x y x y");
    assert_eq!(lines[1]["word"], "h");
    assert_eq!(lines[2]["word"], "x y^-1 x y^-1");
    assert_eq!(lines[3]["summary"], "3 ok, 0 failed");
}

#[test]
fn batch_with_a_bad_token() {
    let f = batch_file("x y\nx q\ny^-1 x\n");
    let o = braid3(&["batch", "--json", f.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let lines = json_lines(&o);
    assert_eq!(lines.len(), 4);
    assert_eq!(lines[1]["line"], 2);
    assert_eq!(lines[1]["input"], "x q");
    assert!(lines[1]["error"].as_str().unwrap().contains("`q`"));
    assert_eq!(lines[3]["summary"], "2 ok, 1 failed");
    let pretty = stdout(&braid3(&["batch", f.path().to_str().unwrap()]));
    assert!(pretty.trim_end().ends_with("2 ok, 1 failed"), "{pretty}");
}

#[test]
fn batch_of_empty_file() {
    let f = batch_file("");
    let o = braid3(&["batch", f.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "0 ok, 0 failed");
}

#[test]
fn batch_missing_file_exit_code() {
    assert_eq!(
        braid3(&["batch", "/nonexistent/words.txt"]).status.code(),
        Some(4)
    );
}

#[test]
fn batch_json_round_trips_byte_identically() {
    let f = batch_file("h x y^-5\nx x y x x\ny x^5\nx^-2 y^-1\n");
    let o = braid3(&[
        "batch",
        "--json",
        "--torus-bundle",
        f.path().to_str().unwrap(),
    ]);
    let out = stdout(&o);
    let lines: Vec<&str> = out.lines().collect();
    let (summary, reports) = lines.split_last().unwrap();
    assert_eq!(serde_json::from_str::<Value>(summary).unwrap()["ok"], 4);
    for &line in reports {
        let report: braid3::InvariantReport = serde_json::from_str(line).unwrap();
        assert_eq!(serde_json::to_string(&report).unwrap(), line);
    }
}

#[test]
fn oracle_fuzz_batch_never_reports_inconsistency() {
    let mut rng = common::rng(11);
    let words: Vec<String> = (0..300)
        .map(|_| common::random_word(&mut rng, 16).to_string())
        .collect();
    let f = batch_file(&words.iter().map(|w| format!("{w}\n")).collect::<String>());
    let o = braid3(&["batch", "--json", "--oracle", f.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    // Empty words become blank lines and are skipped.
    let nonblank = words.iter().filter(|w| !w.is_empty()).count();
    let lines = json_lines(&o);
    assert_eq!(lines.len(), nonblank + 1);
    assert_eq!(lines.last().unwrap()["failed"], 0);
}
