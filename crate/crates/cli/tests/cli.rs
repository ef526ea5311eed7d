use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_multstrata"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("spawn multstrata")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("bad JSON ({e}): {}", stdout(out)))
}

fn write_form(dir: &Path, name: &str, text: &str) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn nodal_cubic(dir: &Path) -> PathBuf {
    // x_0 x_1 x_2 + x_1^3
    write_form(dir, "cubic.form", "r=2 d=3\n1 1 1 1\n1 0 3 0\n")
}

#[test]
fn threshold_text_starts_with_value() {
    let out = run(&["threshold", "-r", "1", "-d", "2"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out).lines().next(), Some("3"));
}

#[test]
fn threshold_json_fields() {
    let out = run(&["threshold", "-r", "2", "-d", "3", "--json"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["threshold"], 4);
    assert_eq!(v["r"], 2);
    assert_eq!(v["pairs"].as_array().unwrap().len(), 6);
}

#[test]
fn index_of_square_of_last_variable() {
    let dir = TempDir::new().unwrap();
    let f = write_form(dir.path(), "f.form", "r=1 d=2\n1 0 2\n");
    let out = run(&["index", "--input", f.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["delta_sq"], "2");
    assert_eq!(v["lambda"], serde_json::json!([-1, 1]));
}

#[test]
fn index_of_semistable_form_has_no_subgroup() {
    let dir = TempDir::new().unwrap();
    let f = write_form(dir.path(), "f.form", "r=1 d=2\n1 1 1\n");
    let v = json(&run(&["index", "--input", f.to_str().unwrap()]));
    assert_eq!(v["delta_sq"], "0");
    assert!(v["lambda"].is_null());
}

#[test]
fn classify_nodal_cubic_at_origin() {
    let dir = TempDir::new().unwrap();
    let f = nodal_cubic(dir.path());
    let out = run(&["classify", "--input", f.to_str().unwrap(), "--point", "1,0,0", "--N", "auto"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["m_band"], 2);
    assert_eq!(v["m_direct"], 2);
    assert_eq!(v["agreed"], true);
    assert_eq!(v["N"], 4);
}

#[test]
fn classify_below_threshold_is_usage_error() {
    let dir = TempDir::new().unwrap();
    let f = nodal_cubic(dir.path());
    let out = run(&["classify", "--input", f.to_str().unwrap(), "--N", "1"]);
    assert_eq!(code(&out), 2);
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("threshold 4"), "{err}");
}

#[test]
fn mult_at_points() {
    let dir = TempDir::new().unwrap();
    let f = write_form(dir.path(), "sq.form", "r=1 d=2\n1 2 0\n");
    let p = f.to_str().unwrap();
    assert_eq!(stdout(&run(&["mult", "--input", p, "--point", "0,1"])).trim(), "2");
    assert_eq!(stdout(&run(&["mult", "--input", p, "--point", "1,0"])).trim(), "0");
    assert_eq!(stdout(&run(&["mult", "--input", p])).trim(), "0");
    let v = json(&run(&["mult", "--input", p, "--point", "-1/2,3", "--json"]));
    assert_eq!(v["m"], 0);
}

#[test]
fn destab_output_parses_back() {
    let dir = TempDir::new().unwrap();
    let f = write_form(dir.path(), "f.form", "r=1 d=2\n1 1 1\n");
    let out = run(&["destab", "--input", f.to_str().unwrap(), "--N", "2"]);
    assert_eq!(code(&out), 0);
    let g = multstrata::parse_form(&stdout(&out)).unwrap();
    assert_eq!(g.degree(), 4);
    assert_eq!(g.terms().len(), 1);
}

#[test]
fn form_from_stdin() {
    use std::io::Write;
    use std::process::Stdio;
    let mut child = bin()
        .args(["mult", "--input", "-", "--point", "0,1"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(b"r=1 d=3\n1 3 0\n").unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out).trim(), "3");
}

#[test]
fn bands_membership() {
    let v = json(&run(&["bands", "-r", "1", "-d", "2", "--N", "3", "--point", "2,3"]));
    assert_eq!(v["in_q"], true);
    let contained: Vec<bool> = v["results"]
        .as_array()
        .unwrap()
        .iter()
        .map(|b| b["contained"].as_bool().unwrap())
        .collect();
    assert_eq!(contained, vec![true, false, false]);
    assert_eq!(v["results"][1]["l_sq"], "9/2");
}

#[test]
fn verify_passes_and_is_reproducible() {
    let args = ["verify", "-r", "2", "-d", "3", "--count", "3", "--seed", "11", "--jobs", "2"];
    let a = run(&args);
    assert_eq!(code(&a), 0);
    let v = json(&a);
    assert_eq!(v["failed"], 0);
    assert_eq!(v["agreed"], v["total"]);
    assert_eq!(stdout(&a), stdout(&run(&args)));
}

#[test]
fn verify_below_threshold_is_usage_error() {
    assert_eq!(code(&run(&["verify", "-r", "2", "-d", "3", "--N", "2"])), 2);
}

#[test]
fn gen_writes_files_with_requested_multiplicity() {
    let dir = TempDir::new().unwrap();
    let out = run(&[
        "gen", "-r", "2", "-d", "4", "--m", "3", "--count", "4", "--seed", "5", "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    let mut files: Vec<_> = std::fs::read_dir(dir.path()).unwrap().map(|e| e.unwrap().path()).collect();
    files.sort();
    assert_eq!(files.len(), 4);
    for path in files {
        let m = run(&["mult", "--input", path.to_str().unwrap()]);
        assert_eq!(stdout(&m).trim(), "3", "{}", path.display());
    }
}

#[test]
fn gen_json_round_trips() {
    let out = run(&["gen", "-r", "1", "-d", "3", "--count", "2", "--json"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(!text.contains('.'), "floating value in {text}");
    let forms: Vec<multstrata::HomogeneousForm> = serde_json::from_str(&text).unwrap();
    assert_eq!(forms.len(), 8);
    let again = serde_json::to_value(&forms).unwrap();
    assert_eq!(again, json(&out));
}

#[test]
fn bound_exit_codes() {
    let dir = TempDir::new().unwrap();
    // x_0^2 x_1 + x_2^3, double point at [0:1:0]
    let f = write_form(dir.path(), "b.form", "r=2 d=3\n1 2 1 0\n1 0 0 3\n");
    let p = f.to_str().unwrap();
    let good = run(&["bound", "--input", p, "--point", "0,1,0"]);
    assert_eq!(code(&good), 0);
    let v = json(&good);
    assert_eq!(v["within"], true);
    assert_eq!(v["max_mult"], 2);
    let missed = run(&["bound", "--input", p, "--point", "1,0,0"]);
    assert_eq!(code(&missed), 1);
    let semistable = nodal_cubic(dir.path());
    assert_eq!(code(&run(&["bound", "--input", semistable.to_str().unwrap(), "--point", "1,0,0"])), 1);
}

#[test]
fn usage_and_parse_errors_exit_two() {
    let dir = TempDir::new().unwrap();
    let bad_degree = write_form(dir.path(), "bad.form", "r=1 d=2\n1 1 2\n");
    let decimal = write_form(dir.path(), "dec.form", "r=1 d=2\n0.5 1 1\n");
    let ok = write_form(dir.path(), "ok.form", "r=1 d=2\n1 1 1\n");
    let cases: Vec<Vec<&str>> = vec![
        vec!["frobnicate"],
        vec!["threshold", "-r", "1"],
        vec!["mult", "--input", "/definitely/not/here.form"],
        vec!["mult", "--input", bad_degree.to_str().unwrap()],
        vec!["mult", "--input", decimal.to_str().unwrap()],
        vec!["mult", "--input", ok.to_str().unwrap(), "--point", "0,0"],
        vec!["mult", "--input", ok.to_str().unwrap(), "--point", "1,0,0"],
        vec!["mult", "--input", ok.to_str().unwrap(), "--point", "1/0,1"],
        vec!["classify", "--input", ok.to_str().unwrap(), "--N", "many"],
        vec!["bands", "-r", "1", "-d", "2", "--point", "1,x"],
        vec!["threshold", "-r", "1", "-d", "2", "--json", "--text"],
    ];
    for args in cases {
        assert_eq!(code(&run(&args)), 2, "{args:?}");
    }
}
