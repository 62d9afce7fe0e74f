use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::NamedTempFile;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_polyvol"))
}

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data").join(name)
}

fn input_file(text: &str) -> NamedTempFile {
    let mut f = NamedTempFile::new().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

fn run(args: &[&str], file: &Path) -> Output {
    bin().arg(file).args(args).output().unwrap()
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn every_algorithm_on_the_cube() {
    for alg in ["auto", "primal", "descent", "lawrence"] {
        let out = run(&[&format!("--algorithm={alg}"), "--report=json"], &data("cube3.in"));
        let j = json(&out);
        assert_eq!(j["volume"]["num"], "6");
        assert_eq!(j["volume"]["den"], "1");
        assert_eq!(j["grading_denominator"], 1);
        if alg != "auto" {
            assert_eq!(j["algorithm"], alg);
        }
    }
}

#[test]
fn text_report_shows_fraction_and_decimal() {
    let out = run(&["--euclidean"], &data("rational-triangle.in"));
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("1/3"), "{text}");
    assert!(text.contains("0.333333333333333333333333333333"), "{text}");
    assert!(text.contains("1/6"), "{text}");
}

#[test]
fn euclidean_volume_in_json() {
    let j = json(&run(&["--euclidean", "--report=json"], &data("square.in")));
    assert_eq!(j["euclidean_volume"]["num"], "1");
    let j = json(&run(&["--report=json"], &data("square.in")));
    assert!(j.get("euclidean_volume").is_none());
}

#[test]
fn fixed_precision_output() {
    let j = json(&run(&["--precision=fixed:5", "--report=json"], &data("rational-triangle.in")));
    assert_eq!(j["volume"]["decimal"], "0.33333");
    let bound: f64 = j["volume"]["error_bound"].as_str().unwrap().parse().unwrap();
    assert!(bound > 0.0 && bound < 1e-3);
}

#[test]
fn graded_input_reports_denominator() {
    let j = json(&run(&["--report=json"], &data("graded-segment.in")));
    assert_eq!(j["grading_denominator"], 2);
    assert_eq!(j["volume"]["num"], "1");
    assert_eq!(j["volume_cone_pyramid"]["den"], "2");
}

#[test]
fn verify_mode_passes_on_birkhoff() {
    let j = json(&run(&["--verify=200", "--report=json"], &data("birkhoff3.in")));
    let v = &j["diagnostics"]["verification"];
    assert_eq!(v["samples"], 200);
    assert_eq!(v["violations"], 0);
    assert_eq!(j["volume"]["num"], "3");
}

#[test]
fn thread_counts_agree() {
    let strip = |mut j: Value| {
        j["diagnostics"].as_object_mut().unwrap().remove("wall_time_ms");
        j
    };
    let one = strip(json(&run(&["--threads=1", "--report=json"], &data("birkhoff3.in"))));
    let four = strip(json(&run(&["--threads=4", "--report=json"], &data("birkhoff3.in"))));
    assert_eq!(one, four);
}

#[test]
fn triangulation_export() {
    let out_file = NamedTempFile::new().unwrap();
    let out = run(
        &["--algorithm=primal", "--triangulation", out_file.path().to_str().unwrap()],
        &data("square.in"),
    );
    assert!(out.status.success());
    let tri = std::fs::read_to_string(out_file.path()).unwrap();
    assert_eq!(tri.lines().count(), 2);
    assert!(tri.lines().all(|l| l.starts_with('T')));

    let refused = run(&["--triangulation", out_file.path().to_str().unwrap()], &data("square.in"));
    assert_eq!(refused.status.code(), Some(2));
}

#[test]
fn forced_arbitrary_precision() {
    let j = json(&run(&["--arbitrary-precision", "--report=json"], &data("cube3.in")));
    assert_eq!(j["diagnostics"]["tier"], "arbitrary");
    assert_eq!(j["diagnostics"]["overflow_restart"], false);
}

#[test]
fn parse_error_exit_code_and_line() {
    let f = input_file("amb_space 2\nvertices 2\n0 0\n1 x\n");
    let out = run(&[], f.path());
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 4"));

    let f = input_file("amb_space 2\npolygon 3\n");
    assert_eq!(run(&[], f.path()).status.code(), Some(2));
}

#[test]
fn missing_file_is_an_input_error() {
    let out = run(&[], Path::new("/nonexistent/input.in"));
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn geometric_precondition_exit_code() {
    // x >= 0 alone is unbounded
    let f = input_file("amb_space 1\ninequalities 1\n1 0\n");
    let out = run(&[], f.path());
    assert_eq!(out.status.code(), Some(3), "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn generic_element_exhaustion_exit_code() {
    let out = run(&["--algorithm=lawrence", "--max-retries=0"], &data("birkhoff3.in"));
    // Birkhoff-3 needs one retry with the default seed
    assert_eq!(out.status.code(), Some(5), "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn reads_standard_input() {
    let mut child = bin()
        .args(["-", "--report=json"])
        .stdin(std::process::Stdio::piped())
        .stdout(std::process::Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(std::fs::read(data("square.in")).unwrap().as_slice())
        .unwrap();
    let j = json(&child.wait_with_output().unwrap());
    assert_eq!(j["volume"]["num"], "2");
}
