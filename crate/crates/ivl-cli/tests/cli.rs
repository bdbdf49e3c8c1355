//! End-to-end checks of the command-line surface.

use std::io::Write;
use std::process::{Command, Output, Stdio};

fn ivl() -> Command {
    Command::new(env!("CARGO_BIN_EXE_ivl"))
}

fn run(args: &[&str]) -> Output {
    ivl().args(args).output().expect("spawn ivl")
}

fn stdout_of(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn eval_basics_and_codes() {
    let out = run(&["eval", "[1,2] + [3,4]"]);
    assert!(out.status.success());
    assert_eq!(stdout_of(&out).trim(), "[4,6]");

    let out = run(&["eval", "sin(["]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!String::from_utf8_lossy(&out.stderr).is_empty());

    let out = run(&["eval", "x + 1"]);
    assert_eq!(out.status.code(), Some(2));

    let out = run(&["eval", "x + 1", "-b", "x=[1,1]"]);
    assert!(out.status.success());
    assert_eq!(stdout_of(&out).trim(), "[2,2]");

    let out = run(&["eval", "[1,1]", "--endpoint", "decimal99"]);
    assert_eq!(out.status.code(), Some(2));

    let out = run(&[
        "eval",
        "(sin(x) - (y/x + 5.0) * y) * 0.05",
        "-b",
        "x=[2,3]",
        "-b",
        "y=[-1,2]",
    ]);
    assert!(out.status.success());
    assert_eq!(stdout_of(&out).trim(), "[-0.592944,0.345465]");
}

#[test]
fn iterate_golden_lines() {
    let out = run(&[
        "iterate",
        "(sin(x) - (y/x + 5.0) * y) * 0.05",
        "-b",
        "x=[2,3]",
        "-b",
        "y=[-1,2]",
        "--var",
        "y",
        "--iterations",
        "10",
    ]);
    assert!(out.status.success());
    let text = stdout_of(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 10);
    assert_eq!(lines[0], "[-0.592944,0.345465]");

    let out = run(&[
        "iterate",
        "(sin(x) - (y/x + 5.0) * y) * 0.05",
        "-b",
        "x=[2,3]",
        "-b",
        "y=[-1,2]",
        "--var",
        "y",
        "--iterations",
        "2",
        "--precision",
        "10",
        "--notation",
        "sci",
        "--pad",
        "--border-slack",
        "2",
        "--center-slack",
        "1",
    ]);
    assert!(out.status.success());
    let text = stdout_of(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "[  -5.9294399960e-1, 3.4546487135e-1  ]");
    assert_eq!(lines[1], "[  -8.2293866866e-2, 1.9882190431e-1  ]");
}

#[test]
fn iterate_fixed_point_and_errors() {
    let out = run(&[
        "iterate", "x", "-b", "x=[1,2]", "--var", "x", "--iterations", "3",
    ]);
    assert!(out.status.success());
    assert_eq!(stdout_of(&out), "[1,2]\n[1,2]\n[1,2]\n");

    let out = run(&["iterate", "y", "-b", "x=[1,2]", "--var", "y", "--iterations", "1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn solve_cases() {
    let out = run(&[
        "solve", "--coeffs", "-2 0 1", "--domain", "[0,2]", "--tol", "1e-12",
        "--precision", "17",
    ]);
    assert!(out.status.success());
    let text = stdout_of(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 1, "{text}");
    assert!(lines[0].ends_with("unique"), "{text}");
    assert!(lines[0].contains("1.414213562373095"), "{text}");

    let out = run(&["solve", "--coeffs", "1 0 1", "--domain", "[-2,2]"]);
    assert!(out.status.success());
    assert!(stdout_of(&out).trim().is_empty());

    let out = run(&["solve", "--coeffs", "2 -3 1", "--domain", "[0,3]", "--tol", "1e-10"]);
    assert!(out.status.success());
    let text = stdout_of(&out);
    assert_eq!(text.lines().count(), 2, "{text}");
    for l in text.lines() {
        assert!(l.ends_with("unique"), "{l}");
    }

    // Exhausted budget surfaces as exit code 3.
    let out = run(&[
        "solve", "--coeffs", "-2 0 1", "--domain", "[0,2]", "--tol", "1e-12",
        "--max-boxes", "2",
    ]);
    assert_eq!(out.status.code(), Some(3));

    let out = run(&["solve", "--coeffs", "junk", "--domain", "[0,2]"]);
    assert_eq!(out.status.code(), Some(2));

    // Seeded random polynomials are reproducible.
    let a = run(&["solve", "--random-degree", "4", "--seed", "7", "--domain", "[-2,2]"]);
    let b = run(&["solve", "--random-degree", "4", "--seed", "7", "--domain", "[-2,2]"]);
    assert!(a.status.success());
    assert_eq!(stdout_of(&a), stdout_of(&b));
}

#[test]
fn fmt_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("in.txt");
    let hex1 = dir.path().join("hex1.txt");
    let hex2 = dir.path().join("hex2.txt");
    let dec = dir.path().join("dec.txt");

    let mut f = std::fs::File::create(&input).unwrap();
    writeln!(f, "# interval block").unwrap();
    writeln!(f, "[1,2]").unwrap();
    writeln!(f, "[1/3,2/3]").unwrap();
    writeln!(f, "[-0.1,0.7]").unwrap();
    writeln!(f, "[empty]").unwrap();
    writeln!(f, "[-inf,4]").unwrap();
    drop(f);

    let out = run(&[
        "fmt",
        input.to_str().unwrap(),
        hex1.to_str().unwrap(),
        "--notation",
        "hex",
    ]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("5 intervals"));

    // Hex to hex is byte-stable.
    let out = run(&[
        "fmt",
        hex1.to_str().unwrap(),
        hex2.to_str().unwrap(),
        "--notation",
        "hex",
    ]);
    assert!(out.status.success());
    assert_eq!(
        std::fs::read_to_string(&hex1).unwrap(),
        std::fs::read_to_string(&hex2).unwrap()
    );

    // Decimal output contains each hex input interval.
    let out = run(&[
        "fmt",
        hex1.to_str().unwrap(),
        dec.to_str().unwrap(),
        "--precision",
        "6",
    ]);
    assert!(out.status.success());
    let hex_lines = std::fs::read_to_string(&hex1).unwrap();
    let dec_lines = std::fs::read_to_string(&dec).unwrap();
    for (h, d) in hex_lines.lines().zip(dec_lines.lines()) {
        let a = ivl::textio::try_parse(h, ivl::Precision::Binary64);
        let b = ivl::textio::try_parse(d, ivl::Precision::Binary64);
        assert!(a.0.subset(&b.0), "{h} not within {d}");
    }

    // A malformed line is reported with its number.
    let bad = dir.path().join("bad.txt");
    std::fs::write(&bad, "[1,2]\n[2,3]\n[oops\n").unwrap();
    let out = run(&["fmt", bad.to_str().unwrap(), "-"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3"));
}

#[test]
fn fmt_reads_stdin() {
    let mut child = ivl()
        .args(["fmt", "-", "-", "--notation", "hex"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(b"[0.5,1.5]\n")
        .unwrap();
    let out = child.wait_with_output().unwrap();
    assert!(out.status.success());
    assert_eq!(stdout_of(&out).trim(), "[0x1p-1,0x1.8p0]");
}

#[test]
fn bench_lebesgue_deterministic() {
    let args = [
        "bench-lebesgue",
        "--nodes",
        "3",
        "--points",
        "10",
        "--seed",
        "42",
        "--json",
    ];
    let a = run(&args);
    let b = run(&args);
    assert!(a.status.success());
    let ja: serde_json::Value = serde_json::from_str(&stdout_of(&a)).unwrap();
    let jb: serde_json::Value = serde_json::from_str(&stdout_of(&b)).unwrap();
    assert_eq!(ja["checksum_lo_hex"], jb["checksum_lo_hex"]);
    assert_eq!(ja["checksum_hi_hex"], jb["checksum_hi_hex"]);
    assert_eq!(ja["ops"], 10);
    for key in ["name", "params", "seconds", "ops", "checksum_lo_hex", "checksum_hi_hex"] {
        assert!(ja.get(key).is_some(), "missing {key}");
    }

    let out = run(&["bench-lebesgue", "--points", "0"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn bench_elem_structure() {
    let out = run(&["bench-elem", "--evals", "50", "--seed", "9", "--json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    let arr = v.as_array().unwrap();
    assert_eq!(arr.len(), 8);
    let names: Vec<&str> = arr
        .iter()
        .map(|r| r["name"].as_str().unwrap())
        .collect();
    for f in ["sin", "cos", "tan", "asin", "acos", "atan", "exp", "log"] {
        assert!(names.contains(&format!("bench-elem/{f}").as_str()));
    }

    let a = run(&["bench-elem", "--functions", "sin,log", "--evals", "25", "--json"]);
    let b = run(&["bench-elem", "--functions", "sin,log", "--evals", "25", "--json"]);
    let ja: serde_json::Value = serde_json::from_str(&stdout_of(&a)).unwrap();
    let jb: serde_json::Value = serde_json::from_str(&stdout_of(&b)).unwrap();
    assert_eq!(ja.as_array().unwrap().len(), 2);
    for (x, y) in ja.as_array().unwrap().iter().zip(jb.as_array().unwrap()) {
        assert_eq!(x["checksum_lo_hex"], y["checksum_lo_hex"]);
        assert_eq!(x["checksum_hi_hex"], y["checksum_hi_hex"]);
    }

    let out = run(&["bench-elem", "--functions", "sinh"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn bigfloat_endpoint_selection() {
    let out = run(&["eval", "[1,1]/[3,3]", "--endpoint", "bigfloat:128", "--precision", "40"]);
    assert!(out.status.success());
    let line = stdout_of(&out);
    // 1/3 from 128-bit endpoints carries ~38 correct digits.
    assert!(line.contains("0.33333333333333333333333333333333333333"), "{line}");
    assert!(!line.contains("0.333334"), "{line}");

    let out = run(&["eval", "[1,2]", "--endpoint", "binary32"]);
    assert!(out.status.success());
    assert_eq!(stdout_of(&out).trim(), "[1,2]");
}
