//! Byte-for-byte comparison of command output with files under
//! `tests/golden`. Run with `BLESS=1` to rewrite them.

use std::path::PathBuf;
use std::process::Command;

const SAMPLE: &str = "tests/data/sample.manifest";
const FLAT: &str = "tests/data/flat.manifest";

fn cases() -> Vec<(&'static str, Vec<&'static str>)> {
    vec![
        ("lift_scalar_c2", vec!["lift", SAMPLE, "f", "--kind", "c", "-k", "2"]),
        ("lift_scalar_h1", vec!["lift", SAMPLE, "h", "--kind", "h", "-k", "1"]),
        ("lift_vector_v2", vec!["lift", SAMPLE, "W", "--kind", "v", "-k", "2"]),
        ("lift_vector_c2", vec!["lift", SAMPLE, "Z", "--kind", "c", "-k", "2"]),
        ("lift_vector_c2_literal", vec!["lift", SAMPLE, "Z", "--kind", "c", "-k", "2", "--paper-literal"]),
        ("lift_vector_h2", vec!["lift", SAMPLE, "W", "--kind", "h", "-k", "2"]),
        ("lift_oneform_cv11", vec!["lift", SAMPLE, "w", "--kind", "cv", "-r", "1", "-s", "1", "--certificate"]),
        ("lift_oneform_h2", vec!["lift", SAMPLE, "w", "--kind", "h", "-k", "2"]),
        ("lift_endo_c1", vec!["lift", FLAT, "J", "--kind", "c", "-k", "1", "--certificate"]),
        ("lift_bilinear_c1", vec!["lift", FLAT, "g", "--kind", "c", "-k", "1"]),
        ("check_functions", vec!["check", "functions", "-m", "1", "-k", "2", "--seed", "7", "--samples", "25"]),
        ("check_functions_time", vec!["check", "functions", "-m", "1", "-k", "1", "--seed", "7", "--with-time"]),
        ("check_brackets", vec!["check", "brackets", "-m", "1", "-k", "1", "--seed", "3", "--samples", "10"]),
        ("check_frames", vec!["check", "frames", "-m", "2", "-k", "2", "--seed", "4", "--samples", "5"]),
        ("compare_p321", vec!["compare", "P321", "-m", "1", "-k", "3", "--samples", "2"]),
        ("compare_p322", vec!["compare", "P322", "-m", "1", "-k", "2", "--samples", "2"]),
        ("compare_p331", vec!["compare", "P331", "-m", "2", "-k", "1", "--samples", "2"]),
        ("compare_p333", vec!["compare", "P333", "-m", "1", "-k", "2", "--samples", "1"]),
        ("frame_sample_k2", vec!["frame", SAMPLE, "-k", "2"]),
        ("frame_flat_k1", vec!["frame", FLAT, "-k", "1"]),
        ("table_k2_product", vec!["table", "-k", "2", "--product"]),
        ("table_k1", vec!["table", "-k", "1"]),
    ]
}

fn run(args: &[&str]) -> (String, i32) {
    let out = Command::new(env!("CARGO_BIN_EXE_extlift"))
        .args(args)
        .current_dir(env!("CARGO_MANIFEST_DIR"))
        .output()
        .expect("binary runs");
    (String::from_utf8(out.stdout).expect("utf-8"), out.status.code().unwrap_or(-1))
}

#[test]
fn outputs_match_golden_files() {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden");
    let bless = std::env::var_os("BLESS").is_some();
    let mut mismatched = Vec::new();
    for (name, args) in cases() {
        let (stdout, code) = run(&args);
        assert_eq!(code, 0, "{name}: exit {code}");
        let path = dir.join(format!("{name}.txt"));
        if bless {
            std::fs::create_dir_all(&dir).unwrap();
            std::fs::write(&path, &stdout).unwrap();
            continue;
        }
        let expected = std::fs::read_to_string(&path).unwrap_or_else(|_| panic!("missing {}", path.display()));
        if expected != stdout {
            mismatched.push(format!("{name}:\n--- expected\n{expected}--- got\n{stdout}"));
        }
    }
    assert!(mismatched.is_empty(), "{}", mismatched.join("\n"));
}

#[test]
fn repeated_runs_are_identical() {
    for args in [
        vec!["check", "functions", "-m", "1", "-k", "2", "--seed", "11", "--samples", "10", "--with-time"],
        vec!["check", "vectors", "-m", "1", "-k", "1", "--seed", "11", "--samples", "3"],
        vec!["compare", "P332", "-m", "1", "-k", "2", "--seed", "5", "--samples", "2"],
    ] {
        assert_eq!(run(&args), run(&args), "{args:?}");
    }
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["lift", SAMPLE, "nope", "--kind", "v", "-k", "1"]).1, 2);
    assert_eq!(run(&["lift", SAMPLE, "f", "--kind", "cv", "-r", "1"]).1, 2);
    assert_eq!(run(&["lift", SAMPLE, "w", "--kind", "h", "-k", "1"]).1, 3);
    assert_eq!(run(&["lift", FLAT, "g", "--kind", "c", "-k", "1", "--paper-literal"]).1, 2);
    assert_eq!(run(&["lift", "tests/data/missing.manifest", "f", "--kind", "v", "-k", "1"]).1, 2);
    assert_eq!(run(&["lift", "tests/data/bad.manifest", "f", "--kind", "v", "-k", "1"]).1, 3);
    assert_eq!(run(&["check", "nosuch"]).1, 2);
    assert_eq!(run(&["check", "functions", "-k", "0"]).1, 2);
    assert_eq!(run(&["compare", "P999"]).1, 2);
    assert_eq!(run(&["frame", SAMPLE]).1, 2);
    assert_eq!(run(&["table"]).1, 2);
}

#[test]
fn conflicts_warn_without_failing() {
    let out = Command::new(env!("CARGO_BIN_EXE_extlift"))
        .args(["check", "functions", "-m", "1", "-k", "1", "--seed", "7", "--with-time"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stderr).starts_with("warning: "));
}

#[test]
fn printed_components_reparse() {
    let (stdout, _) = run(&["lift", SAMPLE, "W", "--kind", "h", "-k", "2"]);
    for line in stdout.lines().skip(1) {
        let (_, value) = line.split_once(" = ").unwrap();
        let e = extlift::symkernel::parse(value).unwrap();
        assert_eq!(e.to_string(), value);
    }
}
