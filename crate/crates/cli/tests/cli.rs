use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name).display().to_string()
}

fn boxprod(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_boxprod")).args(args).output().expect("binary runs")
}

fn report(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is one JSON report")
}

fn without_timing(mut v: Value) -> Value {
    v.as_object_mut().unwrap().remove("timing");
    v
}

#[test]
fn balanced_product_counts_simples() {
    for (group, field, a, expected) in [
        ("cyclic:2", "Q", "group-algebra", 2),
        ("symmetric:3", "Q", "group-algebra", 3),
        ("cyclic:3", "Fp:7", "group-algebra", 3),
        ("symmetric:3", "Q", "unit", 6),
    ] {
        let out = boxprod(&[
            "balanced-product", "--group", group, "--field", field, "--algebra-a", a, "--algebra-b", a, "--instances", "5",
        ]);
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
        let r = report(&out);
        assert_eq!(r["results"]["simples"], expected, "{group} {a}");
        assert_eq!(r["passed"], true);
    }
}

#[test]
fn uncertified_count_is_reported_not_guessed() {
    // Z3 over Q: the center of k[Z3] does not split into copies of Q.
    let out = boxprod(&["balanced-product", "--group", "cyclic:3", "--instances", "3"]);
    let r = report(&out);
    assert_eq!(r["results"]["simple_count_certified"], false);
    assert!(r["results"]["simples"].is_null());
}

#[test]
fn algebra_and_group_files_load() {
    let out = boxprod(&[
        "balanced-product", "--group", &data("z2.json"), "--algebra-a", &data("kz2.json"), "--algebra-b", "group-algebra",
        "--instances", "3",
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(report(&out)["results"]["simples"], 2);
}

#[test]
fn reports_are_deterministic() {
    let args = ["verify", "--scope", "graded", "--seed", "11", "--instances", "3"];
    let (a, b) = (boxprod(&args), boxprod(&args));
    assert_eq!(without_timing(report(&a)), without_timing(report(&b)));
}

#[test]
fn verify_passes_on_a_correct_build() {
    let out = boxprod(&["verify", "--scope", "all", "--instances", "2"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let r = report(&out);
    let names: Vec<&str> = r["checks"].as_array().unwrap().iter().map(|c| c["name"].as_str().unwrap()).collect();
    for prefix in ["balanced.pentagon_triangle", "balanced.hom_formula", "balanced.round_trip", "linalg.", "modcat."] {
        assert!(names.iter().any(|n| n.starts_with(prefix)), "missing {prefix}");
    }
}

#[test]
fn injected_fault_fails_with_a_named_witness() {
    let out = boxprod(&["verify", "--scope", "algebra", "--inject-fault", "structure-constant"]);
    assert_eq!(out.status.code(), Some(1));
    let r = report(&out);
    assert_eq!(r["passed"], false);
    let failed = r["checks"].as_array().unwrap().iter().find(|c| c["name"] == "algebra.group_algebra_axioms[Z2]").unwrap();
    assert_eq!(failed["passed"], false);
    assert!(failed["witness"]["violation"].as_str().unwrap().contains("basis triple"));
}

#[test]
fn homcheck_examples() {
    let (l, r, z) = (data("left_regular.json"), data("right_regular.json"), data("left_zero.json"));
    for (group, x2, expected) in [("cyclic:2", &l, 2), ("symmetric:3", &l, 6), ("cyclic:2", &z, 0)] {
        let out = boxprod(&["homcheck", "--group", group, &l, x2, &r, &r]);
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
        let rep = report(&out);
        assert_eq!(rep["results"]["lhs"], expected);
        assert_eq!(rep["results"]["rhs"], expected);
    }
    let explicit = data("left_regular_explicit.json");
    let out = boxprod(&["homcheck", &explicit, &l, &r, &r]);
    assert_eq!(report(&out)["results"]["lhs"], 2);
}

#[test]
fn report_file_matches_stdout() {
    let path = std::env::temp_dir().join(format!("boxprod-report-{}.json", std::process::id()));
    let out = boxprod(&["verify", "--scope", "linalg", "--report", &path.display().to_string()]);
    let written: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(written, report(&out));
    std::fs::remove_file(path).ok();
}

#[test]
fn bad_inputs_exit_with_diagnostics() {
    let out = boxprod(&["homcheck", &data("left_broken.json"), &data("left_regular.json"), &data("right_regular.json"), &data("right_regular.json")]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line"), "{err}");

    // A right module where a left one is expected.
    let r = data("right_regular.json");
    let out = boxprod(&["homcheck", &r, &r, &r, &r]);
    assert_eq!(out.status.code(), Some(2));

    let out = boxprod(&["balanced-product", "--group", "cyclic:0"]);
    assert_eq!(out.status.code(), Some(2));
    let out = boxprod(&["balanced-product", "--field", "Fp:9"]);
    assert_eq!(out.status.code(), Some(2));
}
