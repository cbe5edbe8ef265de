//! End-to-end tests of the cm510 binary: exit codes, report contents, file
//! round trips, and byte-level determinism.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_cm510"))
}

fn run(args: &[&str]) -> (i32, String, String) {
    let Output {
        status,
        stdout,
        stderr,
    } = bin().args(args).output().expect("binary runs");
    (
        status.code().expect("exit code"),
        String::from_utf8(stdout).expect("utf8 stdout"),
        String::from_utf8(stderr).expect("utf8 stderr"),
    )
}

/// Writes a constant-coefficient tuple file with the given b entries.
fn write_tuple(dir: &Path, name: &str, prec: usize, b: [&str; 10]) -> PathBuf {
    let series: Vec<Vec<&str>> = b.iter().map(|c| vec![*c]).collect();
    let body = serde_json::json!({ "prec": prec, "b": series });
    let path = dir.join(name);
    std::fs::write(&path, serde_json::to_string(&body).unwrap()).unwrap();
    path
}

/// b-tuples with all mass on odd positions, giving B-sums = the five entries.
fn bsums(dir: &Path, name: &str, sums: [&str; 5]) -> PathBuf {
    write_tuple(
        dir,
        name,
        8,
        [
            sums[0], "0", sums[1], "0", sums[2], "0", sums[3], "0", sums[4], "0",
        ],
    )
}

#[test]
fn validate_accepts_good_files_and_names_bad_entries() {
    let dir = tempfile::tempdir().unwrap();
    let good = bsums(dir.path(), "good.json", ["1", "2", "-1", "-2", "0"]);
    let (code, out, _) = run(&["validate", good.to_str().unwrap()]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("valid"), "{out}");
    assert!(out.contains("B-sums: (1, 2, -1, -2, 0)"), "{out}");

    let bad = dir.path().join("bad.json");
    std::fs::write(
        &bad,
        r#"{"prec": 4, "b": [["1"], ["x"], [], [], [], [], [], [], [], ["-1"]]}"#,
    )
    .unwrap();
    let (code, _, err) = run(&["validate", bad.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(err.contains("b[2]"), "should name the entry: {err}");

    let unbalanced = dir.path().join("unbalanced.json");
    std::fs::write(
        &unbalanced,
        r#"{"prec": 4, "b": [["1"], [], [], [], [], [], [], [], [], []]}"#,
    )
    .unwrap();
    let (code, _, err) = run(&["validate", unbalanced.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(err.contains("sum to zero"), "{err}");
}

#[test]
fn classify_reports_case_profile_and_modulus() {
    let dir = tempfile::tempdir().unwrap();
    let m2 = bsums(dir.path(), "m2.json", ["1", "2", "-1", "-2", "0"]);
    let (code, out, _) = run(&["classify", m2.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(out.contains("case: FourGeneric{1,3,5,7}"), "{out}");
    assert!(out.contains("indecomposable: true"), "{out}");
    assert!(out.contains("modulus: 4"), "{out}");

    let zero = write_tuple(
        dir.path(),
        "zero.json",
        8,
        ["0", "0", "0", "0", "0", "0", "0", "0", "0", "0"],
    );
    let (code, out, _) = run(&["classify", zero.to_str().unwrap(), "--json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["case"], "TrivialSum");
    assert_eq!(v["indecomposable"], false);
    assert_eq!(v["modulus"], serde_json::Value::Null);
}

#[test]
fn classify_batch_processes_directories_in_name_order() {
    let dir = tempfile::tempdir().unwrap();
    bsums(dir.path(), "a.json", ["1", "1", "-2", "0", "0"]);
    bsums(dir.path(), "b.json", ["1", "2", "-1", "-2", "0"]);
    let (code, out, _) = run(&["classify", "--batch", dir.path().to_str().unwrap()]);
    assert_eq!(code, 0, "{out}");
    let a_at = out.find("a.json").unwrap();
    let b_at = out.find("b.json").unwrap();
    assert!(a_at < b_at, "batch output must follow filename order:\n{out}");
    assert!(out.contains("Three{1,3,5}"), "{out}");
    assert!(out.contains("FourGeneric{1,3,5,7}"), "{out}");

    // JSON batch: an array with one entry per file
    let (code, out, _) = run(&["classify", "--batch", dir.path().to_str().unwrap(), "--json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 2);

    // a directory with a broken file still reports the rest, exits 1
    std::fs::write(dir.path().join("c.json"), "{").unwrap();
    let (code, out, _) = run(&["classify", "--batch", dir.path().to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(out.contains("error"), "{out}");
    assert!(out.contains("FourGeneric{1,3,5,7}"), "good files still classified: {out}");
}

#[test]
fn compare_decides_and_emits_verified_witnesses() {
    let dir = tempfile::tempdir().unwrap();
    let m2 = bsums(dir.path(), "m2.json", ["1", "2", "-1", "-2", "0"]);
    let m2neg = bsums(dir.path(), "m2neg.json", ["1", "-2", "-1", "2", "0"]);
    let m3 = bsums(dir.path(), "m3.json", ["1", "3", "-1", "-3", "0"]);
    let w = dir.path().join("w.json");

    let (code, out, _) = run(&[
        "compare",
        m2.to_str().unwrap(),
        m2neg.to_str().unwrap(),
        "--oracle",
        "--witness",
        w.to_str().unwrap(),
    ]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("isomorphic: true"), "{out}");
    assert!(out.contains("agreement: true"), "{out}");
    assert!(w.exists());

    // the stored witness verifies through the witness subcommand
    let (code, out, _) = run(&[
        "witness",
        m2.to_str().unwrap(),
        m2neg.to_str().unwrap(),
        "--check",
        w.to_str().unwrap(),
    ]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("valid witness"), "{out}");

    // non-isomorphic pair: verdict false, still exit 0
    let (code, out, _) = run(&["compare", m2.to_str().unwrap(), m3.to_str().unwrap(), "--oracle"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("isomorphic: false"), "{out}");
    assert!(out.contains("agreement: true"), "{out}");

    // a corrupted witness is rejected
    let mut file: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&w).unwrap()).unwrap();
    file["maps"][0][0][0][0] = serde_json::json!("777");
    std::fs::write(&w, serde_json::to_string(&file).unwrap()).unwrap();
    let (code, _, err) = run(&[
        "witness",
        m2.to_str().unwrap(),
        m2neg.to_str().unwrap(),
        "--check",
        w.to_str().unwrap(),
    ]);
    assert_eq!(code, 1);
    assert!(err.contains("witness"), "{err}");
}

#[test]
fn compare_separates_different_labels() {
    let dir = tempfile::tempdir().unwrap();
    let a = bsums(dir.path(), "t135.json", ["1", "1", "-2", "0", "0"]);
    let b = bsums(dir.path(), "t137.json", ["1", "1", "0", "-2", "0"]);
    let (code, out, _) = run(&["compare", a.to_str().unwrap(), b.to_str().unwrap(), "--json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["isomorphic"], false);
    assert_eq!(v["criterion"], "profile-mismatch");
    assert_eq!(v["labels_match"], false);
}

#[test]
fn compare_rejects_decomposable_inputs() {
    let dir = tempfile::tempdir().unwrap();
    let zero = write_tuple(
        dir.path(),
        "zero.json",
        8,
        ["0", "0", "0", "0", "0", "0", "0", "0", "0", "0"],
    );
    let m2 = bsums(dir.path(), "m2.json", ["1", "2", "-1", "-2", "0"]);
    let (code, _, err) = run(&["compare", m2.to_str().unwrap(), zero.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(err.contains("decomposable"), "{err}");
}

#[test]
fn witness_construction_writes_loadable_files() {
    let dir = tempfile::tempdir().unwrap();
    let a = bsums(dir.path(), "a.json", ["1", "-1", "1", "1", "-2"]);
    let b = bsums(dir.path(), "b.json", ["-3", "3", "-3", "-3", "6"]);
    let w = dir.path().join("w.json");
    let (code, out, _) = run(&[
        "witness",
        a.to_str().unwrap(),
        b.to_str().unwrap(),
        "--out",
        w.to_str().unwrap(),
    ]);
    assert_eq!(code, 0, "{out}");
    let (code, out, _) = run(&[
        "witness",
        a.to_str().unwrap(),
        b.to_str().unwrap(),
        "--check",
        w.to_str().unwrap(),
        "--json",
    ]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["valid"], true);

    // constructing a witness between non-isomorphic modules fails cleanly
    let c = bsums(dir.path(), "c.json", ["1", "2", "-1", "-2", "0"]);
    let (code, _, err) = run(&["witness", a.to_str().unwrap(), c.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(err.contains("not isomorphic"), "{err}");
}

#[test]
fn oracle_reports_dimensions_and_verdicts() {
    let dir = tempfile::tempdir().unwrap();
    let m2 = bsums(dir.path(), "m2.json", ["1", "2", "-1", "-2", "0"]);
    let m2neg = bsums(dir.path(), "m2neg.json", ["1", "-2", "-1", "2", "0"]);
    let (code, out, _) = run(&[
        "oracle",
        m2.to_str().unwrap(),
        m2neg.to_str().unwrap(),
        "--lambda",
        "--json",
    ]);
    assert_eq!(code, 0, "{out}");
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["isomorphic"], true);
    assert_eq!(v["stable_hom_dimension"], 16);
    assert!(v["lambda"].is_array());

    let zero = write_tuple(
        dir.path(),
        "zero.json",
        8,
        ["0", "0", "0", "0", "0", "0", "0", "0", "0", "0"],
    );
    let (code, out, _) = run(&["oracle", zero.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(out.contains("splits as direct sum of the two layers: true"), "{out}");
}

#[test]
fn families_lists_25_rigid_classes_and_3_samples() {
    let (code, out, _) = run(&["families"]);
    assert_eq!(code, 0);
    assert!(out.contains("rigid classes (25):"), "{out}");
    assert!(out.contains("Three{1,3,5}"), "{out}");
    assert!(out.contains("FiveDouble{l=9}"), "{out}");
    assert!(out.contains("modulus = 4"), "{out}");

    let (code, json_out, _) = run(&["families", "--json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&json_out).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 28);

    // byte-identical on repeated runs
    let (_, again, _) = run(&["families"]);
    assert_eq!(out, again, "families output must be deterministic");
}

#[test]
fn rim_and_interlace_draw_lattice_paths() {
    let (code, out, _) = run(&["rim", "[1,4,5]", "--n", "8"]);
    assert_eq!(code, 0);
    assert!(out.contains("rim {1,4,5} in Z/8"), "{out}");
    assert!(out.contains("12345678"), "{out}");
    // edge 1 is the only down-step in the bottom row
    assert!(out.lines().any(|l| l.starts_with('\\')), "{out}");

    let (code, out, _) = run(&["interlace", "[1,3,5,7,9]", "[2,4,6,8,10]"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("5-interlacing, tight"), "{out}");
    assert!(out.contains("exponents at vertices"), "{out}");

    // {1,2} vs {6,7} alternate once; |I . J| = 3 < k - r = 4, so not tight
    let (code, out, _) = run(&["interlace", "[1,2,3,4,5]", "[3,4,5,6,7]", "--json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["r"], 1);
    assert_eq!(v["tight"], false);
}
