//! End-to-end tests of the binary: exit codes, wire formats, determinism.

use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_twistpoly"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf8 output")
}

#[test]
fn verify_passes_on_a_preset() {
    let out = run(&[
        "verify",
        "--preset",
        "A2",
        "--star",
        "flip",
        "--order",
        "8",
        "--no-timestamp",
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("json report");
    assert_eq!(report["pass"], true);
    assert_eq!(report["cleared_pass"], true);
    assert_eq!(report["p_star"][3], "1");
    assert!(report["residual"]
        .as_array()
        .unwrap()
        .iter()
        .all(|c| c == "0"));
    assert!(report.get("timestamp").is_none());
}

#[test]
fn verify_batches_affine_presets() {
    let out = run(&[
        "verify", "--preset", "affA1", "--order", "16", "--checks", "theorem", "--no-timestamp",
    ]);
    assert!(out.status.success());
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    // no cleared identity for an infinite group
    assert_eq!(report["cleared_pass"], serde_json::Value::Null);
    assert_eq!(report["pass"], true);
}

#[test]
fn involution_listing_matches_the_expected_rows() {
    let out = run(&["invols", "--preset", "A1", "--format", "csv", "--no-timestamp"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "word,length,phi\n,0,0\n0,1,1\n\n");
}

#[test]
fn table_export_rank_one() {
    let out = run(&["xtable", "--preset", "A1", "--ly", "1", "--no-timestamp"]);
    assert!(out.status.success());
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let rows = report["rows"].as_array().unwrap();
    let find = |z: &[u64], y: &[u64]| -> Vec<String> {
        rows.iter()
            .find(|r| {
                r["z_word"].as_array().unwrap().len() == z.len()
                    && r["y_word"].as_array().unwrap().len() == y.len()
            })
            .map(|r| {
                r["coeffs"]
                    .as_array()
                    .unwrap()
                    .iter()
                    .map(|c| c.as_str().unwrap().to_string())
                    .collect()
            })
            .unwrap()
    };
    assert_eq!(find(&[], &[]), vec!["1"]);
    assert_eq!(find(&[], &[0]), vec!["0", "1"]);
    assert_eq!(find(&[0], &[0]), vec!["0", "-1", "1"]);
}

#[test]
fn exit_codes_for_bad_configuration() {
    assert_eq!(run(&["verify", "--preset", "Z9"]).status.code(), Some(2));
    assert_eq!(
        run(&["verify", "--preset", "A1", "--star", "flip"]).status.code(),
        Some(2)
    );
    assert_eq!(
        run(&["verify", "--preset", "A2", "--ball", "3", "--order", "8"])
            .status
            .code(),
        Some(2)
    );
    // resource limits surface as errors, not crashes
    assert_eq!(
        run(&["verify", "--preset", "affA2", "--limit", "5"]).status.code(),
        Some(2)
    );
}

#[test]
fn reports_are_byte_identical_without_timestamps(
) {
    let dir = std::env::temp_dir().join(format!("twistpoly-test-{}", std::process::id()));
    let dir_a = dir.join("a");
    let dir_b = dir.join("b");
    for d in [&dir_a, &dir_b] {
        let out = run(&[
            "verify",
            "--preset",
            "B2",
            "--order",
            "10",
            "--no-timestamp",
            "--out",
            d.to_str().unwrap(),
        ]);
        assert!(out.status.success());
    }
    let a = std::fs::read(dir_a.join("verify_B2_id.json")).unwrap();
    let b = std::fs::read(dir_b.join("verify_B2_id.json")).unwrap();
    assert_eq!(a, b);
    // and the emitted report re-parses
    let report: serde_json::Value = serde_json::from_slice(&a).unwrap();
    assert_eq!(report["preset"], "B2");
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn matrix_file_input() {
    let dir = std::env::temp_dir().join(format!("twistpoly-mf-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path: PathBuf = dir.join("b2aff.json");
    // rank 3 path with orders 4, 4 and the identity star
    std::fs::write(&path, r#"{"rank": 3, "m": [4, 2, 4], "star": [0, 1, 2]}"#).unwrap();
    let out = run(&[
        "verify",
        "--matrix-file",
        path.to_str().unwrap(),
        "--order",
        "12",
        "--checks",
        "theorem,phi",
        "--no-timestamp",
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["preset"], serde_json::Value::Null);
    assert_eq!(report["pass"], true);

    // run fields inside the file act as defaults
    std::fs::write(
        &path,
        r#"{"rank": 2, "m": [3], "star": [1, 0], "order": 6, "ly": 2}"#,
    )
    .unwrap();
    let out = run(&[
        "verify",
        "--matrix-file",
        path.to_str().unwrap(),
        "--checks",
        "theorem",
        "--no-timestamp",
    ]);
    assert!(out.status.success());
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["order"], 6);
    assert_eq!(report["ball"], 6);

    // malformed wire data is rejected
    std::fs::write(&path, r#"{"rank": 2, "m": [1], "star": [0, 1]}"#).unwrap();
    let out = run(&["verify", "--matrix-file", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn series_export_shapes() {
    let out = run(&[
        "series", "--preset", "affA1", "--order", "4", "--format", "csv", "--no-timestamp",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("p,1 2 2 2 2"));
    assert!(text.contains("r,1 -2 4 -6 8"));
}
