//! Exit-code and error-surface checks for the command-line interface.

use std::path::Path;
use std::process::{Command, Output};

fn noisim(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_noisim"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs")
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).to_string()
}

#[test]
fn non_power_of_two_states_is_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let out = noisim(dir.path(), &["walk", "--states", "6", "--steps", "1"]);
    assert_eq!(out.status.code(), Some(2), "{}", stderr(&out));
    assert!(stderr(&out).contains("power of two"));
}

#[test]
fn missing_target_file_is_io_error() {
    let dir = tempfile::tempdir().unwrap();
    noisim(
        dir.path(),
        &["gen-calib", "--qubits", "4", "--out", "cal.json"],
    );
    let out = noisim(
        dir.path(),
        &[
            "optimize", "--states", "4", "--target", "nope.csv", "--calib", "cal.json",
        ],
    );
    assert_eq!(out.status.code(), Some(2), "{}", stderr(&out));
}

#[test]
fn noisy_model_without_calibration_is_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let out = noisim(
        dir.path(),
        &["walk", "--states", "4", "--steps", "1", "--model", "unm"],
    );
    assert_eq!(out.status.code(), Some(2), "{}", stderr(&out));
    assert!(stderr(&out).contains("--calib"));
}

#[test]
fn invalid_calibration_content_is_validation_error() {
    let dir = tempfile::tempdir().unwrap();
    // T2 > 2*T1
    let bad = r#"{
        "temperature_K": 0.015,
        "qubits": [
            {"id": 0, "T1_us": 50.0, "T2_us": 101.0, "freq_Hz": 5e9,
             "readout_error": 0.01, "prep_error": 0.0}
        ],
        "gates": [],
        "coupling": []
    }"#;
    std::fs::write(dir.path().join("bad.json"), bad).unwrap();
    let out = noisim(
        dir.path(),
        &[
            "walk", "--states", "4", "--steps", "1", "--model", "unm", "--calib", "bad.json",
        ],
    );
    assert_eq!(out.status.code(), Some(1), "{}", stderr(&out));
    // the constraint is surfaced verbatim
    assert!(
        stderr(&out).contains("T2(q) <= 2*T1(q)"),
        "{}",
        stderr(&out)
    );
}

#[test]
fn architecture_violation_is_validation_error() {
    let dir = tempfile::tempdir().unwrap();
    noisim(
        dir.path(),
        &["gen-calib", "--qubits", "3", "--out", "cal.json"],
    );
    // CNOT outside the linear coupling
    std::fs::write(dir.path().join("c.txt"), "H 0\nCNOT 0 2\nMEASURE 0 1 2\n").unwrap();
    let out = noisim(
        dir.path(),
        &[
            "compare",
            "--circuit",
            "c.txt",
            "--models",
            "unm,ideal",
            "--calib",
            "cal.json",
        ],
    );
    assert_eq!(out.status.code(), Some(1), "{}", stderr(&out));
    assert!(stderr(&out).contains("not a coupled pair"));
    // the same circuit passes with assumed full connectivity
    let out = noisim(
        dir.path(),
        &[
            "compare",
            "--circuit",
            "c.txt",
            "--models",
            "unm,ideal",
            "--calib",
            "cal.json",
            "--assume-full-connectivity",
        ],
    );
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
}

#[test]
fn compare_needs_two_models() {
    let dir = tempfile::tempdir().unwrap();
    noisim(
        dir.path(),
        &["gen-calib", "--qubits", "4", "--out", "cal.json"],
    );
    let out = noisim(
        dir.path(),
        &[
            "compare", "--states", "4", "--models", "unm", "--calib", "cal.json",
        ],
    );
    assert_eq!(out.status.code(), Some(2), "{}", stderr(&out));
}

#[test]
fn walk_csv_holds_the_ideal_distribution() {
    let dir = tempfile::tempdir().unwrap();
    let out = noisim(
        dir.path(),
        &["walk", "--states", "4", "--steps", "1", "--model", "ideal"],
    );
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let csv = std::fs::read_to_string(dir.path().join("distribution.csv")).unwrap();
    let mut probs = [0.0f64; 4];
    for line in csv.lines().skip(1) {
        let mut parts = line.split(',');
        let o: usize = parts.next().unwrap().parse().unwrap();
        probs[o] = parts.next().unwrap().parse().unwrap();
    }
    assert!((probs[1] - 0.5).abs() < 1e-12);
    assert!((probs[3] - 0.5).abs() < 1e-12);
    assert!(probs[0] < 1e-12 && probs[2] < 1e-12);
}

#[test]
fn zero_noise_calibration_matches_ideal_in_compare() {
    let dir = tempfile::tempdir().unwrap();
    // build a zero-noise calibration by hand
    let mut entries = Vec::new();
    for q in 0..4 {
        entries.push(format!(
            r#"{{"kind": "H", "qubits": [{q}], "error_rate": 0.0, "duration_ns": 0.0}}"#
        ));
        entries.push(format!(
            r#"{{"kind": "X", "qubits": [{q}], "error_rate": 0.0, "duration_ns": 0.0}}"#
        ));
    }
    for (a, b) in [(0, 1), (1, 2), (2, 3)] {
        entries.push(format!(
            r#"{{"kind": "CNOT", "qubits": [{a}, {b}], "error_rate": 0.0, "duration_ns": 0.0}}"#
        ));
    }
    let qubits: Vec<String> = (0..4)
        .map(|q| {
            format!(
                r#"{{"id": {q}, "T1_us": 1e12, "T2_us": 1e12, "freq_Hz": 5e9,
                     "readout_error": 0.0, "prep_error": 0.0}}"#
            )
        })
        .collect();
    let cal = format!(
        r#"{{"temperature_K": 0.0, "qubits": [{}], "gates": [{}],
             "coupling": [[0,1],[1,2],[2,3]]}}"#,
        qubits.join(","),
        entries.join(",")
    );
    std::fs::write(dir.path().join("zero.json"), cal).unwrap();
    let out = noisim(
        dir.path(),
        &[
            "compare",
            "--states",
            "4",
            "--steps",
            "1",
            "--calib",
            "zero.json",
        ],
    );
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let json: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("compare.json")).unwrap())
            .unwrap();
    for pair in json["pairwise"].as_array().unwrap() {
        let a = pair["a"].as_str().unwrap();
        let b = pair["b"].as_str().unwrap();
        let h = pair["hellinger"].as_f64().unwrap();
        if b == "ideal" && a != "uniform" || a == "ideal" && b != "uniform" {
            assert!(h < 1e-9, "{a} vs {b}: {h}");
        }
        // the one-step walk lands on two of four outcomes, so every
        // noise-free column sits at the same distance from uniform
        if a == "ideal" && b == "uniform" {
            assert!((h - 0.541196100146197).abs() < 1e-12, "{a} vs {b}: {h}");
        }
    }
}

#[test]
fn optimize_self_target_does_not_regress() {
    let dir = tempfile::tempdir().unwrap();
    noisim(
        dir.path(),
        &["gen-calib", "--qubits", "4", "--out", "cal.json"],
    );
    noisim(
        dir.path(),
        &[
            "walk", "--states", "4", "--steps", "1", "--model", "unm", "--calib", "cal.json",
            "--out", "w",
        ],
    );
    let out = noisim(
        dir.path(),
        &[
            "optimize",
            "--states",
            "4",
            "--steps",
            "1",
            "--target",
            "w/distribution.csv",
            "--calib",
            "cal.json",
            "--generations",
            "3",
            "--population",
            "6",
            "--seed",
            "1",
            "--out",
            "o",
        ],
    );
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let json: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("o/report.json")).unwrap())
            .unwrap();
    let pre = json["pre_hd"].as_f64().unwrap();
    let post = json["post_hd"].as_f64().unwrap();
    assert!(pre <= 1e-9, "self-target pre-HD should be ~0, got {pre}");
    assert!(post <= pre + 1e-12);
    // report carries the labelled parameter table
    let params = json["parameters"].as_array().unwrap();
    assert_eq!(params.len(), 9);
    assert_eq!(params[0]["name"], "Sq(0)");
}

#[test]
fn gen_calib_template_is_loadable_and_complete() {
    let dir = tempfile::tempdir().unwrap();
    let out = noisim(
        dir.path(),
        &["gen-calib", "--qubits", "6", "--out", "cal.json"],
    );
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(dir.path().join("cal.json")).unwrap();
    let json: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(json["qubits"].as_array().unwrap().len(), 6);
    assert_eq!(json["coupling"].as_array().unwrap().len(), 5);
    assert!((json["temperature_K"].as_f64().unwrap() - 0.015).abs() < 1e-12);
    // walk on it immediately, with shot sampling
    let out = noisim(
        dir.path(),
        &[
            "walk", "--states", "8", "--steps", "1", "--model", "unm", "--calib", "cal.json",
            "--shots", "100000", "--seed", "7",
        ],
    );
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let summary: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("summary.json")).unwrap())
            .unwrap();
    assert_eq!(summary["shots"].as_u64(), Some(100_000));
    assert!(summary["hellinger_shots_vs_exact"].as_f64().unwrap() <= 0.01);
    // the emitted circuit text round-trips through the parser
    let text = std::fs::read_to_string(dir.path().join("circuit.txt")).unwrap();
    assert!(text.lines().any(|l| l.starts_with("CCX")));
    assert!(noisim::Circuit::parse_text(&text).is_ok());
}
