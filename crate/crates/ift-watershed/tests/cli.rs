//! Integration tests for the `iftws` binary: exit codes, output files, and
//! cross-variant determinism at the process boundary.

use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

fn iftws(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_iftws"))
        .args(args)
        .output()
        .expect("spawn iftws")
}

fn path_str(dir: &TempDir, name: &str) -> String {
    dir.path().join(name).to_str().unwrap().to_string()
}

#[test]
fn generated_noise_volume_labels_identical_across_variants() {
    let dir = TempDir::new().unwrap();
    let mut outputs = Vec::new();
    for variant in ["I", "II", "III", "IV", "V"] {
        let out = path_str(&dir, &format!("labels_{variant}.bin"));
        let status = iftws(&[
            "--gen",
            "noise:min=0:max=255:seed=42",
            "--dims",
            "8x8x8",
            "--bits",
            "8",
            "--variant",
            variant,
            "--out",
            &out,
        ]);
        assert!(status.status.success(), "variant {variant}: {status:?}");
        outputs.push(std::fs::read(&out).unwrap());
    }
    assert_eq!(outputs[0].len(), 512);
    for bytes in &outputs[1..] {
        assert_eq!(bytes, &outputs[0]);
    }
}

#[test]
fn raw_volume_with_marker_file_round_trips() {
    let dir = TempDir::new().unwrap();
    let raw = dir.path().join("vol.raw");
    // 2x2x2 8-bit: left half dark, right half bright.
    std::fs::write(&raw, [0u8, 200, 0, 200, 0, 200, 0, 200]).unwrap();
    let markers = dir.path().join("markers.txt");
    std::fs::write(&markers, "# seeds\nin 0 0 0\nout 1 1 1\n").unwrap();
    let out = path_str(&dir, "labels.bin");

    let status = iftws(&[
        "--input",
        raw.to_str().unwrap(),
        "--dims",
        "2x2x2",
        "--bits",
        "8",
        "--markers",
        markers.to_str().unwrap(),
        "--out",
        &out,
    ]);
    assert!(status.status.success(), "{status:?}");
    let labels = std::fs::read(&out).unwrap();
    assert_eq!(labels, vec![1, 0, 1, 0, 1, 0, 1, 0]);
}

#[test]
fn missing_input_and_gen_is_usage_error() {
    let dir = TempDir::new().unwrap();
    let out = path_str(&dir, "labels.bin");
    let status = iftws(&["--dims", "2x2x2", "--out", &out]);
    assert_eq!(status.status.code(), Some(2));
}

#[test]
fn gen_and_input_together_is_usage_error() {
    let dir = TempDir::new().unwrap();
    let out = path_str(&dir, "labels.bin");
    let status = iftws(&[
        "--gen",
        "uniform:value=1",
        "--input",
        "/nonexistent.raw",
        "--dims",
        "2x2x2",
        "--out",
        &out,
    ]);
    assert_eq!(status.status.code(), Some(2));
}

#[test]
fn missing_markers_for_raw_volume_is_usage_error() {
    let dir = TempDir::new().unwrap();
    let raw = dir.path().join("vol.raw");
    std::fs::write(&raw, [0u8; 8]).unwrap();
    let out = path_str(&dir, "labels.bin");
    let status = iftws(&[
        "--input",
        raw.to_str().unwrap(),
        "--dims",
        "2x2x2",
        "--bits",
        "8",
        "--out",
        &out,
    ]);
    assert_eq!(status.status.code(), Some(2));
}

#[test]
fn unreadable_input_is_io_error() {
    let dir = TempDir::new().unwrap();
    let out = path_str(&dir, "labels.bin");
    let markers = dir.path().join("markers.txt");
    std::fs::write(&markers, "in 0 0 0\nout 1 1 1\n").unwrap();
    let status = iftws(&[
        "--input",
        "/nonexistent/vol.raw",
        "--dims",
        "2x2x2",
        "--bits",
        "8",
        "--markers",
        markers.to_str().unwrap(),
        "--out",
        &out,
    ]);
    assert_eq!(status.status.code(), Some(3));
}

#[test]
fn malformed_marker_file_is_parse_error() {
    let dir = TempDir::new().unwrap();
    let raw = dir.path().join("vol.raw");
    std::fs::write(&raw, [0u8; 8]).unwrap();
    let markers = dir.path().join("markers.txt");
    std::fs::write(&markers, "inside 0 0 0\n").unwrap();
    let out = path_str(&dir, "labels.bin");
    let status = iftws(&[
        "--input",
        raw.to_str().unwrap(),
        "--dims",
        "2x2x2",
        "--bits",
        "8",
        "--markers",
        markers.to_str().unwrap(),
        "--out",
        &out,
    ]);
    assert_eq!(status.status.code(), Some(4));
}

#[test]
fn out_of_range_marker_is_parse_error() {
    let dir = TempDir::new().unwrap();
    let raw = dir.path().join("vol.raw");
    std::fs::write(&raw, [0u8; 8]).unwrap();
    let markers = dir.path().join("markers.txt");
    std::fs::write(&markers, "in 0 0 0\nout 5 5 5\n").unwrap();
    let out = path_str(&dir, "labels.bin");
    let status = iftws(&[
        "--input",
        raw.to_str().unwrap(),
        "--dims",
        "2x2x2",
        "--bits",
        "8",
        "--markers",
        markers.to_str().unwrap(),
        "--out",
        &out,
    ]);
    assert_eq!(status.status.code(), Some(4));
}

#[test]
fn conflicting_markers_are_validation_error() {
    let dir = TempDir::new().unwrap();
    let raw = dir.path().join("vol.raw");
    std::fs::write(&raw, [0u8; 8]).unwrap();
    let markers = dir.path().join("markers.txt");
    std::fs::write(&markers, "in 0 0 0\nout 0 0 0\n").unwrap();
    let out = path_str(&dir, "labels.bin");
    let status = iftws(&[
        "--input",
        raw.to_str().unwrap(),
        "--dims",
        "2x2x2",
        "--bits",
        "8",
        "--markers",
        markers.to_str().unwrap(),
        "--out",
        &out,
    ]);
    assert_eq!(status.status.code(), Some(5));
}

#[test]
fn stats_report_is_deterministic_apart_from_timing() {
    let dir = TempDir::new().unwrap();
    let mut reports = Vec::new();
    for i in 0..2 {
        let out = path_str(&dir, &format!("labels{i}.bin"));
        let stats = path_str(&dir, &format!("stats{i}.txt"));
        let status = iftws(&[
            "--gen",
            "step_edge:axis=z:low=10:high=200",
            "--dims",
            "4x4x4",
            "--bits",
            "8",
            "--variant",
            "V",
            "--out",
            &out,
            "--stats",
            &stats,
        ]);
        assert!(status.status.success(), "{status:?}");
        let text = std::fs::read_to_string(&stats).unwrap();
        let stripped: String = text
            .lines()
            .filter(|l| !l.starts_with("wall_time_seconds"))
            .collect::<Vec<_>>()
            .join("\n");
        assert!(text.lines().last().unwrap().starts_with("wall_time_seconds"));
        reports.push(stripped);
    }
    assert_eq!(reports[0], reports[1]);
    for key in ["variant:", "nodes:", "arcs:", "peak_queue_entries:", "bricks_peak:"] {
        assert!(
            reports[0].lines().any(|l| l.starts_with(key)),
            "missing {key} in report:\n{}",
            reports[0]
        );
    }
}

#[test]
fn slice_export_writes_pgm() {
    let dir = TempDir::new().unwrap();
    let out = path_str(&dir, "labels.bin");
    let pgm = path_str(&dir, "z0.pgm");
    let status = iftws(&[
        "--gen",
        "blob:radius=2.5:inside=200:outside=10",
        "--dims",
        "6x6x6",
        "--bits",
        "8",
        "--out",
        &out,
        "--slice",
        &format!("z:3:{pgm}"),
    ]);
    assert!(status.status.success(), "{status:?}");
    let bytes = std::fs::read(Path::new(&pgm)).unwrap();
    assert!(bytes.starts_with(b"P5\n6 6\n255\n"));
    assert_eq!(bytes.len(), "P5\n6 6\n255\n".len() + 36);
}

#[test]
fn precision_bucket_sizing_is_accepted() {
    let dir = TempDir::new().unwrap();
    let out = path_str(&dir, "labels.bin");
    let stats = path_str(&dir, "stats.txt");
    let status = iftws(&[
        "--gen",
        "noise:min=0:max=200:seed=1",
        "--dims",
        "4x4x4",
        "--bits",
        "8",
        "--buckets",
        "precision",
        "--out",
        &out,
        "--stats",
        &stats,
    ]);
    assert!(status.status.success(), "{status:?}");
    let text = std::fs::read_to_string(&stats).unwrap();
    assert!(text.lines().any(|l| l == "c_buckets: 256"), "{text}");
}
