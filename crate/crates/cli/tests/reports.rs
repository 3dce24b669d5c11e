use std::collections::BTreeMap;

use leanml_cli::{
    compare_reports, emit_report, parse_csv, parse_json, read_reports, render, BenchReport, CompareError, Format,
    ReportError, Tolerances,
};
use serde_json::{json, Value};
use tempfile::tempdir;

fn report(model: &str, time: f64, r2: f64) -> BenchReport {
    BenchReport {
        dataset: "synthetic:1000x7:regression:0.1".into(),
        model: model.into(),
        config: json!({"val_ratio": 0.2, "repeats": 3}).as_object().unwrap().clone(),
        timings_ms: vec![time * 1.1, time, time * 0.9 + 1e-7],
        training_time_ms: Some(time),
        metrics: BTreeMap::from([("r2".into(), r2), ("mse".into(), 0.1 + 0.2), ("mae".into(), 1e-300)]),
        metric_split: "validation".into(),
        epochs_run: Some(7),
        complexity: 7000,
        seed: 42,
        error: None,
    }
}

#[test]
fn json_has_documented_keys() {
    let text = render(&[report("mlr", 0.25, 0.99)], Format::Json).unwrap();
    let value: Value = serde_json::from_str(&text).unwrap();
    let rows = value.as_array().unwrap();
    assert_eq!(rows.len(), 1);
    let obj = rows[0].as_object().unwrap();
    for key in ["dataset", "model", "config", "timings_ms", "training_time_ms", "metrics", "epochs_run", "complexity", "seed"] {
        assert!(obj.contains_key(key), "missing {key}");
    }
    assert!(obj["timings_ms"].is_array() && obj["metrics"].is_object() && obj["config"].is_object());
    assert_eq!(parse_json(&text).unwrap(), vec![report("mlr", 0.25, 0.99)]);
}

#[test]
fn csv_has_header_and_one_row_per_report() {
    let text = render(&[report("mlr", 0.25, 0.99), report("simple", 0.1, 0.4)], Format::Csv).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 3);
    assert!(lines[0].starts_with("dataset,model,"));
    assert!(lines[0].contains("metric:r2"));
}

#[test]
fn json_csv_json_round_trip_keeps_full_precision() {
    let mut failed = report("svm", 1.0 / 3.0, f64::MIN_POSITIVE);
    failed.error = Some("labels must be -1 or +1".into());
    failed.training_time_ms = None;
    failed.timings_ms.clear();
    failed.epochs_run = None;
    let original = vec![report("mlr", std::f64::consts::PI, 0.999_999_999_999_9), failed];

    let json_text = render(&original, Format::Json).unwrap();
    let from_json = parse_json(&json_text).unwrap();
    let csv_text = render(&from_json, Format::Csv).unwrap();
    let from_csv = parse_csv(&csv_text).unwrap();
    assert_eq!(from_csv, original);
    assert_eq!(render(&from_csv, Format::Json).unwrap(), json_text);
}

#[test]
fn table_is_fixed_width() {
    let text = render(&[report("mlr", 0.25, 0.99), report("poly:2", 12.5, 0.98)], Format::Table).unwrap();
    let widths: Vec<usize> = text.lines().map(str::len).collect();
    assert!(widths.iter().all(|&w| w == widths[0]), "{text}");
    assert!(text.contains("Training Time (ms)"));
}

#[test]
fn files_are_written_and_read_back_by_extension() {
    let dir = tempdir().unwrap();
    let reports = vec![report("mlr", 0.5, 0.9)];
    for (name, format) in [("r.json", Format::Json), ("r.csv", Format::Csv)] {
        let path = dir.path().join(name);
        emit_report(&reports, format, &path).unwrap();
        assert_eq!(read_reports(&path).unwrap(), reports);
    }
    assert!(matches!(emit_report(&[], Format::Json, &dir.path().join("e.json")), Err(ReportError::Empty)));
}

#[test]
fn identical_reports_compare_clean() {
    let a = vec![report("mlr", 0.5, 0.9), report("simple", 0.2, 0.4)];
    let cmp = compare_reports(&a, &a, &Tolerances::default()).unwrap();
    assert!(cmp.passed);
    for row in &cmp.rows {
        assert_eq!(row.speed_ratio, Some(1.0));
        assert!(row.metric_deltas.values().all(|d| *d == Some(0.0)));
    }
}

#[test]
fn speed_ratio_is_b_over_a() {
    let cmp = compare_reports(&[report("mlr", 1.0, 0.9)], &[report("mlr", 2.0, 0.9)], &Tolerances::default()).unwrap();
    assert_eq!(cmp.rows[0].speed_ratio, Some(2.0));
    let strict = Tolerances { min_speed_ratio: Some(3.0), ..Tolerances::default() };
    assert!(!compare_reports(&[report("mlr", 1.0, 0.9)], &[report("mlr", 2.0, 0.9)], &strict).unwrap().passed);
}

#[test]
fn swapping_sides_inverts_speed_ratio() {
    for (ta, tb) in [(0.3, 0.7), (12.0, 0.25), (1.0, 1.0)] {
        let (a, b) = (vec![report("mlr", ta, 0.9)], vec![report("mlr", tb, 0.8)]);
        let ab = compare_reports(&a, &b, &Tolerances::default()).unwrap();
        let ba = compare_reports(&b, &a, &Tolerances::default()).unwrap();
        let product = ab.rows[0].speed_ratio.unwrap() * ba.rows[0].speed_ratio.unwrap();
        assert!((product - 1.0).abs() <= 1e-15);
    }
}

#[test]
fn metric_drift_fails_the_row() {
    let cmp = compare_reports(&[report("mlr", 1.0, 0.9)], &[report("mlr", 1.0, 0.9 + 1e-3)], &Tolerances::default())
        .unwrap();
    assert!(!cmp.passed);
    assert!((cmp.rows[0].metric_deltas["r2"].unwrap() - 1e-3).abs() < 1e-12);
}

#[test]
fn missing_row_names_the_key() {
    let a = vec![report("mlr", 0.5, 0.9), report("simple", 0.2, 0.4)];
    let b = vec![report("mlr", 0.5, 0.9)];
    let err = compare_reports(&a, &b, &Tolerances::default()).unwrap_err();
    assert_eq!(
        err,
        CompareError::KeyMismatch {
            dataset: "synthetic:1000x7:regression:0.1".into(),
            model: "simple".into(),
            present_in: "a"
        }
    );
    assert!(err.to_string().contains("simple"));
}
