use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::report::BenchReport;

#[derive(Debug, Error, PartialEq)]
pub enum CompareError {
    #[error("row {dataset}/{model} present in {present_in} only")]
    KeyMismatch { dataset: String, model: String, present_in: &'static str },
    #[error("row {dataset}/{model} appears more than once in {side}")]
    DuplicateKey { dataset: String, model: String, side: &'static str },
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    /// Largest accepted |b - a| for any metric.
    pub metric_abs: f64,
    /// When set, every row needs `speed_ratio >= min_speed_ratio`.
    pub min_speed_ratio: Option<f64>,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self { metric_abs: 1e-6, min_speed_ratio: None }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComparisonRow {
    pub dataset: String,
    pub model: String,
    pub time_a_ms: Option<f64>,
    pub time_b_ms: Option<f64>,
    /// `time_b / time_a`: above 1 when `a` trained faster.
    pub speed_ratio: Option<f64>,
    /// `b - a` per metric; `None` when only one side reports it.
    pub metric_deltas: BTreeMap<String, Option<f64>>,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Comparison {
    pub rows: Vec<ComparisonRow>,
    pub passed: bool,
}

fn index<'a>(
    reports: &'a [BenchReport],
    side: &'static str,
) -> Result<BTreeMap<(String, String), &'a BenchReport>, CompareError> {
    let mut map = BTreeMap::new();
    for r in reports {
        if map.insert(r.key(), r).is_some() {
            return Err(CompareError::DuplicateKey { dataset: r.dataset.clone(), model: r.model.clone(), side });
        }
    }
    Ok(map)
}

/// Pairs rows by (dataset, model) and diffs timings and metrics.
pub fn compare_reports(a: &[BenchReport], b: &[BenchReport], tol: &Tolerances) -> Result<Comparison, CompareError> {
    let left = index(a, "a")?;
    let right = index(b, "b")?;
    for (keys, other, present_in) in [(&left, &right, "a"), (&right, &left, "b")] {
        if let Some((dataset, model)) = keys.keys().find(|k| !other.contains_key(*k)) {
            return Err(CompareError::KeyMismatch { dataset: dataset.clone(), model: model.clone(), present_in });
        }
    }

    let rows: Vec<ComparisonRow> = left
        .iter()
        .map(|(key, ra)| {
            let rb = right[key];
            let names: BTreeSet<&String> = ra.metrics.keys().chain(rb.metrics.keys()).collect();
            let metric_deltas: BTreeMap<String, Option<f64>> = names
                .into_iter()
                .map(|m| (m.clone(), ra.metrics.get(m).zip(rb.metrics.get(m)).map(|(x, y)| y - x)))
                .collect();
            let speed_ratio = match (ra.training_time_ms, rb.training_time_ms) {
                (Some(ta), Some(tb)) if ta > 0.0 => Some(tb / ta),
                _ => None,
            };
            let metrics_ok = metric_deltas.values().all(|d| d.is_some_and(|d| d.abs() <= tol.metric_abs));
            let speed_ok = match tol.min_speed_ratio {
                Some(min) => speed_ratio.is_some_and(|r| r >= min),
                None => true,
            };
            let errors_ok = ra.error.is_none() && rb.error.is_none();
            ComparisonRow {
                dataset: key.0.clone(),
                model: key.1.clone(),
                time_a_ms: ra.training_time_ms,
                time_b_ms: rb.training_time_ms,
                speed_ratio,
                metric_deltas,
                passed: metrics_ok && speed_ok && errors_ok,
            }
        })
        .collect();
    let passed = rows.iter().all(|r| r.passed);
    Ok(Comparison { rows, passed })
}

pub fn render_comparison(cmp: &Comparison) -> String {
    let num = |v: Option<f64>| v.map(|v| format!("{v:.6}")).unwrap_or_else(|| "-".into());
    let mut out = String::new();
    for row in &cmp.rows {
        let _ = writeln!(
            out,
            "{} {}/{}  time_a={} time_b={} speed_ratio={}",
            if row.passed { "PASS" } else { "FAIL" },
            row.dataset,
            row.model,
            num(row.time_a_ms),
            num(row.time_b_ms),
            num(row.speed_ratio)
        );
        for (name, delta) in &row.metric_deltas {
            let _ = writeln!(out, "    {name}: delta={}", delta.map(|d| format!("{d:e}")).unwrap_or_else(|| "missing".into()));
        }
    }
    let _ = writeln!(out, "{}", if cmp.passed { "all rows within tolerance" } else { "some rows outside tolerance" });
    out
}
