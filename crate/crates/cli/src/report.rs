use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use std::fs;
use std::io;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};
use thiserror::Error;

/// Label stored with every metric block: metrics come from the held-out rows.
pub const METRIC_SPLIT: &str = "validation";

const METRIC_PREFIX: &str = "metric:";
const FIXED_COLUMNS: [&str; 10] = [
    "dataset",
    "model",
    "seed",
    "complexity",
    "training_time_ms",
    "timings_ms",
    "epochs_run",
    "metric_split",
    "error",
    "config",
];

#[derive(Debug, Error)]
pub enum ReportError {
    #[error("no reports to emit")]
    Empty,
    #[error("unknown report format {0:?}")]
    UnknownFormat(String),
    #[error("malformed report: {0}")]
    Malformed(String),
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BenchReport {
    pub dataset: String,
    pub model: String,
    pub config: Map<String, Value>,
    /// Wall-clock fit time of every repeat.
    pub timings_ms: Vec<f64>,
    /// Median of `timings_ms`; null when the run failed.
    pub training_time_ms: Option<f64>,
    pub metrics: BTreeMap<String, f64>,
    pub metric_split: String,
    pub epochs_run: Option<usize>,
    /// Rows times feature columns of the dataset.
    pub complexity: u64,
    pub seed: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl BenchReport {
    pub fn key(&self) -> (String, String) {
        (self.dataset.clone(), self.model.clone())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Table,
}

impl FromStr for Format {
    type Err = ReportError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            "table" => Ok(Format::Table),
            other => Err(ReportError::UnknownFormat(other.to_string())),
        }
    }
}

pub fn render(reports: &[BenchReport], format: Format) -> Result<String, ReportError> {
    if reports.is_empty() {
        return Err(ReportError::Empty);
    }
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(reports)?;
            s.push('\n');
            Ok(s)
        }
        Format::Csv => to_csv(reports),
        Format::Table => Ok(to_table(reports)),
    }
}

pub fn emit_report(reports: &[BenchReport], format: Format, path: &Path) -> Result<(), ReportError> {
    let text = render(reports, format)?;
    fs::write(path, text)?;
    Ok(())
}

fn fmt_opt<T: ToString>(v: &Option<T>) -> String {
    v.as_ref().map(ToString::to_string).unwrap_or_default()
}

fn to_csv(reports: &[BenchReport]) -> Result<String, ReportError> {
    let metric_names: BTreeSet<&str> = reports.iter().flat_map(|r| r.metrics.keys().map(String::as_str)).collect();
    let mut writer = csv::Writer::from_writer(Vec::new());
    let header: Vec<String> = FIXED_COLUMNS
        .iter()
        .map(|c| c.to_string())
        .chain(metric_names.iter().map(|m| format!("{METRIC_PREFIX}{m}")))
        .collect();
    writer.write_record(&header)?;
    for r in reports {
        let timings: Vec<String> = r.timings_ms.iter().map(|t| t.to_string()).collect();
        let mut row = vec![
            r.dataset.clone(),
            r.model.clone(),
            r.seed.to_string(),
            r.complexity.to_string(),
            fmt_opt(&r.training_time_ms),
            timings.join(";"),
            fmt_opt(&r.epochs_run),
            r.metric_split.clone(),
            fmt_opt(&r.error),
            serde_json::to_string(&r.config)?,
        ];
        row.extend(metric_names.iter().map(|m| fmt_opt(&r.metrics.get(*m))));
        writer.write_record(&row)?;
    }
    let bytes = writer.into_inner().map_err(|e| ReportError::Io(e.into_error()))?;
    String::from_utf8(bytes).map_err(|e| ReportError::Malformed(e.to_string()))
}

fn parse_field<T: FromStr>(name: &str, cell: &str) -> Result<T, ReportError> {
    cell.parse().map_err(|_| ReportError::Malformed(format!("bad {name} value {cell:?}")))
}

fn parse_optional<T: FromStr>(name: &str, cell: &str) -> Result<Option<T>, ReportError> {
    if cell.is_empty() {
        Ok(None)
    } else {
        parse_field(name, cell).map(Some)
    }
}

/// Inverse of the CSV emitter.
pub fn parse_csv(text: &str) -> Result<Vec<BenchReport>, ReportError> {
    let mut reader = csv::Reader::from_reader(text.as_bytes());
    let header = reader.headers()?.clone();
    let column = |name: &str| {
        header.iter().position(|h| h == name).ok_or_else(|| ReportError::Malformed(format!("missing column {name}")))
    };
    let idx: Vec<usize> = FIXED_COLUMNS.iter().map(|c| column(c)).collect::<Result<_, _>>()?;
    let metric_columns: Vec<(usize, &str)> = header
        .iter()
        .enumerate()
        .filter_map(|(i, h)| h.strip_prefix(METRIC_PREFIX).map(|m| (i, m)))
        .collect();

    let mut reports = Vec::new();
    for record in reader.records() {
        let record = record?;
        let cell = |k: usize| record.get(idx[k]).unwrap_or("");
        let timings = if cell(5).is_empty() {
            Vec::new()
        } else {
            cell(5).split(';').map(|t| parse_field("timings_ms", t)).collect::<Result<_, _>>()?
        };
        let mut metrics = BTreeMap::new();
        for &(i, name) in &metric_columns {
            if let Some(v) = parse_optional(name, record.get(i).unwrap_or(""))? {
                metrics.insert(name.to_string(), v);
            }
        }
        reports.push(BenchReport {
            dataset: cell(0).to_string(),
            model: cell(1).to_string(),
            seed: parse_field("seed", cell(2))?,
            complexity: parse_field("complexity", cell(3))?,
            training_time_ms: parse_optional("training_time_ms", cell(4))?,
            timings_ms: timings,
            epochs_run: parse_optional("epochs_run", cell(6))?,
            metric_split: cell(7).to_string(),
            error: Some(cell(8).to_string()).filter(|e| !e.is_empty()),
            config: serde_json::from_str(cell(9))?,
            metrics,
        });
    }
    Ok(reports)
}

pub fn parse_json(text: &str) -> Result<Vec<BenchReport>, ReportError> {
    Ok(serde_json::from_str(text)?)
}

/// Reads a report file, choosing the parser from the `.csv` extension and
/// defaulting to JSON.
pub fn read_reports(path: &Path) -> Result<Vec<BenchReport>, ReportError> {
    let text = fs::read_to_string(path)?;
    match path.extension().and_then(|e| e.to_str()) {
        Some("csv") => parse_csv(&text),
        _ => parse_json(&text),
    }
}

fn to_table(reports: &[BenchReport]) -> String {
    let mut rows: Vec<[String; 4]> = Vec::new();
    for r in reports {
        let mut push = |metric: &str, value: String| {
            rows.push([r.dataset.clone(), r.model.clone(), metric.to_string(), value]);
        };
        if let Some(e) = &r.error {
            push("Error", e.clone());
            continue;
        }
        push("Training Time (ms)", r.training_time_ms.map(|t| format!("{t:.4}")).unwrap_or_default());
        for (name, v) in &r.metrics {
            if name == "accuracy" {
                // accuracy is shown on the 0-100 scale
                push("Accuracy (%)", format!("{:.4}", v * 100.0));
            } else {
                push(name, format!("{v:.4}"));
            }
        }
        if let Some(e) = r.epochs_run {
            push("Epochs", e.to_string());
        }
    }
    let titles = ["Dataset", "Model", "Evaluation Metric", "Value"];
    let widths: Vec<usize> =
        (0..4).map(|c| rows.iter().map(|r| r[c].len()).chain([titles[c].len()]).max().unwrap_or(0)).collect();
    let mut out = String::new();
    let line = |out: &mut String, cells: [&str; 4]| {
        let _ = writeln!(
            out,
            "{:<w0$}  {:<w1$}  {:<w2$}  {:>w3$}",
            cells[0],
            cells[1],
            cells[2],
            cells[3],
            w0 = widths[0],
            w1 = widths[1],
            w2 = widths[2],
            w3 = widths[3]
        );
    };
    line(&mut out, titles);
    let rule: Vec<String> = widths.iter().map(|w| "-".repeat(*w)).collect();
    line(&mut out, [&rule[0], &rule[1], &rule[2], &rule[3]]);
    let mut previous: Option<(&str, &str)> = None;
    for r in &rows {
        // repeat dataset and model only when they change, as in a grouped table
        let key = (r[0].as_str(), r[1].as_str());
        let (d, m) = if previous == Some(key) { ("", "") } else { key };
        line(&mut out, [d, m, &r[2], &r[3]]);
        previous = Some(key);
    }
    out
}
