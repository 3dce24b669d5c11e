use std::fmt;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::str::FromStr;

use leanml::{Matrix, Rng, Vector};
use thiserror::Error;

pub const DEFAULT_NOISE: f64 = 0.1;
pub const DEFAULT_SEPARATION: f64 = 4.0;
const MIN_SYNTHETIC_ROWS: usize = 10;

#[derive(Debug, Error)]
pub enum DatasetError {
    #[error("dataset file not found: {0}")]
    FileNotFound(PathBuf),
    #[error("non-numeric cell {value:?} at data row {row}, column {col}")]
    NonNumericCell { row: usize, col: usize, value: String },
    #[error("target column {0:?} not in header")]
    MissingTargetColumn(String),
    #[error("no feature columns besides the target")]
    NoFeatureColumns,
    #[error("no data rows")]
    NoRows,
    #[error("invalid dataset spec: {0}")]
    SpecInvalid(String),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error(transparent)]
    Model(#[from] leanml::Error),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Task {
    Regression,
    BinaryClassification,
}

impl fmt::Display for Task {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Task::Regression => "regression",
            Task::BinaryClassification => "classification",
        })
    }
}

impl FromStr for Task {
    type Err = DatasetError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "regression" => Ok(Task::Regression),
            "classification" | "binary-classification" => Ok(Task::BinaryClassification),
            other => Err(DatasetError::SpecInvalid(format!("unknown task {other:?}"))),
        }
    }
}

/// Recipe for a generated dataset. `cols` counts feature columns only.
#[derive(Clone, Debug, PartialEq)]
pub struct SyntheticRecipe {
    pub rows: usize,
    pub cols: usize,
    pub task: Task,
    /// Regression: standard deviation of the additive Gaussian noise.
    /// Classification: distance between the two class means in units of the
    /// per-class standard deviation.
    pub param: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Source {
    Csv(PathBuf),
    Synthetic(SyntheticRecipe),
}

impl Source {
    /// Parses `synthetic:ROWSxCOLS:task[:param]`; anything else is a path.
    pub fn parse(s: &str) -> Result<Self, DatasetError> {
        let Some(rest) = s.strip_prefix("synthetic:") else {
            return Ok(Source::Csv(PathBuf::from(s)));
        };
        let bad = || DatasetError::SpecInvalid(format!("expected synthetic:ROWSxCOLS:task[:param], got {s:?}"));
        let mut parts = rest.split(':');
        let shape = parts.next().ok_or_else(bad)?;
        let (rows, cols) = shape.split_once(['x', 'X']).ok_or_else(bad)?;
        let rows: usize = rows.trim().parse().map_err(|_| bad())?;
        let cols: usize = cols.trim().parse().map_err(|_| bad())?;
        let task: Task = parts.next().ok_or_else(bad)?.parse()?;
        let param = match parts.next() {
            Some(p) => p.parse().map_err(|_| bad())?,
            None => match task {
                Task::Regression => DEFAULT_NOISE,
                Task::BinaryClassification => DEFAULT_SEPARATION,
            },
        };
        if parts.next().is_some() {
            return Err(bad());
        }
        Ok(Source::Synthetic(SyntheticRecipe { rows, cols, task, param }))
    }
}

impl fmt::Display for Source {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Source::Csv(path) => write!(f, "{}", path.display()),
            Source::Synthetic(r) => write!(f, "synthetic:{}x{}:{}:{}", r.rows, r.cols, r.task, r.param),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct DatasetSpec {
    pub source: Source,
    pub task: Task,
    /// Target column name for CSV sources.
    pub target: String,
    pub seed: u64,
}

impl DatasetSpec {
    pub fn synthetic(rows: usize, cols: usize, task: Task, seed: u64) -> Self {
        let param = match task {
            Task::Regression => DEFAULT_NOISE,
            Task::BinaryClassification => DEFAULT_SEPARATION,
        };
        Self {
            source: Source::Synthetic(SyntheticRecipe { rows, cols, task, param }),
            task,
            target: "target".into(),
            seed,
        }
    }

    pub fn id(&self) -> String {
        self.source.to_string()
    }

    /// Loads or generates the data described by this spec.
    pub fn materialize(&self) -> Result<Dataset, DatasetError> {
        let (x, y, coefficients) = match &self.source {
            Source::Csv(path) => {
                let (x, y) = load_csv(path, &self.target)?;
                (x, y, None)
            }
            Source::Synthetic(recipe) => {
                if recipe.task != self.task {
                    return Err(DatasetError::SpecInvalid(format!(
                        "recipe task {} differs from spec task {}",
                        recipe.task, self.task
                    )));
                }
                let data = generate_synthetic(recipe, &mut Rng::new(self.seed))?;
                (data.x, data.y, data.coefficients)
            }
        };
        Ok(Dataset { id: self.id(), task: self.task, seed: self.seed, x, y, coefficients })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Dataset {
    pub id: String,
    pub task: Task,
    pub seed: u64,
    pub x: Matrix,
    pub y: Vector,
    /// Generating coefficients `[intercept, weights...]` of a synthetic
    /// regression set.
    pub coefficients: Option<Vec<f64>>,
}

impl Dataset {
    /// Rows times feature columns.
    pub fn complexity(&self) -> u64 {
        (self.x.rows() * self.x.cols()) as u64
    }
}

/// Reads a headered, comma-delimited numeric CSV. Features keep header order
/// with the target column removed. Row and column numbers in errors are
/// 1-based and count data rows only.
pub fn load_csv(path: &Path, target: &str) -> Result<(Matrix, Vector), DatasetError> {
    if !path.is_file() {
        return Err(DatasetError::FileNotFound(path.to_path_buf()));
    }
    let mut reader = csv::Reader::from_path(path)?;
    let headers = reader.headers()?.clone();
    let target_col = headers
        .iter()
        .position(|h| h.trim() == target)
        .ok_or_else(|| DatasetError::MissingTargetColumn(target.to_string()))?;
    let n_features = headers.len() - 1;
    if n_features == 0 {
        return Err(DatasetError::NoFeatureColumns);
    }

    let mut data = Vec::new();
    let mut y = Vec::new();
    for (i, record) in reader.records().enumerate() {
        let record = record?;
        for (j, cell) in record.iter().enumerate() {
            let value = cell
                .trim()
                .parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .ok_or_else(|| DatasetError::NonNumericCell { row: i + 1, col: j + 1, value: cell.to_string() })?;
            if j == target_col {
                y.push(value);
            } else {
                data.push(value);
            }
        }
    }
    if y.is_empty() {
        return Err(DatasetError::NoRows);
    }
    Ok((Matrix::new(y.len(), n_features, data)?, Vector::new(y)?))
}

/// Writes features then the target, using shortest round-trip formatting so
/// a reload reproduces every value bit for bit.
pub fn write_csv(path: &Path, x: &Matrix, y: &[f64], target: &str) -> Result<(), DatasetError> {
    if y.len() != x.rows() {
        return Err(leanml::Error::ShapeMismatch(format!("{} rows but {} targets", x.rows(), y.len())).into());
    }
    let mut out = BufWriter::new(File::create(path)?);
    let header: Vec<String> = (0..x.cols()).map(|j| format!("x{j}")).chain([target.to_string()]).collect();
    writeln!(out, "{}", header.join(","))?;
    for (row, t) in x.row_iter().zip(y) {
        let cells: Vec<String> = row.iter().chain([t]).map(|v| format!("{v}")).collect();
        writeln!(out, "{}", cells.join(","))?;
    }
    out.flush()?;
    Ok(())
}

#[derive(Clone, Debug, PartialEq)]
pub struct SyntheticData {
    pub x: Matrix,
    pub y: Vector,
    /// `[intercept, weights...]` for regression recipes.
    pub coefficients: Option<Vec<f64>>,
}

/// Regression: standard-normal features, coefficients drawn from
/// `[-5, 5)`, target `intercept + x·w + noise * N(0, 1)`.
///
/// Classification: alternating labels 0/1, each row standard normal around
/// `±param/2` times a random unit direction.
pub fn generate_synthetic(recipe: &SyntheticRecipe, rng: &mut Rng) -> Result<SyntheticData, DatasetError> {
    if recipe.rows < MIN_SYNTHETIC_ROWS {
        return Err(DatasetError::SpecInvalid(format!(
            "need at least {MIN_SYNTHETIC_ROWS} rows, got {}",
            recipe.rows
        )));
    }
    if recipe.cols < 1 {
        return Err(DatasetError::SpecInvalid("need at least one column".into()));
    }
    if !(recipe.param >= 0.0 && recipe.param.is_finite()) {
        return Err(DatasetError::SpecInvalid(format!("parameter {} must be finite and >= 0", recipe.param)));
    }
    let (n, d) = (recipe.rows, recipe.cols);
    match recipe.task {
        Task::Regression => {
            let coefficients: Vec<f64> = (0..=d).map(|_| rng.uniform_range(-5.0, 5.0)).collect();
            let x = Matrix::from_fn(n, d, |_, _| rng.standard_normal())?;
            let y: Vec<f64> = x
                .row_iter()
                .map(|r| {
                    let clean = coefficients[0] + r.iter().zip(&coefficients[1..]).map(|(a, b)| a * b).sum::<f64>();
                    clean + recipe.param * rng.standard_normal()
                })
                .collect();
            Ok(SyntheticData { x, y: Vector::new(y)?, coefficients: Some(coefficients) })
        }
        Task::BinaryClassification => {
            let mut direction: Vec<f64> = (0..d).map(|_| rng.standard_normal()).collect();
            let norm = direction.iter().map(|v| v * v).sum::<f64>().sqrt();
            if norm > 0.0 {
                direction.iter_mut().for_each(|v| *v /= norm);
            } else {
                direction[0] = 1.0;
            }
            let half = recipe.param / 2.0;
            let labels: Vec<f64> = (0..n).map(|i| (i % 2) as f64).collect();
            let x = Matrix::from_fn(n, d, |i, j| {
                let sign = if labels[i] == 1.0 { 1.0 } else { -1.0 };
                rng.standard_normal() + sign * half * direction[j]
            })?;
            Ok(SyntheticData { x, y: Vector::new(labels)?, coefficients: None })
        }
    }
}
