use std::collections::BTreeMap;
use std::fmt;
use std::hint::black_box;
use std::str::FromStr;
use std::time::{Duration, Instant};

use leanml::{
    classification_metrics, components_for_variance, explained_variance_ratio, fit_multiple, fit_polynomial,
    fit_simple, kmeans_assign, kmeans_fit, knn_predict, logistic_fit, logistic_predict, nb_fit, nb_predict,
    pca_fit, pca_transform, regression_metrics, svm_fit, svm_predict, train_val_split, BatchSize, ClassStatistics,
    FittedLinearModel, GradientModelState, KMeansModel, KnnModel, Matrix, MinMaxScalerState, OptimizerConfig,
    PcaModel, PolynomialModel, Rng, SimpleLinearModel, StandardScalerState, SvmConfig, UpdateRule, Vector,
};
use serde_json::{json, Map, Value};
use thiserror::Error;

use crate::dataset::{Dataset, Task};
use crate::report::{BenchReport, METRIC_SPLIT};

pub const MIN_REPEATS: usize = 3;
pub const DEFAULT_VAL_RATIO: f64 = 0.2;
const DEFAULT_KNN_K: usize = 5;
const DEFAULT_KMEANS_K: usize = 2;
const DEFAULT_POLY_DEGREE: usize = 2;
/// Offset between the split seed and the model seed.
const MODEL_SEED_OFFSET: u64 = 1;

#[derive(Debug, Error, PartialEq)]
pub enum RunError {
    #[error("unknown model {0:?}")]
    UnknownModel(String),
    #[error("at least {MIN_REPEATS} repeats are required, got {0}")]
    TooFewRepeats(usize),
    #[error("invalid repeat count {0:?}")]
    BadRepeats(String),
    #[error("model {model} does not support {task} data")]
    IncompatibleTask { model: String, task: Task },
    #[error("classification target needs exactly two distinct values, found {0}")]
    NotBinary(usize),
    #[error(transparent)]
    Model(#[from] leanml::Error),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ModelKind {
    Mlr,
    Simple,
    Poly(usize),
    Logistic,
    Svm,
    Knn(usize),
    NaiveBayes,
    KMeans(usize),
    Pca,
    /// Does no work; used to check that timing covers only the fit.
    Noop,
}

impl ModelKind {
    pub fn supports(&self, task: Task) -> bool {
        match self {
            ModelKind::Mlr | ModelKind::Simple | ModelKind::Poly(_) => task == Task::Regression,
            ModelKind::Logistic | ModelKind::Svm | ModelKind::Knn(_) | ModelKind::NaiveBayes => {
                task == Task::BinaryClassification
            }
            ModelKind::KMeans(_) | ModelKind::Pca | ModelKind::Noop => true,
        }
    }

    /// Every listed model that can run on `task`, with default parameters.
    pub fn all_for(task: Task) -> Vec<ModelKind> {
        [
            ModelKind::Mlr,
            ModelKind::Simple,
            ModelKind::Poly(DEFAULT_POLY_DEGREE),
            ModelKind::Logistic,
            ModelKind::Svm,
            ModelKind::Knn(DEFAULT_KNN_K),
            ModelKind::NaiveBayes,
            ModelKind::KMeans(DEFAULT_KMEANS_K),
            ModelKind::Pca,
        ]
        .into_iter()
        .filter(|m| m.supports(task))
        .collect()
    }
}

impl fmt::Display for ModelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModelKind::Mlr => f.write_str("mlr"),
            ModelKind::Simple => f.write_str("simple"),
            ModelKind::Poly(d) => write!(f, "poly:{d}"),
            ModelKind::Logistic => f.write_str("logistic"),
            ModelKind::Svm => f.write_str("svm"),
            ModelKind::Knn(k) => write!(f, "knn:{k}"),
            ModelKind::NaiveBayes => f.write_str("nb"),
            ModelKind::KMeans(k) => write!(f, "kmeans:{k}"),
            ModelKind::Pca => f.write_str("pca"),
            ModelKind::Noop => f.write_str("noop"),
        }
    }
}

impl FromStr for ModelKind {
    type Err = RunError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let unknown = || RunError::UnknownModel(s.to_string());
        let (name, arg) = match s.split_once(':') {
            Some((n, a)) => (n, Some(a.parse::<usize>().map_err(|_| unknown())?)),
            None => (s, None),
        };
        Ok(match (name, arg) {
            ("mlr", None) => ModelKind::Mlr,
            ("simple", None) => ModelKind::Simple,
            ("poly", Some(d)) => ModelKind::Poly(d),
            ("poly", None) => ModelKind::Poly(DEFAULT_POLY_DEGREE),
            ("logistic", None) => ModelKind::Logistic,
            ("svm", None) => ModelKind::Svm,
            ("knn", k) => ModelKind::Knn(k.unwrap_or(DEFAULT_KNN_K)),
            ("nb", None) => ModelKind::NaiveBayes,
            ("kmeans", k) => ModelKind::KMeans(k.unwrap_or(DEFAULT_KMEANS_K)),
            ("pca", None) => ModelKind::Pca,
            ("noop", None) => ModelKind::Noop,
            _ => return Err(unknown()),
        })
    }
}

/// Parses a comma-separated model list; `all` expands to every model that
/// fits `task`.
pub fn parse_model_list(s: &str, task: Task) -> Result<Vec<ModelKind>, RunError> {
    let mut models = Vec::new();
    for item in s.split(',').map(str::trim).filter(|i| !i.is_empty()) {
        if item == "all" {
            models.extend(ModelKind::all_for(task));
        } else {
            models.push(item.parse()?);
        }
    }
    if models.is_empty() {
        return Err(RunError::UnknownModel(s.to_string()));
    }
    Ok(models)
}

/// The repeat count from `BENCH_REPEATS` when set, else `cli`.
pub fn effective_repeats(cli: usize, env: Option<&str>) -> Result<usize, RunError> {
    let repeats = match env {
        Some(v) => v.trim().parse().map_err(|_| RunError::BadRepeats(v.to_string()))?,
        None => cli,
    };
    if repeats < MIN_REPEATS {
        return Err(RunError::TooFewRepeats(repeats));
    }
    Ok(repeats)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Scaling {
    None,
    Standard,
    MinMax,
}

impl FromStr for Scaling {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "none" => Ok(Scaling::None),
            "standard" => Ok(Scaling::Standard),
            "minmax" => Ok(Scaling::MinMax),
            other => Err(format!("unknown scaling {other:?}")),
        }
    }
}

impl fmt::Display for Scaling {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Scaling::None => "none",
            Scaling::Standard => "standard",
            Scaling::MinMax => "minmax",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RunConfig {
    pub val_ratio: f64,
    /// `None` picks standard scaling for classification, none for regression.
    pub scaling: Option<Scaling>,
    pub optimizer: OptimizerConfig,
    pub svm_lambda: f64,
    pub early_stop_accuracy: f64,
    pub decision_threshold: f64,
    pub kmeans_max_iterations: usize,
    pub kmeans_tolerance: f64,
    pub pca_variance: f64,
}

impl Default for RunConfig {
    fn default() -> Self {
        let svm = SvmConfig::default();
        Self {
            val_ratio: DEFAULT_VAL_RATIO,
            scaling: None,
            optimizer: OptimizerConfig::default(),
            svm_lambda: svm.lambda,
            early_stop_accuracy: svm.early_stop_accuracy,
            decision_threshold: 0.5,
            kmeans_max_iterations: leanml::unsupervised::DEFAULT_MAX_ITERATIONS,
            kmeans_tolerance: leanml::unsupervised::DEFAULT_TOLERANCE,
            pca_variance: 0.95,
        }
    }
}

impl RunConfig {
    pub fn scaling_for(&self, task: Task) -> Scaling {
        self.scaling.unwrap_or(match task {
            Task::Regression => Scaling::None,
            Task::BinaryClassification => Scaling::Standard,
        })
    }

    fn svm(&self) -> SvmConfig {
        SvmConfig { lambda: self.svm_lambda, early_stop_accuracy: self.early_stop_accuracy, optimizer: self.optimizer }
    }

    /// Settings that affect `model`, for the report.
    fn echo(&self, model: ModelKind, task: Task, repeats: usize) -> Map<String, Value> {
        let mut m = Map::new();
        m.insert("val_ratio".into(), json!(self.val_ratio));
        m.insert("scaling".into(), json!(self.scaling_for(task).to_string()));
        m.insert("repeats".into(), json!(repeats));
        m.insert("task".into(), json!(task.to_string()));
        let opt = &self.optimizer;
        let optimizer = || {
            let mut o = Map::new();
            o.insert("learning_rate".into(), json!(opt.learning_rate));
            o.insert("momentum".into(), json!(opt.momentum));
            o.insert("max_epochs".into(), json!(opt.max_epochs));
            o.insert(
                "batch_size".into(),
                match opt.batch_size {
                    BatchSize::Full => json!("full"),
                    BatchSize::Size(b) => json!(b),
                },
            );
            o.insert(
                "update_rule".into(),
                json!(match opt.update_rule {
                    UpdateRule::Momentum => "momentum",
                    UpdateRule::Adam { .. } => "adam",
                }),
            );
            o
        };
        match model {
            ModelKind::Poly(d) => {
                m.insert("degree".into(), json!(d));
            }
            ModelKind::Logistic => {
                m.extend(optimizer());
                m.insert("threshold".into(), json!(self.decision_threshold));
            }
            ModelKind::Svm => {
                m.extend(optimizer());
                m.insert("lambda".into(), json!(self.svm_lambda));
                m.insert("early_stop_accuracy".into(), json!(self.early_stop_accuracy));
            }
            ModelKind::Knn(k) | ModelKind::KMeans(k) => {
                m.insert("k".into(), json!(k));
                if let ModelKind::KMeans(_) = model {
                    m.insert("max_iterations".into(), json!(self.kmeans_max_iterations));
                    m.insert("tolerance".into(), json!(self.kmeans_tolerance));
                }
            }
            ModelKind::Pca => {
                m.insert("variance_target".into(), json!(self.pca_variance));
            }
            ModelKind::Mlr | ModelKind::Simple | ModelKind::NaiveBayes | ModelKind::Noop => {}
        }
        m
    }
}

/// Split and scaled data, ready for timing.
struct Prepared {
    x_train: Matrix,
    x_val: Matrix,
    y_train: Vector,
    y_val: Vector,
    /// Training labels as ±1 for the SVM.
    y_train_signed: Vector,
}

/// Maps the two distinct target values to 0 and 1, larger value positive.
fn binary_labels(y: &Vector) -> Result<Vector, RunError> {
    let mut distinct: Vec<f64> = y.to_vec();
    distinct.sort_by(f64::total_cmp);
    distinct.dedup();
    if distinct.len() != 2 {
        return Err(RunError::NotBinary(distinct.len()));
    }
    Ok(Vector::new(y.iter().map(|&v| if v == distinct[1] { 1.0 } else { 0.0 }).collect())?)
}

fn prepare(data: &Dataset, cfg: &RunConfig) -> Result<Prepared, RunError> {
    let y = match data.task {
        Task::Regression => data.y.clone(),
        Task::BinaryClassification => binary_labels(&data.y)?,
    };
    let split = train_val_split(&data.x, &y, cfg.val_ratio, &mut Rng::new(data.seed))?;
    let (x_train, x_val) = match cfg.scaling_for(data.task) {
        Scaling::None => (split.x_train, split.x_val),
        Scaling::Standard => {
            let s = StandardScalerState::fit(&split.x_train)?;
            (s.transform(&split.x_train)?, s.transform(&split.x_val)?)
        }
        Scaling::MinMax => {
            let s = MinMaxScalerState::fit(&split.x_train)?;
            (s.transform(&split.x_train)?, s.transform(&split.x_val)?)
        }
    };
    let y_train_signed = Vector::new(split.y_train.iter().map(|&v| if v == 1.0 { 1.0 } else { -1.0 }).collect())?;
    Ok(Prepared { x_train, x_val, y_train: split.y_train, y_val: split.y_val, y_train_signed })
}

enum Fitted {
    Mlr(FittedLinearModel),
    Simple(SimpleLinearModel),
    Poly(PolynomialModel),
    Logistic(GradientModelState),
    Svm(GradientModelState),
    Knn(KnnModel),
    NaiveBayes(Vec<ClassStatistics>),
    KMeans(KMeansModel),
    Pca(PcaModel),
    Noop,
}

fn fit(model: ModelKind, p: &Prepared, cfg: &RunConfig, rng: &mut Rng) -> leanml::Result<Fitted> {
    Ok(match model {
        ModelKind::Mlr => Fitted::Mlr(fit_multiple(&p.x_train, &p.y_train)?),
        ModelKind::Simple => Fitted::Simple(fit_simple(&p.x_train.column(0), &p.y_train)?),
        ModelKind::Poly(d) => Fitted::Poly(fit_polynomial(&p.x_train, &p.y_train, d)?),
        ModelKind::Logistic => Fitted::Logistic(logistic_fit(&p.x_train, &p.y_train, &cfg.optimizer, rng)?),
        ModelKind::Svm => Fitted::Svm(svm_fit(&p.x_train, &p.y_train_signed, &cfg.svm(), rng)?),
        ModelKind::Knn(k) => Fitted::Knn(KnnModel::fit(p.x_train.clone(), p.y_train.clone(), k)?),
        ModelKind::NaiveBayes => Fitted::NaiveBayes(nb_fit(&p.x_train, &p.y_train)?),
        ModelKind::KMeans(k) => {
            Fitted::KMeans(kmeans_fit(&p.x_train, k, cfg.kmeans_max_iterations, cfg.kmeans_tolerance, rng)?)
        }
        ModelKind::Pca => Fitted::Pca(pca_fit(&p.x_train)?.keep_variance(cfg.pca_variance)?),
        ModelKind::Noop => {
            black_box(&p.x_train);
            Fitted::Noop
        }
    })
}

type Evaluation = (BTreeMap<String, f64>, Option<usize>);

fn regression_block(y: &[f64], pred: &[f64]) -> leanml::Result<BTreeMap<String, f64>> {
    let r = regression_metrics(y, pred)?;
    Ok(BTreeMap::from([
        ("r2".into(), r.r2),
        ("mse".into(), r.mse),
        ("mae".into(), r.mae),
        ("rmse".into(), r.rmse),
    ]))
}

fn classification_block(y: &[f64], pred: &[f64]) -> leanml::Result<BTreeMap<String, f64>> {
    let r = classification_metrics(y, pred, 1.0)?;
    Ok(BTreeMap::from([
        ("accuracy".into(), r.accuracy),
        ("precision".into(), r.precision),
        ("recall".into(), r.recall),
        ("f1".into(), r.f1),
        ("tp".into(), r.matrix.tp as f64),
        ("tn".into(), r.matrix.tn as f64),
        ("fp".into(), r.matrix.fp as f64),
        ("fn".into(), r.matrix.fn_ as f64),
    ]))
}

fn evaluate(fitted: &Fitted, p: &Prepared, cfg: &RunConfig) -> leanml::Result<Evaluation> {
    let y = p.y_val.as_slice();
    Ok(match fitted {
        Fitted::Mlr(m) => (regression_block(y, &m.predict(&p.x_val)?)?, None),
        Fitted::Simple(m) => (regression_block(y, &m.predict(&p.x_val.column(0)))?, None),
        Fitted::Poly(m) => (regression_block(y, &m.predict(&p.x_val)?)?, None),
        Fitted::Logistic(s) => {
            let pred = logistic_predict(s, &p.x_val, cfg.decision_threshold)?;
            (classification_block(y, &pred)?, Some(s.epochs_run))
        }
        Fitted::Svm(s) => {
            let pred: Vec<f64> = svm_predict(s, &p.x_val)?.iter().map(|&v| if v > 0.0 { 1.0 } else { 0.0 }).collect();
            (classification_block(y, &pred)?, Some(s.epochs_run))
        }
        Fitted::Knn(m) => (classification_block(y, &knn_predict(m, &p.x_val)?)?, None),
        Fitted::NaiveBayes(s) => (classification_block(y, &nb_predict(s, &p.x_val)?)?, None),
        Fitted::KMeans(m) => {
            let labels = kmeans_assign(m, &p.x_val)?;
            let val_inertia: f64 = p
                .x_val
                .row_iter()
                .zip(labels.iter())
                .map(|(r, &c)| m.centroids.row(c as usize).iter().zip(r).map(|(a, b)| (a - b) * (a - b)).sum::<f64>())
                .sum();
            let metrics = BTreeMap::from([
                ("inertia".into(), val_inertia),
                ("train_inertia".into(), m.inertia),
                ("iterations".into(), m.iterations_run as f64),
            ]);
            (metrics, None)
        }
        Fitted::Pca(m) => {
            let kept = components_for_variance(m, cfg.pca_variance)?;
            let z = pca_transform(m, &p.x_val, kept)?;
            let back = m.inverse_transform(&z)?;
            let n = p.x_val.as_slice().len() as f64;
            let mse = p.x_val.as_slice().iter().zip(back.as_slice()).map(|(a, b)| (a - b) * (a - b)).sum::<f64>() / n;
            let metrics = BTreeMap::from([
                ("components".into(), kept as f64),
                ("explained_variance".into(), explained_variance_ratio(m, kept)?),
                ("reconstruction_mse".into(), mse),
            ]);
            (metrics, None)
        }
        Fitted::Noop => (BTreeMap::new(), None),
    })
}

fn median(values: &[f64]) -> f64 {
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    let mid = v.len() / 2;
    if v.len().is_multiple_of(2) {
        (v[mid - 1] + v[mid]) / 2.0
    } else {
        v[mid]
    }
}

/// Clock-resolution floor so a measured fit never reports zero time.
const TIMER_FLOOR: Duration = Duration::from_nanos(1);

/// Fits `model` `repeats` times on the seeded training split, timing only
/// the fit call, and scores the last fit on the validation rows. Failures
/// land in the report's `error` field.
pub fn run_benchmark(data: &Dataset, model: ModelKind, cfg: &RunConfig, repeats: usize) -> BenchReport {
    let mut report = BenchReport {
        dataset: data.id.clone(),
        model: model.to_string(),
        config: cfg.echo(model, data.task, repeats),
        timings_ms: Vec::new(),
        training_time_ms: None,
        metrics: BTreeMap::new(),
        metric_split: METRIC_SPLIT.to_string(),
        epochs_run: None,
        complexity: data.complexity(),
        seed: data.seed,
        error: None,
    };
    if let Err(e) = run_into(&mut report, data, model, cfg, repeats) {
        report.error = Some(e.to_string());
        report.timings_ms.clear();
        report.training_time_ms = None;
    }
    report
}

fn run_into(
    report: &mut BenchReport,
    data: &Dataset,
    model: ModelKind,
    cfg: &RunConfig,
    repeats: usize,
) -> Result<(), RunError> {
    if repeats < MIN_REPEATS {
        return Err(RunError::TooFewRepeats(repeats));
    }
    if !model.supports(data.task) {
        return Err(RunError::IncompatibleTask { model: model.to_string(), task: data.task });
    }
    let prepared = prepare(data, cfg)?;
    let mut last = None;
    for _ in 0..repeats {
        let mut rng = Rng::new(data.seed.wrapping_add(MODEL_SEED_OFFSET));
        let start = Instant::now();
        let fitted = fit(model, &prepared, cfg, &mut rng);
        let elapsed = start.elapsed().max(TIMER_FLOOR);
        report.timings_ms.push(elapsed.as_secs_f64() * 1e3);
        last = Some(black_box(fitted)?);
    }
    let fitted = last.expect("at least one repeat");
    let (metrics, epochs) = evaluate(&fitted, &prepared, cfg)?;
    report.training_time_ms = Some(median(&report.timings_ms));
    report.metrics = metrics;
    report.epochs_run = epochs;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn median_of_odd_and_even() {
        assert_eq!(median(&[3.0, 1.0, 2.0]), 2.0);
        assert_eq!(median(&[4.0, 1.0, 3.0, 2.0]), 2.5);
    }

    #[test]
    fn model_names_round_trip() {
        for m in ModelKind::all_for(Task::Regression).into_iter().chain(ModelKind::all_for(Task::BinaryClassification)) {
            assert_eq!(m.to_string().parse::<ModelKind>().unwrap(), m);
        }
        assert_eq!("poly:3".parse::<ModelKind>().unwrap(), ModelKind::Poly(3));
        assert!("forest".parse::<ModelKind>().is_err());
        assert!("knn:x".parse::<ModelKind>().is_err());
    }

    #[test]
    fn all_expands_by_task() {
        let reg = parse_model_list("all", Task::Regression).unwrap();
        assert!(reg.contains(&ModelKind::Mlr) && !reg.contains(&ModelKind::Svm));
        let clf = parse_model_list("all,noop", Task::BinaryClassification).unwrap();
        assert!(clf.contains(&ModelKind::Svm) && clf.contains(&ModelKind::Noop) && !clf.contains(&ModelKind::Mlr));
    }

    #[test]
    fn env_overrides_cli_repeats() {
        assert_eq!(effective_repeats(3, None), Ok(3));
        assert_eq!(effective_repeats(3, Some("7")), Ok(7));
        assert_eq!(effective_repeats(5, Some("2")), Err(RunError::TooFewRepeats(2)));
        assert!(matches!(effective_repeats(3, Some("many")), Err(RunError::BadRepeats(_))));
    }

    #[test]
    fn labels_map_larger_value_to_positive() {
        let y = Vector::new(vec![7.0, -2.0, 7.0]).unwrap();
        assert_eq!(binary_labels(&y).unwrap().as_slice(), &[1.0, 0.0, 1.0]);
        let three = Vector::new(vec![1.0, 2.0, 3.0]).unwrap();
        assert_eq!(binary_labels(&three), Err(RunError::NotBinary(3)));
    }
}
