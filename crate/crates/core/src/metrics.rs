//! Regression and binary-classification metrics.
//!
//! Precision, recall and F1 fall back to 0 when their denominator is 0, and
//! R² on a constant target is an error rather than NaN.

use serde::{Deserialize, Serialize};

use crate::error::{shape_err, Error, Result};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfusionMatrix {
    pub tp: usize,
    pub tn: usize,
    pub fp: usize,
    pub fn_: usize,
}

impl ConfusionMatrix {
    pub fn total(&self) -> usize {
        self.tp + self.tn + self.fp + self.fn_
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RegressionReport {
    pub r2: f64,
    pub mse: f64,
    pub mae: f64,
    pub rmse: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClassificationReport {
    pub accuracy: f64,
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
    pub matrix: ConfusionMatrix,
}

/// 2×2 contingency counts with `positive_label` as the positive class.
/// Every other label seen is treated as negative, and at most two distinct
/// labels may appear across both inputs.
pub fn confusion(y_true: &[f64], y_pred: &[f64], positive_label: f64) -> Result<ConfusionMatrix> {
    if y_true.len() != y_pred.len() {
        return Err(shape_err(format!(
            "y_true has {} labels, y_pred has {}",
            y_true.len(),
            y_pred.len()
        )));
    }
    let mut seen: Vec<f64> = Vec::with_capacity(2);
    let mut m = ConfusionMatrix::default();
    for (&t, &p) in y_true.iter().zip(y_pred) {
        for label in [t, p] {
            if !seen.contains(&label) {
                if seen.len() == 2 {
                    return Err(Error::MoreThanTwoClasses);
                }
                seen.push(label);
            }
        }
        match (t == positive_label, p == positive_label) {
            (true, true) => m.tp += 1,
            (false, false) => m.tn += 1,
            (false, true) => m.fp += 1,
            (true, false) => m.fn_ += 1,
        }
    }
    Ok(m)
}

pub fn regression_metrics(y_true: &[f64], y_pred: &[f64]) -> Result<RegressionReport> {
    if y_true.len() != y_pred.len() {
        return Err(shape_err(format!(
            "y_true has {} values, y_pred has {}",
            y_true.len(),
            y_pred.len()
        )));
    }
    if y_true.len() < 2 {
        return Err(Error::TooFewRows { needed: 2, got: y_true.len() });
    }
    let n = y_true.len() as f64;
    let mean = y_true.iter().sum::<f64>() / n;
    let ss_tot: f64 = y_true.iter().map(|y| (y - mean).powi(2)).sum();
    if ss_tot == 0.0 {
        return Err(Error::ConstantTarget);
    }
    let (mut ss_res, mut abs_sum) = (0.0, 0.0);
    for (t, p) in y_true.iter().zip(y_pred) {
        let e = t - p;
        ss_res += e * e;
        abs_sum += e.abs();
    }
    let mse = ss_res / n;
    Ok(RegressionReport { r2: 1.0 - ss_res / ss_tot, mse, mae: abs_sum / n, rmse: mse.sqrt() })
}

fn ratio_or_zero(num: usize, den: usize) -> f64 {
    if den == 0 {
        0.0
    } else {
        num as f64 / den as f64
    }
}

impl ClassificationReport {
    pub fn from_confusion(m: ConfusionMatrix) -> Self {
        let precision = ratio_or_zero(m.tp, m.tp + m.fp);
        let recall = ratio_or_zero(m.tp, m.tp + m.fn_);
        let f1 = if precision + recall == 0.0 {
            0.0
        } else {
            2.0 * precision * recall / (precision + recall)
        };
        Self { accuracy: ratio_or_zero(m.tp + m.tn, m.total()), precision, recall, f1, matrix: m }
    }
}

pub fn classification_metrics(y_true: &[f64], y_pred: &[f64], positive_label: f64) -> Result<ClassificationReport> {
    confusion(y_true, y_pred, positive_label).map(ClassificationReport::from_confusion)
}
