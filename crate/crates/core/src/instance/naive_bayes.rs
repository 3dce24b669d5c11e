use std::f64::consts::PI;

use crate::error::{shape_err, Error, Result};
use crate::numeric::{Matrix, Vector};

/// Variance floor, relative to the largest per-feature variance of the
/// whole training set.
const VARIANCE_SMOOTHING: f64 = 1e-9;

/// Gaussian summary of one class.
#[derive(Clone, Debug, PartialEq)]
pub struct ClassStatistics {
    pub class: f64,
    pub prior: f64,
    pub mean: Vector,
    /// Sample standard deviation (n-1 divisor), floored by the smoothing
    /// variance.
    pub std: Vector,
}

fn sample_variance(values: impl Iterator<Item = f64> + Clone) -> f64 {
    let (n, sum) = values.clone().fold((0usize, 0.0), |(n, s), v| (n + 1, s + v));
    let mean = sum / n as f64;
    values.map(|v| (v - mean) * (v - mean)).sum::<f64>() / (n as f64 - 1.0)
}

/// Fits per-class priors, means and standard deviations. Classes come back
/// sorted by id.
pub fn nb_fit(x: &Matrix, labels: &Vector) -> Result<Vec<ClassStatistics>> {
    if x.rows() != labels.len() {
        return Err(shape_err(format!("X has {} rows but {} labels", x.rows(), labels.len())));
    }
    if x.rows() == 0 {
        return Err(Error::EmptyInput);
    }
    let d = x.cols();
    let mut classes: Vec<f64> = labels.to_vec();
    classes.sort_by(f64::total_cmp);
    classes.dedup();

    let max_var = if x.rows() >= 2 {
        (0..d)
            .map(|j| sample_variance(x.row_iter().map(move |r| r[j])))
            .fold(0.0, f64::max)
    } else {
        0.0
    };
    let floor = VARIANCE_SMOOTHING * if max_var > 0.0 { max_var } else { 1.0 };

    let total = x.rows() as f64;
    classes
        .into_iter()
        .map(|class| {
            let members: Vec<&[f64]> = x
                .row_iter()
                .zip(labels.iter())
                .filter(|(_, &l)| l == class)
                .map(|(r, _)| r)
                .collect();
            if members.len() < 2 {
                return Err(Error::ClassTooSmall { class, count: members.len() });
            }
            let count = members.len() as f64;
            let mut mean = vec![0.0; d];
            let mut std = vec![0.0; d];
            for j in 0..d {
                let column = members.iter().map(|r| r[j]);
                mean[j] = column.clone().sum::<f64>() / count;
                std[j] = sample_variance(column).max(floor).sqrt();
            }
            Ok(ClassStatistics {
                class,
                prior: count / total,
                mean: Vector::new(mean)?,
                std: Vector::new(std)?,
            })
        })
        .collect()
}

/// Log prior plus summed Gaussian log densities, one row per query and one
/// column per class (in `stats` order).
pub fn nb_log_scores(stats: &[ClassStatistics], x: &Matrix) -> Result<Matrix> {
    let d = stats.first().map_or(0, |s| s.mean.len());
    if stats.iter().any(|s| s.mean.len() != d || s.std.len() != d) || x.cols() != d {
        return Err(shape_err(format!("model has {d} features, query has {}", x.cols())));
    }
    let mut out = Vec::with_capacity(x.rows() * stats.len());
    for row in x.row_iter() {
        for s in stats {
            let mut score = s.prior.ln();
            for ((&xi, &mu), &sigma) in row.iter().zip(s.mean.iter()).zip(s.std.iter()) {
                let var = sigma * sigma;
                score += -0.5 * (2.0 * PI * var).ln() - (xi - mu) * (xi - mu) / (2.0 * var);
            }
            out.push(score);
        }
    }
    Matrix::new(x.rows(), stats.len(), out)
}

/// Class with the highest posterior score; ties go to the earliest class in
/// `stats` (the smallest id when `stats` comes from [`nb_fit`]).
pub fn nb_predict(stats: &[ClassStatistics], x: &Matrix) -> Result<Vector> {
    if stats.is_empty() {
        return Err(Error::EmptyInput);
    }
    let scores = nb_log_scores(stats, x)?;
    Vector::new(scores.row_iter().map(|row| stats[argmax_first(row)].class).collect())
}

pub(crate) fn argmax_first(values: &[f64]) -> usize {
    let mut best = 0;
    for (i, &v) in values.iter().enumerate().skip(1) {
        if v > values[best] {
            best = i;
        }
    }
    best
}
