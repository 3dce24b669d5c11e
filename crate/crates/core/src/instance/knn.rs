use std::cmp::Ordering;

use crate::error::{shape_err, Error, Result};
use crate::numeric::{Matrix, Vector};

/// Stored training set for K-nearest-neighbour voting.
#[derive(Clone, Debug, PartialEq)]
pub struct KnnModel {
    x: Matrix,
    labels: Vector,
    k: usize,
}

impl KnnModel {
    pub fn fit(x: Matrix, labels: Vector, k: usize) -> Result<Self> {
        if x.rows() != labels.len() {
            return Err(shape_err(format!("X has {} rows but {} labels", x.rows(), labels.len())));
        }
        if k == 0 || k > x.rows() {
            return Err(Error::KOutOfRange { k, n: x.rows() });
        }
        Ok(Self { x, labels, k })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn stored(&self) -> (&Matrix, &Vector) {
        (&self.x, &self.labels)
    }

    /// Indices and Euclidean distances of the `k` nearest stored rows,
    /// nearest first. Equal distances are ordered by stored index.
    pub fn neighbours(&self, query: &[f64]) -> Vec<(usize, f64)> {
        let mut dist: Vec<(usize, f64)> = self
            .x
            .row_iter()
            .enumerate()
            .map(|(i, row)| {
                let d2: f64 = row.iter().zip(query).map(|(a, b)| (a - b) * (a - b)).sum();
                (i, d2.sqrt())
            })
            .collect();
        let by_distance = |a: &(usize, f64), b: &(usize, f64)| a.1.total_cmp(&b.1).then(a.0.cmp(&b.0));
        if self.k < dist.len() {
            dist.select_nth_unstable_by(self.k - 1, by_distance);
            dist.truncate(self.k);
        }
        dist.sort_unstable_by(by_distance);
        dist
    }
}

/// Majority vote among the `k` nearest stored rows.
///
/// A tied vote goes to the class whose voters have the smallest summed
/// distance, then to the smallest class id.
pub fn knn_predict(model: &KnnModel, query: &Matrix) -> Result<Vector> {
    if query.cols() != model.x.cols() {
        return Err(shape_err(format!(
            "model stores {} features, query has {}",
            model.x.cols(),
            query.cols()
        )));
    }
    let mut out = Vec::with_capacity(query.rows());
    // (class, votes, summed distance)
    let mut tally: Vec<(f64, usize, f64)> = Vec::new();
    for q in query.row_iter() {
        tally.clear();
        for (i, d) in model.neighbours(q) {
            let class = model.labels[i];
            match tally.iter_mut().find(|t| t.0 == class) {
                Some(t) => {
                    t.1 += 1;
                    t.2 += d;
                }
                None => tally.push((class, 1, d)),
            }
        }
        let best = tally
            .iter()
            .min_by(|a, b| match b.1.cmp(&a.1) {
                Ordering::Equal => a.2.total_cmp(&b.2).then(a.0.total_cmp(&b.0)),
                other => other,
            })
            .map(|t| t.0)
            .unwrap_or_default();
        out.push(best);
    }
    Vector::new(out)
}
