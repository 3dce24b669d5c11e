//! Scaling, train/validation splitting and polynomial feature expansion.

use crate::error::{shape_err, Error, Result};
use crate::numeric::{shuffled_indices, Matrix, Rng, Vector};

/// Per-column extremes captured by [`min_max_fit_transform`].
#[derive(Clone, Debug, PartialEq)]
pub struct MinMaxScalerState {
    pub min: Vector,
    pub max: Vector,
}

impl MinMaxScalerState {
    pub fn fit(x: &Matrix) -> Result<Self> {
        if x.is_empty() {
            return Err(Error::EmptyInput);
        }
        let mut min = x.row(0).to_vec();
        let mut max = min.clone();
        for row in x.row_iter().skip(1) {
            for (j, &v) in row.iter().enumerate() {
                min[j] = min[j].min(v);
                max[j] = max[j].max(v);
            }
        }
        Ok(Self { min: Vector::from_vec_unchecked(min), max: Vector::from_vec_unchecked(max) })
    }

    /// Maps each column onto `[0, 1]` using the fitted extremes. Constant
    /// columns map to zero.
    pub fn transform(&self, x: &Matrix) -> Result<Matrix> {
        self.check_width(x)?;
        let mut out = x.as_slice().to_vec();
        let cols = x.cols();
        for (idx, v) in out.iter_mut().enumerate() {
            let j = idx % cols;
            let range = self.max[j] - self.min[j];
            *v = if range > 0.0 { (*v - self.min[j]) / range } else { 0.0 };
        }
        Matrix::new(x.rows(), cols, out)
    }

    pub fn inverse_transform(&self, x: &Matrix) -> Result<Matrix> {
        self.check_width(x)?;
        let cols = x.cols();
        let out = x
            .as_slice()
            .iter()
            .enumerate()
            .map(|(idx, v)| {
                let j = idx % cols;
                self.min[j] + v * (self.max[j] - self.min[j])
            })
            .collect();
        Matrix::new(x.rows(), cols, out)
    }

    fn check_width(&self, x: &Matrix) -> Result<()> {
        if x.cols() != self.min.len() {
            return Err(shape_err(format!(
                "scaler fitted on {} columns, got {}",
                self.min.len(),
                x.cols()
            )));
        }
        Ok(())
    }
}

pub fn min_max_fit_transform(x: &Matrix) -> Result<(MinMaxScalerState, Matrix)> {
    let state = MinMaxScalerState::fit(x)?;
    let out = state.transform(x)?;
    Ok((state, out))
}

/// Per-column mean and population standard deviation.
#[derive(Clone, Debug, PartialEq)]
pub struct StandardScalerState {
    pub mean: Vector,
    pub std: Vector,
}

impl StandardScalerState {
    pub fn fit(x: &Matrix) -> Result<Self> {
        if x.is_empty() {
            return Err(Error::EmptyInput);
        }
        if x.rows() < 2 {
            return Err(Error::TooFewRows { needed: 2, got: x.rows() });
        }
        let n = x.rows() as f64;
        let cols = x.cols();
        let mut mean = vec![0.0; cols];
        for row in x.row_iter() {
            for (m, v) in mean.iter_mut().zip(row) {
                *m += v;
            }
        }
        mean.iter_mut().for_each(|m| *m /= n);
        let mut var = vec![0.0; cols];
        for row in x.row_iter() {
            for ((s, v), m) in var.iter_mut().zip(row).zip(&mean) {
                *s += (v - m) * (v - m);
            }
        }
        let std = var.into_iter().map(|s| (s / n).sqrt()).collect();
        Ok(Self { mean: Vector::from_vec_unchecked(mean), std: Vector::from_vec_unchecked(std) })
    }

    /// `(x - mean) / std`, with zero-variance columns mapped to zero.
    pub fn transform(&self, x: &Matrix) -> Result<Matrix> {
        if x.cols() != self.mean.len() {
            return Err(shape_err(format!(
                "scaler fitted on {} columns, got {}",
                self.mean.len(),
                x.cols()
            )));
        }
        let cols = x.cols();
        let out = x
            .as_slice()
            .iter()
            .enumerate()
            .map(|(idx, v)| {
                let j = idx % cols;
                if self.std[j] > 0.0 {
                    (v - self.mean[j]) / self.std[j]
                } else {
                    0.0
                }
            })
            .collect();
        Matrix::new(x.rows(), cols, out)
    }
}

pub fn standard_fit_transform(x: &Matrix) -> Result<(StandardScalerState, Matrix)> {
    let state = StandardScalerState::fit(x)?;
    let out = state.transform(x)?;
    Ok((state, out))
}

#[derive(Clone, Debug, PartialEq)]
pub struct SplitResult {
    pub x_train: Matrix,
    pub x_val: Matrix,
    pub y_train: Vector,
    pub y_val: Vector,
    pub val_ratio: f64,
    /// Source row of each training row.
    pub train_indices: Vec<usize>,
    /// Source row of each validation row.
    pub val_indices: Vec<usize>,
}

/// Shuffles rows and holds out `round(val_ratio * n)` of them (kept within
/// `1..=n-1`) for validation.
pub fn train_val_split(x: &Matrix, y: &Vector, val_ratio: f64, rng: &mut Rng) -> Result<SplitResult> {
    if !(val_ratio > 0.0 && val_ratio < 1.0) {
        return Err(Error::RatioOutOfRange(val_ratio));
    }
    let n = x.rows();
    if y.len() != n {
        return Err(shape_err(format!("X has {n} rows but y has {} values", y.len())));
    }
    if n < 2 {
        return Err(Error::TooFewRows { needed: 2, got: n });
    }
    let n_val = ((val_ratio * n as f64).round() as usize).clamp(1, n - 1);
    let order = shuffled_indices(n, rng);
    let (train_indices, val_indices) = order.split_at(n - n_val);
    let pick = |idx: &[usize]| Vector::from_vec_unchecked(idx.iter().map(|&i| y[i]).collect());
    Ok(SplitResult {
        x_train: x.select_rows(train_indices),
        x_val: x.select_rows(val_indices),
        y_train: pick(train_indices),
        y_val: pick(val_indices),
        val_ratio,
        train_indices: train_indices.to_vec(),
        val_indices: val_indices.to_vec(),
    })
}

/// Exponent-index lists for every monomial of total degree `1..=degree` in
/// `p` variables, in graded lexicographic order. Each entry lists the
/// (non-decreasing) feature indices multiplied together.
pub fn monomial_terms(p: usize, degree: usize) -> Vec<Vec<usize>> {
    let mut terms = Vec::new();
    for d in 1..=degree {
        let mut current = Vec::with_capacity(d);
        push_combinations(p, d, 0, &mut current, &mut terms);
    }
    terms
}

fn push_combinations(p: usize, remaining: usize, start: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if remaining == 0 {
        out.push(current.clone());
        return;
    }
    for j in start..p {
        current.push(j);
        push_combinations(p, remaining - 1, j, current, out);
        current.pop();
    }
}

/// Expands `x` into all monomials up to `degree`, cross terms included.
///
/// For `p` input columns the output has `C(p + degree, degree) - 1` columns,
/// plus a leading column of ones when `include_bias` is set.
pub fn polynomial_features(x: &Matrix, degree: usize, include_bias: bool) -> Result<Matrix> {
    if degree == 0 {
        return Err(Error::DegreeZero);
    }
    let terms = monomial_terms(x.cols(), degree);
    let width = terms.len() + usize::from(include_bias);
    let mut data = Vec::with_capacity(x.rows() * width);
    for row in x.row_iter() {
        if include_bias {
            data.push(1.0);
        }
        data.extend(terms.iter().map(|t| t.iter().map(|&j| row[j]).product::<f64>()));
    }
    // products of large inputs can overflow, so keep the finiteness check
    Matrix::new(x.rows(), width, data)
}
