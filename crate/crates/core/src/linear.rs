//! Closed-form least-squares regression.

use crate::error::{shape_err, Error, Result};
use crate::numeric::{solve_linear_system, Matrix, Vector};
use crate::preprocessing::polynomial_features;

/// `y = slope * x + intercept`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SimpleLinearModel {
    pub slope: f64,
    pub intercept: f64,
}

impl SimpleLinearModel {
    pub fn predict_one(&self, x: f64) -> f64 {
        self.slope * x + self.intercept
    }

    pub fn predict(&self, x: &[f64]) -> Vector {
        Vector::from_vec_unchecked(x.iter().map(|&v| self.predict_one(v)).collect())
    }
}

/// Single-feature least squares from running sums.
///
/// The slope is `(k Σxy - Σx Σy) / (k Σx² - (Σx)²)` and the intercept
/// `(Σy - slope Σx) / k`, which zeroes the derivative of the squared error
/// with respect to the intercept.
pub fn fit_simple(x: &Vector, y: &Vector) -> Result<SimpleLinearModel> {
    if x.len() != y.len() {
        return Err(shape_err(format!("x has {} values, y has {}", x.len(), y.len())));
    }
    if x.len() < 2 {
        return Err(Error::TooFewRows { needed: 2, got: x.len() });
    }
    let k = x.len() as f64;
    let (mut sx, mut sy, mut sxy, mut sxx) = (0.0, 0.0, 0.0, 0.0);
    for (&xi, &yi) in x.iter().zip(y.iter()) {
        sx += xi;
        sy += yi;
        sxy += xi * yi;
        sxx += xi * xi;
    }
    let denom = k * sxx - sx * sx;
    if denom <= 1e-12 * k * sxx {
        return Err(Error::DegenerateX);
    }
    let slope = (k * sxy - sy * sx) / denom;
    let intercept = (sy - slope * sx) / k;
    Ok(SimpleLinearModel { slope, intercept })
}

/// Multiple linear regression coefficients, intercept first.
#[derive(Clone, Debug, PartialEq)]
pub struct FittedLinearModel {
    pub coefficients: Vector,
    pub feature_count: usize,
}

impl FittedLinearModel {
    pub fn intercept(&self) -> f64 {
        self.coefficients[0]
    }

    pub fn weights(&self) -> &[f64] {
        &self.coefficients[1..]
    }

    pub fn predict(&self, x: &Matrix) -> Result<Vector> {
        predict_linear(self, x)
    }
}

/// Solves the normal equations `(XᵀX) β = Xᵀy` for `X` with a leading
/// column of ones.
///
/// The Gram matrix is accumulated directly from the rows of `x`, so the
/// augmented design matrix is never materialized.
pub fn fit_multiple(x: &Matrix, y: &Vector) -> Result<FittedLinearModel> {
    let (rows, p) = x.shape();
    if rows != y.len() {
        return Err(shape_err(format!("X has {rows} rows but y has {} values", y.len())));
    }
    if rows < p + 1 {
        return Err(Error::TooFewRows { needed: p + 1, got: rows });
    }
    let dim = p + 1;
    let mut gram = vec![0.0; dim * dim];
    let mut rhs = vec![0.0; dim];
    let mut aug = vec![1.0; dim];
    for (row, &yi) in x.row_iter().zip(y.iter()) {
        aug[1..].copy_from_slice(row);
        for i in 0..dim {
            let ai = aug[i];
            rhs[i] += ai * yi;
            let g = &mut gram[i * dim..(i + 1) * dim];
            for j in i..dim {
                g[j] += ai * aug[j];
            }
        }
    }
    for i in 0..dim {
        for j in 0..i {
            gram[i * dim + j] = gram[j * dim + i];
        }
    }
    let gram = Matrix::new(dim, dim, gram)?;
    let coefficients = solve_linear_system(&gram, &rhs)?;
    Ok(FittedLinearModel { coefficients, feature_count: p })
}

pub fn predict_linear(model: &FittedLinearModel, x: &Matrix) -> Result<Vector> {
    if x.cols() != model.feature_count {
        return Err(shape_err(format!(
            "model has {} features, X has {} columns",
            model.feature_count,
            x.cols()
        )));
    }
    let w = model.weights();
    let b = model.intercept();
    Vector::new(
        x.row_iter()
            .map(|r| b + r.iter().zip(w).map(|(a, c)| a * c).sum::<f64>())
            .collect(),
    )
}

/// Polynomial feature expansion followed by multiple linear regression.
#[derive(Clone, Debug, PartialEq)]
pub struct PolynomialModel {
    pub degree: usize,
    pub inner: FittedLinearModel,
}

impl PolynomialModel {
    pub fn predict(&self, x: &Matrix) -> Result<Vector> {
        let expanded = polynomial_features(x, self.degree, false)?;
        predict_linear(&self.inner, &expanded)
    }
}

pub fn fit_polynomial(x: &Matrix, y: &Vector, degree: usize) -> Result<PolynomialModel> {
    let expanded = polynomial_features(x, degree, false)?;
    let inner = fit_multiple(&expanded, y)?;
    Ok(PolynomialModel { degree, inner })
}
