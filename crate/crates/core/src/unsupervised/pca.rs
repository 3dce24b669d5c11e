use crate::error::{shape_err, Error, Result};
use crate::numeric::{symmetric_eigen, Matrix, Vector};

#[derive(Clone, Debug, PartialEq)]
pub struct PcaModel {
    pub mean: Vector,
    /// Covariance eigenvalues, descending, with round-off negatives clamped
    /// to zero.
    pub eigenvalues: Vector,
    /// Orthonormal eigenvectors as columns, matching `eigenvalues`.
    pub components: Matrix,
    pub n_components_kept: usize,
}

impl PcaModel {
    /// Keeps the fewest leading components whose explained variance reaches
    /// `target`.
    pub fn keep_variance(mut self, target: f64) -> Result<Self> {
        self.n_components_kept = components_for_variance(&self, target)?;
        Ok(self)
    }

    pub fn feature_count(&self) -> usize {
        self.mean.len()
    }

    /// Maps projected rows back to the original feature space.
    pub fn inverse_transform(&self, z: &Matrix) -> Result<Matrix> {
        let k = z.cols();
        if k > self.feature_count() {
            return Err(Error::TooManyComponents { requested: k, available: self.feature_count() });
        }
        let d = self.feature_count();
        let mut out = Vec::with_capacity(z.rows() * d);
        for row in z.row_iter() {
            for f in 0..d {
                let v: f64 = (0..k).map(|c| row[c] * self.components.get(f, c)).sum();
                out.push(v + self.mean[f]);
            }
        }
        Matrix::new(z.rows(), d, out)
    }
}

/// Centres the columns, forms the `n-1` covariance matrix and
/// eigendecomposes it. All components are kept initially.
pub fn pca_fit(x: &Matrix) -> Result<PcaModel> {
    let (n, d) = x.shape();
    if n < 2 {
        return Err(Error::TooFewRows { needed: 2, got: n });
    }
    let mut mean = vec![0.0; d];
    for row in x.row_iter() {
        for (m, v) in mean.iter_mut().zip(row) {
            *m += v;
        }
    }
    mean.iter_mut().for_each(|m| *m /= n as f64);

    let mut cov = vec![0.0; d * d];
    let mut centred = vec![0.0; d];
    for row in x.row_iter() {
        for ((c, v), m) in centred.iter_mut().zip(row).zip(&mean) {
            *c = v - m;
        }
        for i in 0..d {
            let ci = centred[i];
            for j in i..d {
                cov[i * d + j] += ci * centred[j];
            }
        }
    }
    let denom = (n - 1) as f64;
    for i in 0..d {
        for j in i..d {
            let v = cov[i * d + j] / denom;
            cov[i * d + j] = v;
            cov[j * d + i] = v;
        }
    }
    let eig = symmetric_eigen(&Matrix::new(d, d, cov)?)?;
    let eigenvalues = eig.values.iter().map(|&v| v.max(0.0)).collect();
    Ok(PcaModel {
        mean: Vector::new(mean)?,
        eigenvalues: Vector::new(eigenvalues)?,
        components: eig.vectors,
        n_components_kept: d,
    })
}

/// Projects the centred rows onto the leading `n_components` components.
pub fn pca_transform(model: &PcaModel, x: &Matrix, n_components: usize) -> Result<Matrix> {
    let d = model.feature_count();
    if n_components > d {
        return Err(Error::TooManyComponents { requested: n_components, available: d });
    }
    if x.cols() != d {
        return Err(shape_err(format!("model has {d} features, X has {} columns", x.cols())));
    }
    let mut out = Vec::with_capacity(x.rows() * n_components);
    let mut centred = vec![0.0; d];
    for row in x.row_iter() {
        for ((c, v), m) in centred.iter_mut().zip(row).zip(model.mean.iter()) {
            *c = v - m;
        }
        for c in 0..n_components {
            out.push((0..d).map(|f| centred[f] * model.components.get(f, c)).sum());
        }
    }
    Matrix::new(x.rows(), n_components, out)
}

fn cumulative(model: &PcaModel) -> Result<(Vec<f64>, f64)> {
    let mut running = 0.0;
    let cum: Vec<f64> = model
        .eigenvalues
        .iter()
        .map(|&l| {
            running += l;
            running
        })
        .collect();
    // same summation order as the cumulative sums, so the last ratio is exactly 1
    let total = running;
    if total == 0.0 {
        return Err(Error::AllZeroVariance);
    }
    Ok((cum, total))
}

/// Share of total variance held by the leading `j` components.
pub fn explained_variance_ratio(model: &PcaModel, j: usize) -> Result<f64> {
    let d = model.eigenvalues.len();
    if j == 0 || j > d {
        return Err(Error::TooManyComponents { requested: j, available: d });
    }
    let (cum, total) = cumulative(model)?;
    Ok(cum[j - 1] / total)
}

/// Smallest `j` whose explained variance ratio is at least `target`.
pub fn components_for_variance(model: &PcaModel, target: f64) -> Result<usize> {
    if !(target > 0.0 && target <= 1.0) {
        return Err(Error::InvalidConfig(format!("variance target {target} must be in (0, 1]")));
    }
    let (cum, total) = cumulative(model)?;
    Ok(cum.iter().position(|&c| c / total >= target).map_or(cum.len(), |i| i + 1))
}
