use super::matrix::{Matrix, Vector};
use crate::error::{shape_err, Error, Result};

const MAX_SWEEPS: usize = 100;
const OFF_DIAGONAL_TOLERANCE: f64 = 1e-10;
const SYMMETRY_TOLERANCE: f64 = 1e-9;

/// Eigenpairs of a symmetric matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct Eigen {
    /// Eigenvalues, largest first.
    pub values: Vector,
    /// Column `i` is the unit eigenvector for `values[i]`.
    pub vectors: Matrix,
}

/// Cyclic Jacobi eigendecomposition of a symmetric matrix.
///
/// Sweeps stop once the off-diagonal Frobenius norm drops to
/// `1e-10 * ||S||_F`; more than 100 sweeps is reported as
/// [`Error::NoConvergence`]. Each eigenvector is signed so that its
/// largest-magnitude entry (the first one on ties) is positive.
pub fn symmetric_eigen(s: &Matrix) -> Result<Eigen> {
    let n = s.rows();
    if s.cols() != n {
        return Err(shape_err(format!("expected a square matrix, got {}x{}", n, s.cols())));
    }
    let asym = (0..n)
        .map(|i| (0..n).map(|j| (s.get(i, j) - s.get(j, i)).abs()).sum::<f64>())
        .fold(0.0, f64::max);
    if asym > SYMMETRY_TOLERANCE * s.norm_inf() {
        return Err(Error::NotSymmetric);
    }

    let mut a = vec![0.0; n * n];
    for i in 0..n {
        for j in 0..n {
            a[i * n + j] = 0.5 * (s.get(i, j) + s.get(j, i));
        }
    }
    let mut v = Matrix::identity(n).into_vec();
    let target = OFF_DIAGONAL_TOLERANCE * s.norm_frobenius();

    let mut converged = false;
    for _ in 0..=MAX_SWEEPS {
        if off_diagonal_norm(&a, n) <= target {
            converged = true;
            break;
        }
        sweep(&mut a, &mut v, n);
    }
    if !converged {
        return Err(Error::NoConvergence { sweeps: MAX_SWEEPS });
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[j * n + j].total_cmp(&a[i * n + i]));

    let values: Vec<f64> = order.iter().map(|&i| a[i * n + i]).collect();
    let mut vectors = vec![0.0; n * n];
    for (col, &src) in order.iter().enumerate() {
        let mut column: Vec<f64> = (0..n).map(|k| v[k * n + src]).collect();
        orient(&mut column);
        for (k, value) in column.into_iter().enumerate() {
            vectors[k * n + col] = value;
        }
    }

    Ok(Eigen {
        values: Vector::new(values).map_err(|_| Error::NoConvergence { sweeps: MAX_SWEEPS })?,
        vectors: Matrix::new(n, n, vectors).map_err(|_| Error::NoConvergence { sweeps: MAX_SWEEPS })?,
    })
}

fn off_diagonal_norm(a: &[f64], n: usize) -> f64 {
    let mut sum = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                sum += a[i * n + j] * a[i * n + j];
            }
        }
    }
    sum.sqrt()
}

fn sweep(a: &mut [f64], v: &mut [f64], n: usize) {
    for p in 0..n {
        for q in p + 1..n {
            let apq = a[p * n + q];
            if apq == 0.0 {
                continue;
            }
            let theta = (a[q * n + q] - a[p * n + p]) / (2.0 * apq);
            let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
            let c = 1.0 / (t * t + 1.0).sqrt();
            let s = t * c;

            for k in 0..n {
                let akp = a[k * n + p];
                let akq = a[k * n + q];
                a[k * n + p] = c * akp - s * akq;
                a[k * n + q] = s * akp + c * akq;
            }
            for k in 0..n {
                let apk = a[p * n + k];
                let aqk = a[q * n + k];
                a[p * n + k] = c * apk - s * aqk;
                a[q * n + k] = s * apk + c * aqk;
            }
            a[p * n + q] = 0.0;
            a[q * n + p] = 0.0;

            for k in 0..n {
                let vkp = v[k * n + p];
                let vkq = v[k * n + q];
                v[k * n + p] = c * vkp - s * vkq;
                v[k * n + q] = s * vkp + c * vkq;
            }
        }
    }
}

/// Flips `column` so its largest-magnitude entry is positive. Entries within
/// a relative 1e-12 of the maximum count as tied; the first of them decides.
fn orient(column: &mut [f64]) {
    let max = column.iter().map(|x| x.abs()).fold(0.0, f64::max);
    if max == 0.0 {
        return;
    }
    let lead = column
        .iter()
        .find(|x| x.abs() >= max * (1.0 - 1e-12))
        .copied()
        .unwrap_or(0.0);
    if lead < 0.0 {
        column.iter_mut().for_each(|x| *x = -*x);
    }
}
