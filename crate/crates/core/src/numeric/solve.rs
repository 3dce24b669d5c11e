use super::matrix::{Matrix, Vector};
use crate::error::{shape_err, Error, Result};

/// Relative pivot threshold below which a system is declared singular.
const PIVOT_TOLERANCE: f64 = 1e-12;

/// Solves `A x = b` by LU factorization with partial pivoting.
///
/// A pivot smaller than `1e-12` times the largest Euclidean row norm of `A`
/// yields [`Error::SingularMatrix`]. No inverse is ever formed.
pub fn solve_linear_system(a: &Matrix, b: &[f64]) -> Result<Vector> {
    let n = a.rows();
    if a.cols() != n {
        return Err(shape_err(format!("expected a square matrix, got {}x{}", n, a.cols())));
    }
    if b.len() != n {
        return Err(shape_err(format!("rhs has length {}, expected {n}", b.len())));
    }
    if n == 0 {
        return Ok(Vector::zeros(0));
    }

    let scale = a
        .row_iter()
        .map(|r| r.iter().map(|v| v * v).sum::<f64>().sqrt())
        .fold(0.0, f64::max);
    if scale == 0.0 {
        return Err(Error::SingularMatrix);
    }
    let threshold = PIVOT_TOLERANCE * scale;

    let mut lu = a.as_slice().to_vec();
    let mut x = b.to_vec();

    for k in 0..n {
        let (pivot_row, pivot_abs) = (k..n)
            .map(|i| (i, lu[i * n + k].abs()))
            .fold((k, -1.0), |best, cur| if cur.1 > best.1 { cur } else { best });
        if pivot_abs < threshold {
            return Err(Error::SingularMatrix);
        }
        if pivot_row != k {
            for j in 0..n {
                lu.swap(k * n + j, pivot_row * n + j);
            }
            x.swap(k, pivot_row);
        }
        let pivot = lu[k * n + k];
        for i in k + 1..n {
            let factor = lu[i * n + k] / pivot;
            if factor == 0.0 {
                continue;
            }
            lu[i * n + k] = factor;
            for j in k + 1..n {
                lu[i * n + j] -= factor * lu[k * n + j];
            }
            x[i] -= factor * x[k];
        }
    }

    for k in (0..n).rev() {
        let tail: f64 = (k + 1..n).map(|j| lu[k * n + j] * x[j]).sum();
        x[k] = (x[k] - tail) / lu[k * n + k];
    }
    Vector::new(x).map_err(|_| Error::SingularMatrix)
}
