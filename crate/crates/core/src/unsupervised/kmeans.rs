use crate::error::{shape_err, Error, Result};
use crate::numeric::squared_distance;
use crate::numeric::{Matrix, Rng, Vector};

pub const DEFAULT_MAX_ITERATIONS: usize = 300;
pub const DEFAULT_TOLERANCE: f64 = 1e-6;

#[derive(Clone, Debug, PartialEq)]
pub struct KMeansModel {
    pub k: usize,
    pub centroids: Matrix,
    /// Sum of squared distances from each training row to its centroid.
    pub inertia: f64,
    pub iterations_run: usize,
    /// Inertia after every assignment step, ending with the final value.
    pub inertia_history: Vec<f64>,
}

/// Index of the nearest centroid (first on ties) and the squared distance.
fn nearest(centroids: &[f64], d: usize, point: &[f64]) -> (usize, f64) {
    let mut best = (0, f64::INFINITY);
    for (j, c) in centroids.chunks_exact(d.max(1)).enumerate() {
        let dist = squared_distance(c, point);
        if dist < best.1 {
            best = (j, dist);
        }
    }
    best
}

fn assign(x: &Matrix, centroids: &[f64], labels: &mut [usize], dist: &mut [f64]) -> f64 {
    let d = x.cols();
    let mut inertia = 0.0;
    for (i, row) in x.row_iter().enumerate() {
        let (j, dd) = nearest(centroids, d, row);
        labels[i] = j;
        dist[i] = dd;
        inertia += dd;
    }
    inertia
}

/// Lloyd iterations from `k` distinct randomly chosen rows.
///
/// Iteration stops when no centroid moves by more than `tol` (Euclidean) or
/// after `max_iterations` updates. A cluster left empty is re-seeded with
/// the row currently farthest from its own centroid.
pub fn kmeans_fit(x: &Matrix, k: usize, max_iterations: usize, tol: f64, rng: &mut Rng) -> Result<KMeansModel> {
    if k == 0 {
        return Err(Error::KZero);
    }
    if x.rows() < k {
        return Err(Error::KTooLarge { k, rows: x.rows() });
    }
    if max_iterations == 0 {
        return Err(Error::InvalidConfig("max_iterations must be at least 1".into()));
    }
    let (n, d) = x.shape();
    let mut centroids: Vec<f64> = rng
        .sample_indices(n, k)
        .into_iter()
        .flat_map(|i| x.row(i).to_vec())
        .collect();
    let mut labels = vec![0usize; n];
    let mut dist = vec![0.0; n];
    let mut history = Vec::new();
    let mut iterations_run = 0;

    for iter in 1..=max_iterations {
        history.push(assign(x, &centroids, &mut labels, &mut dist));

        let mut sums = vec![0.0; k * d];
        let mut counts = vec![0usize; k];
        for (row, &j) in x.row_iter().zip(&labels) {
            counts[j] += 1;
            for (s, v) in sums[j * d..(j + 1) * d].iter_mut().zip(row) {
                *s += v;
            }
        }
        let mut updated = sums;
        let mut taken = vec![false; n];
        for j in 0..k {
            let slot = &mut updated[j * d..(j + 1) * d];
            if counts[j] > 0 {
                slot.iter_mut().for_each(|s| *s /= counts[j] as f64);
            } else {
                let far = (0..n)
                    .filter(|&i| !taken[i])
                    .max_by(|&a, &b| dist[a].total_cmp(&dist[b]).then(b.cmp(&a)))
                    .unwrap_or(0);
                taken[far] = true;
                slot.copy_from_slice(x.row(far));
            }
        }

        let shift = (0..k)
            .map(|j| squared_distance(&centroids[j * d..(j + 1) * d], &updated[j * d..(j + 1) * d]).sqrt())
            .fold(0.0, f64::max);
        centroids = updated;
        iterations_run = iter;
        if shift <= tol {
            break;
        }
    }

    let inertia = assign(x, &centroids, &mut labels, &mut dist);
    history.push(inertia);
    Ok(KMeansModel {
        k,
        centroids: Matrix::new(k, d, centroids)?,
        inertia,
        iterations_run,
        inertia_history: history,
    })
}

/// Nearest-centroid index for each query row; ties go to the lower index.
pub fn kmeans_assign(model: &KMeansModel, x: &Matrix) -> Result<Vector> {
    if x.cols() != model.centroids.cols() {
        return Err(shape_err(format!(
            "centroids have {} features, query has {}",
            model.centroids.cols(),
            x.cols()
        )));
    }
    let d = x.cols();
    Vector::new(
        x.row_iter()
            .map(|r| nearest(model.centroids.as_slice(), d, r).0 as f64)
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn point_masses() -> Matrix {
        let rows: Vec<[f64; 2]> = std::iter::repeat_n([0.0, 0.0], 5).chain(std::iter::repeat_n([10.0, 10.0], 5)).collect();
        Matrix::from_rows(&rows).unwrap()
    }

    #[test]
    fn two_point_masses() {
        for seed in 0..10 {
            let m = kmeans_fit(&point_masses(), 2, 300, 1e-6, &mut Rng::new(seed)).unwrap();
            let mut c: Vec<Vec<f64>> = m.centroids.row_iter().map(<[f64]>::to_vec).collect();
            c.sort_by(|a, b| a[0].total_cmp(&b[0]));
            assert_eq!(c, vec![vec![0.0, 0.0], vec![10.0, 10.0]]);
            assert_eq!(m.inertia, 0.0);
        }
    }

    #[test]
    fn k_equals_rows() {
        let x = Matrix::from_rows(&[[1.0, 2.0], [3.0, -1.0], [0.5, 0.5], [9.0, 9.0]]).unwrap();
        let m = kmeans_fit(&x, 4, 300, 1e-6, &mut Rng::new(1)).unwrap();
        assert_eq!(m.inertia, 0.0);
    }

    #[test]
    fn errors() {
        let x = Matrix::zeros(3, 2);
        assert_eq!(kmeans_fit(&x, 0, 10, 1e-6, &mut Rng::new(0)).unwrap_err(), Error::KZero);
        assert_eq!(kmeans_fit(&x, 4, 10, 1e-6, &mut Rng::new(0)).unwrap_err(), Error::KTooLarge { k: 4, rows: 3 });
    }

    #[test]
    fn assign_examples() {
        let model = KMeansModel {
            k: 2,
            centroids: Matrix::from_rows(&[[0.0, 0.0], [2.0, 0.0]]).unwrap(),
            inertia: 0.0,
            iterations_run: 0,
            inertia_history: vec![],
        };
        let q = Matrix::from_rows(&[[2.0, 0.0], [0.0, 0.0], [1.0, 5.0]]).unwrap();
        assert_eq!(kmeans_assign(&model, &q).unwrap().as_slice(), &[1.0, 0.0, 0.0]);
        assert!(kmeans_assign(&model, &Matrix::zeros(1, 3)).is_err());
    }

    #[test]
    fn inertia_never_increases_and_deterministic() {
        let mut rng = Rng::new(17);
        let x = Matrix::from_fn(120, 3, |_, _| rng.standard_normal()).unwrap();
        let a = kmeans_fit(&x, 5, 300, 1e-9, &mut Rng::new(2)).unwrap();
        for w in a.inertia_history.windows(2) {
            assert!(w[1] <= w[0] + 1e-9);
        }
        assert!(a.iterations_run <= 300);
        assert_eq!(a, kmeans_fit(&x, 5, 300, 1e-9, &mut Rng::new(2)).unwrap());
    }
}
