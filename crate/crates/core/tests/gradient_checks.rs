//! Analytical batch gradients against central finite differences.

use leanml::gradient::{logistic_gradient, logistic_loss, svm_gradient, svm_objective};
use leanml::{logistic_fit, standard_fit_transform, Matrix, OptimizerConfig, Rng, Vector};

const STEP: f64 = 1e-6;
const TOLERANCE: f64 = 1e-5;

/// Central differences of `f` over the packed parameters `[w..., b]`.
fn numerical_gradient(theta: &[f64], f: impl Fn(&[f64]) -> f64) -> Vec<f64> {
    (0..theta.len())
        .map(|i| {
            let mut plus = theta.to_vec();
            let mut minus = theta.to_vec();
            plus[i] += STEP;
            minus[i] -= STEP;
            (f(&plus) - f(&minus)) / (2.0 * STEP)
        })
        .collect()
}

fn dataset(rng: &mut Rng, n: usize, d: usize) -> Matrix {
    Matrix::from_fn(n, d, |_, _| rng.standard_normal()).unwrap()
}

#[test]
fn logistic_gradient_matches_finite_differences() {
    let mut rng = Rng::new(2024);
    let x = dataset(&mut rng, 30, 4);
    let y = Vector::new((0..30).map(|_| if rng.uniform() < 0.5 { 0.0 } else { 1.0 }).collect()).unwrap();
    for _ in 0..10 {
        let theta: Vec<f64> = (0..5).map(|_| rng.uniform_range(-2.0, 2.0)).collect();
        let (gw, gb) = logistic_gradient(&x, &y, &theta[..4], theta[4]).unwrap();
        let numeric = numerical_gradient(&theta, |t| logistic_loss(&x, &y, &t[..4], t[4]).unwrap());
        for (a, n) in gw.iter().chain(std::iter::once(&gb)).zip(&numeric) {
            assert!((a - n).abs() <= TOLERANCE, "analytic {a} vs numeric {n}");
        }
    }
}

#[test]
fn svm_gradient_matches_finite_differences_away_from_kinks() {
    let mut rng = Rng::new(77);
    let x = dataset(&mut rng, 30, 3);
    let y = Vector::new((0..30).map(|_| if rng.uniform() < 0.5 { -1.0 } else { 1.0 }).collect()).unwrap();
    let lambda = 0.05;
    let mut checked = 0;
    while checked < 10 {
        let theta: Vec<f64> = (0..4).map(|_| rng.uniform_range(-1.5, 1.5)).collect();
        let near_kink = x.row_iter().zip(y.iter()).any(|(r, &yi)| {
            let m = yi * (r.iter().zip(&theta[..3]).map(|(a, b)| a * b).sum::<f64>() + theta[3]);
            // keep a margin well beyond the finite-difference step
            (m - 1.0).abs() < 1e-6f64.max(10.0 * STEP * 10.0)
        });
        if near_kink {
            continue;
        }
        let (gw, gb) = svm_gradient(&x, &y, &theta[..3], theta[3], lambda).unwrap();
        let numeric = numerical_gradient(&theta, |t| svm_objective(&x, &y, &t[..3], t[3], lambda).unwrap());
        for (a, n) in gw.iter().chain(std::iter::once(&gb)).zip(&numeric) {
            assert!((a - n).abs() <= TOLERANCE, "analytic {a} vs numeric {n}");
        }
        checked += 1;
    }
}

#[test]
fn full_batch_logistic_loss_is_non_increasing() {
    let mut rng = Rng::new(31);
    let raw = Matrix::from_fn(200, 3, |_, j| rng.standard_normal() * 3.0 + j as f64).unwrap();
    let (_, x) = standard_fit_transform(&raw).unwrap();
    let y = Vector::new(
        x.row_iter()
            .map(|r| if r[0] - r[1] + 0.8 * rng.standard_normal() > 0.0 { 1.0 } else { 0.0 })
            .collect(),
    )
    .unwrap();
    for lr in [0.01, 0.05, 0.1] {
        let cfg = OptimizerConfig { learning_rate: lr, max_epochs: 300, ..Default::default() };
        let state = logistic_fit(&x, &y, &cfg, &mut Rng::new(4)).unwrap();
        for (epoch, w) in state.loss_history.windows(2).enumerate() {
            assert!(w[1] <= w[0] + 1e-9, "lr {lr}: loss rose at epoch {epoch}: {} -> {}", w[0], w[1]);
        }
    }
}

#[test]
fn same_seed_gives_bit_identical_weights() {
    let mut rng = Rng::new(8);
    let x = dataset(&mut rng, 60, 5);
    let y = Vector::new(x.row_iter().map(|r| if r[2] > 0.0 { 1.0 } else { 0.0 }).collect()).unwrap();
    let cfg = OptimizerConfig { max_epochs: 50, ..Default::default() };
    let a = logistic_fit(&x, &y, &cfg, &mut Rng::new(100)).unwrap();
    let b = logistic_fit(&x, &y, &cfg, &mut Rng::new(100)).unwrap();
    assert_eq!(a.weights.as_slice(), b.weights.as_slice());
    assert_eq!(a.bias.to_bits(), b.bias.to_bits());
}
