//! Linear classifiers trained by batch gradient descent with momentum.
//!
//! Both models keep an exponentially weighted gradient buffer
//! `v ← βv + (1-β)g` and step the parameters by `θ ← θ - αv`. Logistic
//! regression minimizes mean binary cross-entropy on `{0, 1}` labels. The
//! SVM minimizes `½λ‖w‖² + mean(max(0, 1 - y(w·x + b)))` on `{-1, +1}` labels
//! and stops as soon as an epoch ends with the training accuracy at or above
//! [`SvmConfig::early_stop_accuracy`].

use crate::error::{shape_err, Error, Result};
use crate::numeric::{Matrix, Rng, Vector};

/// Smallest and largest values [`sigmoid`] returns, keeping probabilities
/// strictly inside (0, 1).
const PROBA_FLOOR: f64 = f64::MIN_POSITIVE;
const PROBA_CEIL: f64 = 1.0 - f64::EPSILON / 2.0;

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum BatchSize {
    Full,
    Size(usize),
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum UpdateRule {
    /// First-moment buffer only.
    Momentum,
    /// Bias-corrected Adam; `OptimizerConfig::momentum` acts as β₁.
    Adam { beta2: f64, epsilon: f64 },
}

impl UpdateRule {
    pub fn adam() -> Self {
        UpdateRule::Adam { beta2: 0.999, epsilon: 1e-8 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OptimizerConfig {
    pub learning_rate: f64,
    pub momentum: f64,
    pub max_epochs: usize,
    pub batch_size: BatchSize,
    pub update_rule: UpdateRule,
}

impl Default for OptimizerConfig {
    fn default() -> Self {
        Self {
            learning_rate: 0.01,
            momentum: 0.9,
            max_epochs: 1000,
            batch_size: BatchSize::Full,
            update_rule: UpdateRule::Momentum,
        }
    }
}

impl OptimizerConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.learning_rate > 0.0 && self.learning_rate.is_finite()) {
            return Err(Error::InvalidConfig(format!("learning rate {} must be > 0", self.learning_rate)));
        }
        if !(0.0..1.0).contains(&self.momentum) {
            return Err(Error::InvalidConfig(format!("momentum {} must be in [0, 1)", self.momentum)));
        }
        if self.max_epochs == 0 {
            return Err(Error::InvalidConfig("max_epochs must be at least 1".into()));
        }
        if self.batch_size == BatchSize::Size(0) {
            return Err(Error::InvalidConfig("batch size must be at least 1".into()));
        }
        if let UpdateRule::Adam { beta2, epsilon } = self.update_rule {
            if !(0.0..1.0).contains(&beta2) || epsilon <= 0.0 {
                return Err(Error::InvalidConfig("adam needs beta2 in [0, 1) and epsilon > 0".into()));
            }
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SvmConfig {
    pub lambda: f64,
    pub early_stop_accuracy: f64,
    pub optimizer: OptimizerConfig,
}

impl Default for SvmConfig {
    fn default() -> Self {
        Self { lambda: 0.01, early_stop_accuracy: 0.95, optimizer: OptimizerConfig::default() }
    }
}

impl SvmConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.lambda > 0.0 && self.lambda.is_finite()) {
            return Err(Error::InvalidConfig(format!("lambda {} must be > 0", self.lambda)));
        }
        if !(self.early_stop_accuracy > 0.0 && self.early_stop_accuracy <= 1.0) {
            return Err(Error::InvalidConfig(format!(
                "early stop accuracy {} must be in (0, 1]",
                self.early_stop_accuracy
            )));
        }
        self.optimizer.validate()
    }
}

/// Parameters and optimizer buffers of a trained linear classifier.
#[derive(Clone, Debug, PartialEq)]
pub struct GradientModelState {
    pub weights: Vector,
    pub bias: f64,
    /// First-moment buffer for each weight.
    pub velocity: Vector,
    pub bias_velocity: f64,
    pub epochs_run: usize,
    /// Mean training objective seen during each epoch.
    pub loss_history: Vec<f64>,
    /// Training accuracy after each epoch (SVM only).
    pub accuracy_history: Vec<f64>,
}

impl GradientModelState {
    pub fn decision_function(&self, x: &Matrix) -> Result<Vector> {
        if x.cols() != self.weights.len() {
            return Err(shape_err(format!(
                "model has {} weights, X has {} columns",
                self.weights.len(),
                x.cols()
            )));
        }
        Vector::new(x.row_iter().map(|r| self.weights.dot(r) + self.bias).collect())
    }
}

/// Numerically stable logistic function, clamped to stay strictly within
/// (0, 1).
pub fn sigmoid(z: f64) -> f64 {
    let p = if z >= 0.0 {
        1.0 / (1.0 + (-z).exp())
    } else {
        let e = z.exp();
        e / (1.0 + e)
    };
    p.clamp(PROBA_FLOOR, PROBA_CEIL)
}

/// `ln(1 + e^z)` without overflow.
fn softplus(z: f64) -> f64 {
    z.max(0.0) + (-z.abs()).exp().ln_1p()
}

/// One momentum update: `v' = βv + (1-β)g`, then `θ' = θ - αv'`.
pub fn momentum_step(
    velocity: &[f64],
    grad: &[f64],
    theta: &[f64],
    learning_rate: f64,
    momentum: f64,
) -> Result<(Vector, Vector)> {
    if velocity.len() != grad.len() || theta.len() != grad.len() {
        return Err(shape_err(format!(
            "velocity {}, gradient {} and parameters {} must have equal length",
            velocity.len(),
            grad.len(),
            theta.len()
        )));
    }
    let mut v = velocity.to_vec();
    let mut t = theta.to_vec();
    momentum_update(&mut v, &mut t, grad, learning_rate, momentum);
    Ok((Vector::new(v)?, Vector::new(t)?))
}

fn momentum_update(v: &mut [f64], theta: &mut [f64], grad: &[f64], lr: f64, beta: f64) {
    for ((vi, ti), gi) in v.iter_mut().zip(theta.iter_mut()).zip(grad) {
        *vi = beta * *vi + (1.0 - beta) * gi;
        *ti -= lr * *vi;
    }
}

/// Optimizer buffers over the packed parameter vector `[w..., b]`.
struct Optimizer {
    lr: f64,
    beta: f64,
    rule: UpdateRule,
    first: Vec<f64>,
    second: Vec<f64>,
    steps: i32,
}

impl Optimizer {
    fn new(cfg: &OptimizerConfig, len: usize) -> Self {
        let second = match cfg.update_rule {
            UpdateRule::Adam { .. } => vec![0.0; len],
            UpdateRule::Momentum => Vec::new(),
        };
        Self { lr: cfg.learning_rate, beta: cfg.momentum, rule: cfg.update_rule, first: vec![0.0; len], second, steps: 0 }
    }

    fn step(&mut self, theta: &mut [f64], grad: &[f64]) {
        self.steps += 1;
        match self.rule {
            UpdateRule::Momentum => momentum_update(&mut self.first, theta, grad, self.lr, self.beta),
            UpdateRule::Adam { beta2, epsilon } => {
                let c1 = 1.0 - self.beta.powi(self.steps);
                let c2 = 1.0 - beta2.powi(self.steps);
                for i in 0..theta.len() {
                    self.first[i] = self.beta * self.first[i] + (1.0 - self.beta) * grad[i];
                    self.second[i] = beta2 * self.second[i] + (1.0 - beta2) * grad[i] * grad[i];
                    let m_hat = self.first[i] / c1;
                    let v_hat = self.second[i] / c2;
                    theta[i] -= self.lr * m_hat / (v_hat.sqrt() + epsilon);
                }
            }
        }
    }
}

fn check_rows(x: &Matrix, y: &[f64]) -> Result<()> {
    if x.rows() != y.len() {
        return Err(shape_err(format!("X has {} rows but y has {} labels", x.rows(), y.len())));
    }
    if x.rows() == 0 {
        return Err(Error::EmptyInput);
    }
    Ok(())
}

fn check_params(x: &Matrix, w: &[f64]) -> Result<()> {
    if x.cols() != w.len() {
        return Err(shape_err(format!("X has {} columns but {} weights given", x.cols(), w.len())));
    }
    Ok(())
}

/// Mean binary cross-entropy of `sigmoid(w·x + b)` against `{0, 1}` labels,
/// evaluated as `softplus(z) - y z` so it never takes `ln(0)`.
pub fn logistic_loss(x: &Matrix, y: &[f64], w: &[f64], b: f64) -> Result<f64> {
    check_rows(x, y)?;
    check_params(x, w)?;
    let all: Vec<usize> = (0..x.rows()).collect();
    let mut grad = vec![0.0; w.len() + 1];
    Ok(logistic_batch(x, y, w, b, &all, &mut grad))
}

/// Mean cross-entropy gradient `(1/n) Σ (ŷ - y) x` for the weights, and
/// `(1/n) Σ (ŷ - y)` for the bias.
pub fn logistic_gradient(x: &Matrix, y: &[f64], w: &[f64], b: f64) -> Result<(Vector, f64)> {
    check_rows(x, y)?;
    check_params(x, w)?;
    let all: Vec<usize> = (0..x.rows()).collect();
    let mut grad = vec![0.0; w.len() + 1];
    logistic_batch(x, y, w, b, &all, &mut grad);
    let gb = grad.pop().unwrap_or(0.0);
    Ok((Vector::new(grad)?, gb))
}

/// Fills `grad` (packed `[w..., b]`) with the batch-mean gradient and returns
/// the batch-mean loss.
fn logistic_batch(x: &Matrix, y: &[f64], w: &[f64], b: f64, rows: &[usize], grad: &mut [f64]) -> f64 {
    grad.iter_mut().for_each(|g| *g = 0.0);
    let d = w.len();
    let mut loss = 0.0;
    for &i in rows {
        let row = x.row(i);
        let z = row.iter().zip(w).map(|(a, c)| a * c).sum::<f64>() + b;
        let err = sigmoid(z) - y[i];
        loss += softplus(z) - y[i] * z;
        for (g, a) in grad[..d].iter_mut().zip(row) {
            *g += err * a;
        }
        grad[d] += err;
    }
    let scale = 1.0 / rows.len() as f64;
    grad.iter_mut().for_each(|g| *g *= scale);
    loss * scale
}

/// `½λ‖w‖² + (1/n) Σ max(0, 1 - y(w·x + b))`.
pub fn svm_objective(x: &Matrix, y: &[f64], w: &[f64], b: f64, lambda: f64) -> Result<f64> {
    check_rows(x, y)?;
    check_params(x, w)?;
    let all: Vec<usize> = (0..x.rows()).collect();
    let mut grad = vec![0.0; w.len() + 1];
    Ok(svm_batch(x, y, w, b, lambda, &all, &mut grad))
}

/// Subgradient of [`svm_objective`]: samples with margin ≥ 1 contribute only
/// the regularizer `λw`; the rest add `-y x` to the weights and `-y` to the
/// bias.
pub fn svm_gradient(x: &Matrix, y: &[f64], w: &[f64], b: f64, lambda: f64) -> Result<(Vector, f64)> {
    check_rows(x, y)?;
    check_params(x, w)?;
    let all: Vec<usize> = (0..x.rows()).collect();
    let mut grad = vec![0.0; w.len() + 1];
    svm_batch(x, y, w, b, lambda, &all, &mut grad);
    let gb = grad.pop().unwrap_or(0.0);
    Ok((Vector::new(grad)?, gb))
}

fn svm_batch(x: &Matrix, y: &[f64], w: &[f64], b: f64, lambda: f64, rows: &[usize], grad: &mut [f64]) -> f64 {
    grad.iter_mut().for_each(|g| *g = 0.0);
    let d = w.len();
    let mut hinge = 0.0;
    for &i in rows {
        let row = x.row(i);
        let margin = y[i] * (row.iter().zip(w).map(|(a, c)| a * c).sum::<f64>() + b);
        if margin < 1.0 {
            hinge += 1.0 - margin;
            for (g, a) in grad[..d].iter_mut().zip(row) {
                *g -= y[i] * a;
            }
            grad[d] -= y[i];
        }
    }
    let scale = 1.0 / rows.len() as f64;
    grad.iter_mut().for_each(|g| *g *= scale);
    for (g, wi) in grad[..d].iter_mut().zip(w) {
        *g += lambda * wi;
    }
    let norm2: f64 = w.iter().map(|v| v * v).sum();
    0.5 * lambda * norm2 + hinge * scale
}

/// Splits `order` into the epoch's batches, reshuffling for mini-batches.
fn epoch_batches<'a>(order: &'a mut [usize], batch: BatchSize, rng: &mut Rng) -> std::slice::Chunks<'a, usize> {
    let size = match batch {
        BatchSize::Full => order.len(),
        BatchSize::Size(s) => {
            if s < order.len() {
                rng.shuffle(order);
            }
            s.min(order.len())
        }
    };
    order.chunks(size.max(1))
}

fn into_state(theta: Vec<f64>, opt: Optimizer, epochs_run: usize, loss: Vec<f64>, acc: Vec<f64>) -> Result<GradientModelState> {
    let d = theta.len() - 1;
    Ok(GradientModelState {
        weights: Vector::new(theta[..d].to_vec())?,
        bias: theta[d],
        velocity: Vector::new(opt.first[..d].to_vec())?,
        bias_velocity: opt.first[d],
        epochs_run,
        loss_history: loss,
        accuracy_history: acc,
    })
}

/// Trains logistic regression on `{0, 1}` labels.
///
/// Weights start uniform in `[0, 1)` (drawn from `rng`), the bias at 0.
/// Every epoch runs over all batches; there is no early stopping.
pub fn logistic_fit(x: &Matrix, y: &Vector, cfg: &OptimizerConfig, rng: &mut Rng) -> Result<GradientModelState> {
    cfg.validate()?;
    check_rows(x, y)?;
    if y.iter().any(|&v| v != 0.0 && v != 1.0) {
        return Err(Error::NonBinaryLabels);
    }
    let d = x.cols();
    let mut theta: Vec<f64> = (0..d).map(|_| rng.uniform()).collect();
    theta.push(0.0);
    let mut opt = Optimizer::new(cfg, d + 1);
    let mut grad = vec![0.0; d + 1];
    let mut order: Vec<usize> = (0..x.rows()).collect();
    let mut history = Vec::with_capacity(cfg.max_epochs);

    for epoch in 1..=cfg.max_epochs {
        let mut epoch_loss = 0.0;
        for batch in epoch_batches(&mut order, cfg.batch_size, rng) {
            let (w, b) = theta.split_at(d);
            epoch_loss += logistic_batch(x, y, w, b[0], batch, &mut grad) * batch.len() as f64;
            opt.step(&mut theta, &grad);
        }
        let mean_loss = epoch_loss / x.rows() as f64;
        if !mean_loss.is_finite() || theta.iter().any(|v| !v.is_finite()) {
            return Err(Error::DivergedToNaN { epoch });
        }
        history.push(mean_loss);
    }
    into_state(theta, opt, cfg.max_epochs, history, Vec::new())
}

pub fn logistic_predict_proba(state: &GradientModelState, x: &Matrix) -> Result<Vector> {
    let z = state.decision_function(x)?;
    Vector::new(z.iter().map(|&v| sigmoid(v)).collect())
}

/// Labels 1 where the probability reaches `threshold`, else 0.
pub fn logistic_predict(state: &GradientModelState, x: &Matrix, threshold: f64) -> Result<Vector> {
    let p = logistic_predict_proba(state, x)?;
    Vector::new(p.iter().map(|&v| if v >= threshold { 1.0 } else { 0.0 }).collect())
}

fn sign(z: f64) -> f64 {
    if z >= 0.0 {
        1.0
    } else {
        -1.0
    }
}

/// Trains the linear SVM on `{-1, +1}` labels from zero weights.
///
/// After every epoch the training accuracy of the updated parameters is
/// measured; reaching `cfg.early_stop_accuracy` ends training.
pub fn svm_fit(x: &Matrix, y: &Vector, cfg: &SvmConfig, rng: &mut Rng) -> Result<GradientModelState> {
    cfg.validate()?;
    check_rows(x, y)?;
    if y.iter().any(|&v| v != 1.0 && v != -1.0) {
        return Err(Error::LabelsNotPlusMinusOne);
    }
    if y.iter().all(|&v| v == y[0]) {
        return Err(Error::SingleClass);
    }
    let d = x.cols();
    let n = x.rows();
    let mut theta = vec![0.0; d + 1];
    let mut opt = Optimizer::new(&cfg.optimizer, d + 1);
    let mut grad = vec![0.0; d + 1];
    let mut order: Vec<usize> = (0..n).collect();
    let mut losses = Vec::new();
    let mut accuracies = Vec::new();
    let mut epochs_run = 0;

    for epoch in 1..=cfg.optimizer.max_epochs {
        let mut epoch_loss = 0.0;
        for batch in epoch_batches(&mut order, cfg.optimizer.batch_size, rng) {
            let (w, b) = theta.split_at(d);
            epoch_loss += svm_batch(x, y, w, b[0], cfg.lambda, batch, &mut grad) * batch.len() as f64;
            opt.step(&mut theta, &grad);
        }
        if theta.iter().any(|v| !v.is_finite()) || !epoch_loss.is_finite() {
            return Err(Error::DivergedToNaN { epoch });
        }
        epochs_run = epoch;
        losses.push(epoch_loss / n as f64);

        let (w, b) = theta.split_at(d);
        let correct = x
            .row_iter()
            .zip(y.iter())
            .filter(|(row, &label)| sign(row.iter().zip(w).map(|(a, c)| a * c).sum::<f64>() + b[0]) == label)
            .count();
        let accuracy = correct as f64 / n as f64;
        accuracies.push(accuracy);
        if accuracy >= cfg.early_stop_accuracy {
            break;
        }
    }
    into_state(theta, opt, epochs_run, losses, accuracies)
}

/// `sign(w·x + b)` with a zero margin mapped to `+1`.
pub fn svm_predict(state: &GradientModelState, x: &Matrix) -> Result<Vector> {
    let z = state.decision_function(x)?;
    Vector::new(z.iter().map(|&v| sign(v)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn labels(values: &[f64]) -> Vector {
        Vector::new(values.to_vec()).unwrap()
    }

    fn repeated_points(points: &[(f64, f64)], times: usize) -> (Matrix, Vector) {
        let mut xs = Vec::new();
        let mut ys = Vec::new();
        for _ in 0..times {
            for &(x, y) in points {
                xs.push(x);
                ys.push(y);
            }
        }
        (Matrix::column_vector(&xs).unwrap(), labels(&ys))
    }

    fn state(w: &[f64], b: f64) -> GradientModelState {
        GradientModelState {
            weights: labels(w),
            bias: b,
            velocity: Vector::zeros(w.len()),
            bias_velocity: 0.0,
            epochs_run: 0,
            loss_history: Vec::new(),
            accuracy_history: Vec::new(),
        }
    }

    #[test]
    fn sigmoid_values() {
        assert_eq!(sigmoid(0.0), 0.5);
        for z in [0.3, 1.7, 5.0, 12.0] {
            assert_abs_diff_eq!(sigmoid(-z), 1.0 - sigmoid(z), epsilon = 1e-15);
        }
        let tiny = sigmoid(-750.0);
        assert!(tiny > 0.0 && tiny <= 1e-300);
        assert!(sigmoid(750.0) < 1.0);
        assert!(sigmoid(f64::MAX).is_finite());
    }

    #[test]
    fn momentum_step_examples() {
        let (v, t) = momentum_step(&[0.7, -0.2], &[1.0, 2.0], &[0.0, 1.0], 0.1, 0.0).unwrap();
        assert_eq!(v.as_slice(), &[1.0, 2.0]);
        assert_abs_diff_eq!(t.as_slice(), &[-0.1, 0.8][..], epsilon = 1e-15);

        // zero gradient: the buffer decays by β each step
        let mut v = vec![1.0];
        let mut t = vec![0.0];
        for k in 1..=5 {
            let (nv, nt) = momentum_step(&v, &[0.0], &t, 0.5, 0.5).unwrap();
            assert_abs_diff_eq!(nv[0], 0.5f64.powi(k), epsilon = 1e-15);
            v = nv.to_vec();
            t = nt.to_vec();
        }

        // two steps with constant g, unrolled by hand
        let (a, b, g, t0) = (0.1, 0.9, 2.0, 1.0);
        let (v1, t1) = momentum_step(&[0.0], &[g], &[t0], a, b).unwrap();
        let (_, t2) = momentum_step(&v1, &[g], &t1, a, b).unwrap();
        let expected = t0 - a * (1.0 - b) * g - a * (b * (1.0 - b) + (1.0 - b)) * g;
        assert_abs_diff_eq!(t2[0], expected, epsilon = 1e-15);

        assert!(momentum_step(&[0.0], &[1.0, 2.0], &[0.0], 0.1, 0.9).is_err());
    }

    #[test]
    fn first_update_direction_is_scale_free() {
        let g = [0.3, -1.2, 0.5];
        let (_, t1) = momentum_step(&[0.0; 3], &g, &[0.0; 3], 0.01, 0.9).unwrap();
        let (_, t2) = momentum_step(&[0.0; 3], &g, &[0.0; 3], 0.05, 0.5).unwrap();
        let r = t2[0] / t1[0];
        for i in 0..3 {
            assert_abs_diff_eq!(t2[i], r * t1[i], epsilon = 1e-15);
        }
    }

    #[test]
    fn logistic_separable_1d() {
        let (x, y) = repeated_points(&[(-1.0, 0.0), (1.0, 1.0)], 50);
        let cfg = OptimizerConfig { learning_rate: 0.5, momentum: 0.9, max_epochs: 200, ..Default::default() };
        let s = logistic_fit(&x, &y, &cfg, &mut Rng::new(0)).unwrap();
        let pred = logistic_predict(&s, &x, 0.5).unwrap();
        assert_eq!(pred, y);
        assert_eq!(s.loss_history.len(), 200);
        assert!(s.loss_history.iter().all(|l| l.is_finite()));
    }

    #[test]
    fn logistic_single_class_saturates() {
        let x = Matrix::from_rows(&[[0.5, -1.0], [1.0, 2.0], [-0.3, 0.1]]).unwrap();
        let y = labels(&[1.0, 1.0, 1.0]);
        let s = logistic_fit(&x, &y, &OptimizerConfig::default(), &mut Rng::new(1)).unwrap();
        assert!(logistic_predict_proba(&s, &x).unwrap().iter().all(|&p| p > 0.5));
    }

    #[test]
    fn logistic_rejects_bad_input() {
        let x = Matrix::zeros(2, 1);
        let cfg = OptimizerConfig::default();
        assert_eq!(logistic_fit(&x, &labels(&[0.0, 2.0]), &cfg, &mut Rng::new(0)), Err(Error::NonBinaryLabels));
        assert!(matches!(logistic_fit(&x, &labels(&[0.0]), &cfg, &mut Rng::new(0)), Err(Error::ShapeMismatch(_))));
        let bad = OptimizerConfig { momentum: 1.0, ..cfg };
        assert!(matches!(logistic_fit(&x, &labels(&[0.0, 1.0]), &bad, &mut Rng::new(0)), Err(Error::InvalidConfig(_))));
    }

    #[test]
    fn logistic_divergence_is_reported() {
        let x = Matrix::from_rows(&[[1e150], [-1e150]]).unwrap();
        let cfg = OptimizerConfig { learning_rate: 1e300, momentum: 0.0, max_epochs: 10, ..Default::default() };
        assert!(matches!(
            logistic_fit(&x, &labels(&[1.0, 0.0]), &cfg, &mut Rng::new(0)),
            Err(Error::DivergedToNaN { .. })
        ));
    }

    #[test]
    fn logistic_predict_examples() {
        let x = Matrix::from_rows(&[[1.0, 2.0], [-3.0, 0.5], [0.0, 0.0]]).unwrap();
        assert!(logistic_predict_proba(&state(&[0.0, 0.0], 0.0), &x).unwrap().iter().all(|&p| p == 0.5));

        let s = state(&[1.0], 0.0);
        let p = logistic_predict_proba(&s, &Matrix::column_vector(&[0.0, 1e3]).unwrap()).unwrap();
        assert_eq!(p[0], 0.5);
        assert_abs_diff_eq!(p[1], 1.0, epsilon = 1e-15);

        let s = state(&[0.5, -1.5], 0.25);
        let p = logistic_predict_proba(&s, &x).unwrap();
        for (i, row) in x.row_iter().enumerate() {
            let z = 0.5 * row[0] - 1.5 * row[1] + 0.25;
            assert_abs_diff_eq!(p[i], 1.0 / (1.0 + (-z).exp()), epsilon = 1e-15);
        }
        assert!(logistic_predict(&s, &Matrix::zeros(1, 3), 0.5).is_err());
    }

    #[test]
    fn adam_mode_trains() {
        let (x, y) = repeated_points(&[(-1.0, 0.0), (1.0, 1.0)], 20);
        let cfg = OptimizerConfig { learning_rate: 0.1, max_epochs: 100, update_rule: UpdateRule::adam(), ..Default::default() };
        let s = logistic_fit(&x, &y, &cfg, &mut Rng::new(3)).unwrap();
        assert_eq!(logistic_predict(&s, &x, 0.5).unwrap(), y);
    }

    #[test]
    fn svm_separable_1d_stops_early() {
        let (x, y) = repeated_points(&[(-2.0, -1.0), (2.0, 1.0)], 20);
        let cfg = SvmConfig {
            lambda: 0.01,
            early_stop_accuracy: 1.0,
            optimizer: OptimizerConfig { learning_rate: 0.01, ..Default::default() },
        };
        let s = svm_fit(&x, &y, &cfg, &mut Rng::new(0)).unwrap();
        assert_eq!(svm_predict(&s, &x).unwrap(), y);
        assert!(s.epochs_run < cfg.optimizer.max_epochs);
    }

    #[test]
    fn svm_first_epoch_hinge_is_active_everywhere() {
        let x = Matrix::from_rows(&[[1.0, 2.0], [-1.0, 0.5], [3.0, -2.0]]).unwrap();
        let y = labels(&[1.0, -1.0, 1.0]);
        let (gw, gb) = svm_gradient(&x, &y, &[0.0, 0.0], 0.0, 0.01).unwrap();
        let n = 3.0;
        let expected_w: Vec<f64> = (0..2).map(|j| -(0..3).map(|i| y[i] * x.get(i, j)).sum::<f64>() / n).collect();
        assert_abs_diff_eq!(gw.as_slice(), &expected_w[..], epsilon = 1e-15);
        assert_abs_diff_eq!(gb, -(1.0 - 1.0 + 1.0) / n, epsilon = 1e-15);
        assert_eq!(svm_objective(&x, &y, &[0.0, 0.0], 0.0, 0.01).unwrap(), 1.0);
    }

    #[test]
    fn svm_label_errors() {
        let x = Matrix::zeros(2, 1);
        let cfg = SvmConfig::default();
        assert_eq!(svm_fit(&x, &labels(&[0.0, 1.0]), &cfg, &mut Rng::new(0)), Err(Error::LabelsNotPlusMinusOne));
        assert_eq!(svm_fit(&x, &labels(&[1.0, 1.0]), &cfg, &mut Rng::new(0)), Err(Error::SingleClass));
        let bad = SvmConfig { lambda: 0.0, ..cfg };
        assert!(matches!(svm_fit(&x, &labels(&[-1.0, 1.0]), &bad, &mut Rng::new(0)), Err(Error::InvalidConfig(_))));
    }

    #[test]
    fn svm_predict_sign_rule() {
        let s = state(&[1.0], 0.0);
        let p = svm_predict(&s, &Matrix::column_vector(&[3.0, -3.0, 0.0]).unwrap()).unwrap();
        assert_eq!(p.as_slice(), &[1.0, -1.0, 1.0]);
    }

    #[test]
    fn svm_is_antisymmetric_in_labels() {
        let mut rng = Rng::new(9);
        let x = Matrix::from_fn(40, 3, |_, _| rng.standard_normal()).unwrap();
        let y = labels(&x.row_iter().map(|r| if r[0] + 0.5 * r[1] > 0.1 { 1.0 } else { -1.0 }).collect::<Vec<_>>());
        let neg = labels(&y.iter().map(|v| -v).collect::<Vec<_>>());
        let cfg = SvmConfig { optimizer: OptimizerConfig { max_epochs: 30, ..Default::default() }, ..Default::default() };
        let a = svm_fit(&x, &y, &cfg, &mut Rng::new(1)).unwrap();
        let b = svm_fit(&x, &neg, &cfg, &mut Rng::new(1)).unwrap();
        for (wa, wb) in a.weights.iter().zip(b.weights.iter()) {
            assert_eq!(*wa, -wb);
        }
        assert_eq!(a.bias, -b.bias);
        let za = a.decision_function(&x).unwrap();
        let pa = svm_predict(&a, &x).unwrap();
        let pb = svm_predict(&b, &x).unwrap();
        for i in 0..40 {
            if za[i] != 0.0 {
                assert_eq!(pa[i], -pb[i]);
            }
        }
    }

    #[test]
    fn mini_batches_are_deterministic() {
        let mut rng = Rng::new(12);
        let x = Matrix::from_fn(50, 2, |_, _| rng.standard_normal()).unwrap();
        let y = labels(&x.row_iter().map(|r| if r[0] > 0.0 { 1.0 } else { 0.0 }).collect::<Vec<_>>());
        let cfg = OptimizerConfig { batch_size: BatchSize::Size(8), max_epochs: 20, ..Default::default() };
        let a = logistic_fit(&x, &y, &cfg, &mut Rng::new(5)).unwrap();
        let b = logistic_fit(&x, &y, &cfg, &mut Rng::new(5)).unwrap();
        assert_eq!(a, b);
    }
}
