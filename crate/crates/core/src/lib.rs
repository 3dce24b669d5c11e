//! Classical machine learning built for short training times.
//!
//! The crate covers closed-form regression (simple, multiple and polynomial
//! least squares), gradient-trained linear classifiers (logistic regression
//! and a hinge-loss SVM, both updated through momentum buffers), K-nearest
//! neighbours, Gaussian Naive Bayes, K-Means, PCA, the usual preprocessing
//! steps and regression/classification metrics.
//!
//! All numerics run on dense row-major `f64` containers ([`Matrix`],
//! [`Vector`]) and every random choice flows through an explicit, seeded
//! [`Rng`] so fitted models are reproducible bit for bit.

pub mod error;
pub mod gradient;
pub mod instance;
pub mod linear;
pub mod metrics;
pub mod numeric;
pub mod preprocessing;
pub mod unsupervised;

pub use error::{Error, Result};
pub use gradient::{
    logistic_fit, logistic_predict, logistic_predict_proba, momentum_step, sigmoid, svm_fit,
    svm_predict, BatchSize, GradientModelState, OptimizerConfig, SvmConfig, UpdateRule,
};
pub use instance::{knn_predict, nb_fit, nb_predict, ClassStatistics, KnnModel};
pub use linear::{
    fit_multiple, fit_polynomial, fit_simple, predict_linear, FittedLinearModel, PolynomialModel,
    SimpleLinearModel,
};
pub use metrics::{
    classification_metrics, confusion, regression_metrics, ClassificationReport, ConfusionMatrix,
    RegressionReport,
};
pub use numeric::{shuffled_indices, solve_linear_system, symmetric_eigen, Eigen, Matrix, Rng, Vector};
pub use preprocessing::{
    min_max_fit_transform, polynomial_features, standard_fit_transform, train_val_split,
    MinMaxScalerState, SplitResult, StandardScalerState,
};
pub use unsupervised::{
    components_for_variance, explained_variance_ratio, kmeans_assign, kmeans_fit, pca_fit,
    pca_transform, KMeansModel, PcaModel,
};
