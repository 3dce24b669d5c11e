//! K-Means clustering and principal component analysis.

mod kmeans;
mod pca;

pub use kmeans::{kmeans_assign, kmeans_fit, KMeansModel, DEFAULT_MAX_ITERATIONS, DEFAULT_TOLERANCE};
pub use pca::{components_for_variance, explained_variance_ratio, pca_fit, pca_transform, PcaModel};
