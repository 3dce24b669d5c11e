//! Classifiers that keep (summaries of) the training data instead of
//! learning weights: K-nearest neighbours and Gaussian Naive Bayes.

mod knn;
mod naive_bayes;

pub use knn::{knn_predict, KnnModel};
pub use naive_bayes::{nb_fit, nb_log_scores, nb_predict, ClassStatistics};
