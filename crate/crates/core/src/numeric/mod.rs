//! Dense containers, seeded randomness and the two linear-algebra kernels
//! the models are built on.

mod eigen;
mod matrix;
mod rng;
mod solve;

pub use eigen::{symmetric_eigen, Eigen};
pub use matrix::{Matrix, Vector};
pub(crate) use matrix::squared_distance;
pub use rng::{shuffled_indices, Rng};
pub use solve::solve_linear_system;
