//! Fixtures shared by the training benchmarks.

use leanml::{Matrix, Rng, Vector};
use leanml_cli::{generate_synthetic, SyntheticRecipe, Task};

pub struct Fixture {
    pub x: Matrix,
    pub y: Vector,
}

pub fn regression(rows: usize, cols: usize, seed: u64) -> Fixture {
    build(SyntheticRecipe { rows, cols, task: Task::Regression, param: 0.1 }, seed)
}

/// Two Gaussian clouds `separation` standard deviations apart, labels 0/1.
pub fn classification(rows: usize, cols: usize, separation: f64, seed: u64) -> Fixture {
    build(SyntheticRecipe { rows, cols, task: Task::BinaryClassification, param: separation }, seed)
}

impl Fixture {
    /// Labels as ±1 for the SVM.
    pub fn signed_labels(&self) -> Vector {
        Vector::new(self.y.iter().map(|&v| 2.0 * v - 1.0).collect()).expect("finite labels")
    }
}

fn build(recipe: SyntheticRecipe, seed: u64) -> Fixture {
    let data = generate_synthetic(&recipe, &mut Rng::new(seed)).expect("valid recipe");
    Fixture { x: data.x, y: data.y }
}
