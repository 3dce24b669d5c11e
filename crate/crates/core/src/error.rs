use thiserror::Error;

/// Everything that can go wrong inside the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("non-finite value at flat index {index}")]
    NonFinite { index: usize },
    #[error("input is empty")]
    EmptyInput,
    #[error("need at least {needed} rows, got {got}")]
    TooFewRows { needed: usize, got: usize },
    #[error("matrix is singular to working precision")]
    SingularMatrix,
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("eigen solver did not converge within {sweeps} sweeps")]
    NoConvergence { sweeps: usize },
    #[error("validation ratio {0} is outside (0, 1)")]
    RatioOutOfRange(f64),
    #[error("polynomial degree must be at least 1")]
    DegreeZero,
    #[error("x is (numerically) constant; slope is undefined")]
    DegenerateX,
    #[error("labels must be 0 or 1")]
    NonBinaryLabels,
    #[error("labels must be -1 or +1")]
    LabelsNotPlusMinusOne,
    #[error("training labels contain a single class")]
    SingleClass,
    #[error("parameters became non-finite at epoch {epoch}")]
    DivergedToNaN { epoch: usize },
    #[error("k = {k} is outside 1..={n}")]
    KOutOfRange { k: usize, n: usize },
    #[error("class {class} has {count} samples; at least 2 are required")]
    ClassTooSmall { class: f64, count: usize },
    #[error("k must be at least 1")]
    KZero,
    #[error("k = {k} exceeds the {rows} available rows")]
    KTooLarge { k: usize, rows: usize },
    #[error("requested {requested} components, only {available} available")]
    TooManyComponents { requested: usize, available: usize },
    #[error("all eigenvalues are zero")]
    AllZeroVariance,
    #[error("more than two distinct labels")]
    MoreThanTwoClasses,
    #[error("target is constant; R² is undefined")]
    ConstantTarget,
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn shape_err(msg: impl Into<String>) -> Error {
    Error::ShapeMismatch(msg.into())
}
