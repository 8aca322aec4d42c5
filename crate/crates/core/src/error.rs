use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// A violated semimetric axiom, located by point indices.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ValidationError {
    #[error("symmetry violated at ({i}, {j}): dist({i}, {j}) != dist({j}, {i})")]
    Asymmetry { i: usize, j: usize },
    #[error("positivity violated at point {i}: nonzero diagonal entry")]
    NonzeroDiagonal { i: usize },
    #[error("positivity violated at ({i}, {j}): zero distance between distinct points")]
    ZeroOffDiagonal { i: usize, j: usize },
    #[error("positivity violated at ({i}, {j}): negative entry")]
    Negative { i: usize, j: usize },
    #[error("triangle inequality violated: dist({x}, {z}) > dist({x}, {y}) + dist({y}, {z})")]
    Triangle { x: usize, y: usize, z: usize },
    #[error("a semimetric space must be nonempty")]
    Empty,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error(transparent)]
    Validation(#[from] ValidationError),
    #[error("subset of points is empty")]
    EmptySubset,
    #[error("point index {index} out of range for {n} points")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("duplicate point index {index}")]
    DuplicateIndex { index: usize },
    #[error("image array {images:?} is not a permutation")]
    NotAPermutation { images: Vec<usize> },
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },
    #[error("degree {n} exceeds the cap {cap}")]
    DegreeTooLarge { n: usize, cap: usize },
    #[error("degree {n} is below the minimum {min}")]
    DegreeTooSmall { n: usize, min: usize },
    #[error("set is not closed: {left} o {right} is missing")]
    NotClosed { left: String, right: String },
    #[error("set does not contain the identity")]
    MissingIdentity,
    #[error("space sizes differ: {source_n} vs {target_n}")]
    SizeMismatch { source_n: usize, target_n: usize },
    #[error("operation needs at least 3 points, got {n}")]
    TooFewPoints { n: usize },
    #[error("parameter {name} must be positive, got {value}")]
    NonPositiveParameter { name: &'static str, value: String },
    #[error("block count {block_count} is invalid for {n} points (allowed 1..={max})")]
    BadBlockCount {
        n: usize,
        block_count: usize,
        max: usize,
    },
    #[error("invalid restricted-growth string: {0}")]
    InvalidRgs(String),
}
