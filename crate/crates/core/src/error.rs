use thiserror::Error;

#[derive(Error, Debug, Clone, PartialEq)]
pub enum Error {
    #[error("vector {index} has dimension {found}, expected {expected}")]
    DimensionMismatch {
        index: usize,
        expected: usize,
        found: usize,
    },

    #[error("direction {0} is the zero vector")]
    ZeroDirection(usize),

    #[error("direction set does not span R^{0}")]
    NotSpanning(usize),

    #[error("direction set has {found} vectors, at most {max} are supported")]
    TooManyDirections { found: usize, max: usize },

    #[error("direction set is not unimodular (a {d}-subset has |det| = {det})")]
    NotUnimodular { d: usize, det: i128 },

    #[error("index set does not leave a hyperplane: rank of the complement is {rank}, expected {expected}")]
    NotAHyperplaneClass { rank: usize, expected: usize },

    #[error("derivative order {order} does not match product length {len}")]
    OrderMismatch { order: u32, len: usize },

    #[error("derivative order {order} exceeds the supported maximum {max}")]
    OrderTooHigh { order: u32, max: u32 },

    #[error("frequency vector must be nonzero")]
    ZeroFrequency,

    #[error("{what} is only implemented for dimension {supported}, got {found}")]
    UnsupportedDimension {
        what: &'static str,
        supported: &'static str,
        found: usize,
    },

    #[error("{what}: {size} exceeds the cap {max}")]
    TooLarge {
        what: &'static str,
        size: usize,
        max: usize,
    },

    #[error("Gram matrix is not numerically positive definite (pivot {pivot} = {value:e})")]
    NotPositiveDefinite { pivot: usize, value: f64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("configuration error: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;
