use thiserror::Error;

/// Everything that can go wrong while building or analysing a PC matrix.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not square: row {row} has {len} entries, expected {expected}")]
    NonSquare { row: usize, len: usize, expected: usize },

    #[error("matrix order {n} is too small (need at least {min})")]
    OrderTooSmall { n: usize, min: usize },

    #[error("entry ({row}, {col}) = {value} is not a finite positive number")]
    NonPositiveEntry { row: usize, col: usize, value: f64 },

    #[error("diagonal entry ({index}, {index}) = {value} is not 1")]
    DiagonalNotOne { index: usize, value: f64 },

    #[error("reciprocity violated at ({i}, {j})/({j}, {i}): relative error {rel_err:e}")]
    ReciprocityViolation { i: usize, j: usize, rel_err: f64 },

    #[error("weight {index} = {value} is not a finite positive number")]
    NonPositiveWeight { index: usize, value: f64 },

    #[error("parameter x = {0} must be positive, finite and different from 1")]
    DegenerateX(f64),

    #[error("placement ({i}, {j}) is invalid for order {n}")]
    BadPlacement { i: usize, j: usize, n: usize },

    #[error("k = {k} is out of range for order {n} (need 1 <= k and 2k <= n - 1)")]
    KTooLarge { k: usize, n: usize },

    #[error("offset set {offsets:?} is invalid for order {n}: {reason}")]
    OffsetsClash { offsets: Vec<usize>, n: usize, reason: String },

    #[error("family {kind} is missing required parameter `{param}`")]
    MissingParameter { kind: &'static str, param: &'static str },

    #[error("power iteration did not converge after {iterations} iterations (residual {residual:e})")]
    NoConvergence { iterations: usize, residual: f64 },

    #[error("invalid order {0} for the consistency index (need n >= 2)")]
    BadOrder(usize),

    #[error("lambda_max = {lambda} is below the matrix order {n}")]
    LambdaBelowOrder { lambda: f64, n: usize },

    #[error("order {0} is odd; the two-radius analysis needs an even order >= 4")]
    OddOrder(usize),

    #[error("x = {0} must be greater than 1")]
    XNotAboveOne(f64),

    #[error("invalid tolerance {0}")]
    BadTolerance(f64),

    #[error("grid is not strictly increasing")]
    UnsortedGrid,

    #[error("parse error: {0}")]
    Parse(String),

    #[error("io error: {0}")]
    Io(String),
}

impl Error {
    /// Stable machine-readable name of the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::NonSquare { .. } => "NonSquare",
            Error::OrderTooSmall { .. } => "OrderTooSmall",
            Error::NonPositiveEntry { .. } => "NonPositiveEntry",
            Error::DiagonalNotOne { .. } => "DiagonalNotOne",
            Error::ReciprocityViolation { .. } => "ReciprocityViolation",
            Error::NonPositiveWeight { .. } => "NonPositiveWeight",
            Error::DegenerateX(_) => "DegenerateX",
            Error::BadPlacement { .. } => "BadPlacement",
            Error::KTooLarge { .. } => "KTooLarge",
            Error::OffsetsClash { .. } => "OffsetsClash",
            Error::MissingParameter { .. } => "MissingParameter",
            Error::NoConvergence { .. } => "NoConvergence",
            Error::BadOrder(_) => "BadOrder",
            Error::LambdaBelowOrder { .. } => "LambdaBelowOrder",
            Error::OddOrder(_) => "OddOrder",
            Error::XNotAboveOne(_) => "XNotAboveOne",
            Error::BadTolerance(_) => "BadTolerance",
            Error::UnsortedGrid => "UnsortedGrid",
            Error::Parse(_) => "Parse",
            Error::Io(_) => "Io",
        }
    }

    /// True for failures of the numerical machinery itself rather than bad input.
    pub fn is_numerical(&self) -> bool {
        matches!(self, Error::NoConvergence { .. })
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
