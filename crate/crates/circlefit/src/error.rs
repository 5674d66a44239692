//! Crate-wide error type. Fitters, filters and the harness share one enum
//! because filters propagate fitter errors and the pipeline wraps both.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Pipeline stage that produced a wrapped error.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stage {
    Filter,
    Fit,
}

impl std::fmt::Display for Stage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Stage::Filter => write!(f, "filter"),
            Stage::Fit => write!(f, "fit"),
        }
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("point set is empty")]
    EmptySet,
    #[error("need at least {needed} points, got {got}")]
    TooFewPoints { needed: usize, got: usize },
    #[error("the three points are collinear")]
    CollinearPoints,
    #[error("linear system is singular or near-singular")]
    SingularSystem,
    #[error("constrained fit has no admissible eigenvalue")]
    NoAdmissibleEigenvalue,
    #[error("no valid model found among sampled subsets")]
    NoModelFound,
    #[error("homogeneous solution has near-zero scale component")]
    DegenerateScale,
    #[error("unknown fit algorithm `{0}`")]
    UnknownAlgorithm(String),
    #[error("unknown filter method `{0}`")]
    UnknownMethod(String),
    #[error("non-finite coordinate at point {index}")]
    NonFiniteValue { index: usize },
    #[error("invalid count: {0}")]
    BadCount(String),
    #[error("input lengths differ: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },
    #[error("input is empty")]
    EmptyInput,
    #[error("need at least two values")]
    TooFewValues,
    #[error("input must be positive")]
    NonPositiveInput,
    #[error("dataset is empty or lacks a reference part")]
    EmptyDataset,
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("{stage} stage: {source}")]
    Pipeline {
        stage: Stage,
        #[source]
        source: Box<Error>,
    },
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}

impl Error {
    /// Wrap an error with the pipeline stage it came from.
    pub fn in_stage(self, stage: Stage) -> Error {
        Error::Pipeline {
            stage,
            source: Box::new(self),
        }
    }
}
