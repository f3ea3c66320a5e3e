use std::path::PathBuf;

use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("csv: {0}")]
    Csv(#[from] csv::Error),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),

    #[error("label column {0:?} not found in header")]
    MissingLabelColumn(String),

    #[error("label column {0:?} appears more than once in header")]
    DuplicateLabelColumn(String),

    #[error("cannot parse row {row}, column {column:?}: {value:?} is not a finite number")]
    ParseCell { row: usize, column: String, value: String },

    #[error("row {row} has {found} cells, header has {expected}")]
    RaggedRow { row: usize, found: usize, expected: usize },

    #[error("dataset has {0} rows, at least 2 are required")]
    TooFewRows(usize),

    #[error("dataset contains a single class")]
    SingleClass,

    #[error("empty class: {0}")]
    EmptyClass(&'static str),

    #[error("class {class} has {found} samples, at least {required} are required")]
    ClassTooSmall {
        class: &'static str,
        found: usize,
        required: usize,
    },

    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("non-finite feature value at sample {sample}, feature {feature}")]
    NonFinite { sample: usize, feature: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("probability out of range: {0}")]
    InvalidProbability(String),

    #[error("boosting stopped before any learner was accepted")]
    NoLearner,
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidArgument(msg.into())
}
