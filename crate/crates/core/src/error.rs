use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid gate id {0}: expected 0..=9")]
    InvalidGate(u8),

    #[error("feature index {index} out of range for {width} sensors")]
    FeatureOutOfRange { index: usize, width: usize },

    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("{path}: {message}")]
    Io { path: PathBuf, message: String },

    #[error("csv: {0}")]
    Csv(String),

    #[error("missing label column `class`")]
    MissingLabelColumn,

    #[error("row {row}, column {column}: non-binary label `{value}`")]
    NonBinaryLabel { row: usize, column: usize, value: String },

    #[error("row {row}, column {column}: `{value}` is not a finite number")]
    NonNumeric { row: usize, column: usize, value: String },

    #[error("row {row}, column {column}: boolean feature has value `{value}`")]
    NonBooleanFeature { row: usize, column: usize, value: String },

    #[error("row {row}: expected {expected} cells, found {found}")]
    RowWidth { row: usize, expected: usize, found: usize },

    #[error("duplicate feature name `{name}` at columns {first} and {second}")]
    DuplicateFeature { name: String, first: usize, second: usize },

    #[error("schema line {line}: {message}")]
    Schema { line: usize, message: String },

    #[error("learning set: {0}")]
    InvalidLearningSet(String),

    #[error("quantization spec has no threshold for quantitative feature `{0}`")]
    MissingThreshold(String),

    #[error("split requires n >= 4, got {0}")]
    SplitTooSmall(usize),

    #[error("need at least 2 features, got {0}")]
    TooFewFeatures(usize),

    #[error("no survivors to extend")]
    NoSurvivors,

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("{relevant} relevant sensors exceed the enumeration limit of {limit}; restrict to used features or select rows")]
    CubeTooLarge { relevant: usize, limit: usize },

    #[error("oracle size guard: m = {m}, depth = {depth} (limits m <= 6, depth <= 3)")]
    OracleGuard { m: usize, depth: usize },

    #[error("cannot parse expression `{text}`: {message}")]
    ExprParse { text: String, message: String },

    #[error("model format version {found} is not supported (expected {expected})")]
    ModelVersion { found: u32, expected: u32 },

    #[error("model digest mismatch: stored {stored}, computed {computed}")]
    DigestMismatch { stored: String, computed: String },

    #[error("malformed model file: {0}")]
    MalformedModel(String),

    #[error("row {row}: {message}")]
    RowSchema { row: usize, message: String },
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, err: impl std::fmt::Display) -> Self {
        Error::Io { path: path.into(), message: err.to_string() }
    }
}
