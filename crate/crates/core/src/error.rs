use std::fmt;

use thiserror::Error;

/// One of the two variables of a bivariate sample.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Axis {
    X,
    Y,
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Axis::X => f.write_str("x"),
            Axis::Y => f.write_str("y"),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("length mismatch: {x_len} x values but {y_len} y values")]
    LengthMismatch { x_len: usize, y_len: usize },

    #[error("too few observations: need at least 2 pairs, got {0}")]
    TooFewObservations(usize),

    #[error("non-finite {axis} value at index {index}")]
    NonFiniteValue { axis: Axis, index: usize },

    #[error("empty sequence")]
    EmptySequence,

    #[error("zero variance in {0}: the coefficient is undefined")]
    ZeroVariance(Axis),

    #[error("value {0} is outside [-1, 1]")]
    OutOfRange(f64),

    #[error("reference index {k} is outside 1..={n}")]
    IndexOutOfRange { k: usize, n: usize },

    #[error("scale factor for {0} must be non-zero")]
    ZeroScale(Axis),

    #[error("correlation {0} exceeds [-1, 1] beyond rounding tolerance")]
    Inconsistent(f64),

    #[error("invalid transform `{spec}`: {reason}")]
    InvalidTransform { spec: String, reason: String },

    #[error("parse error at line {line}, column {column}: {reason}")]
    Parse {
        line: u64,
        column: usize,
        reason: String,
    },

    #[error("column not found: {0}")]
    ColumnNotFound(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    /// Stable machine-readable identifier for the error variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::LengthMismatch { .. } => "length_mismatch",
            Error::TooFewObservations(_) => "too_few_observations",
            Error::NonFiniteValue { .. } => "non_finite_value",
            Error::EmptySequence => "empty_sequence",
            Error::ZeroVariance(_) => "zero_variance",
            Error::OutOfRange(_) => "out_of_range",
            Error::IndexOutOfRange { .. } => "index_out_of_range",
            Error::ZeroScale(_) => "zero_scale",
            Error::Inconsistent(_) => "internal_inconsistency",
            Error::InvalidTransform { .. } => "invalid_transform",
            Error::Parse { .. } => "parse_error",
            Error::ColumnNotFound(_) => "column_not_found",
            Error::Io(_) => "io_error",
        }
    }

    /// True for errors caused by the data being unusable for the requested
    /// statistic, as opposed to malformed input or bad arguments.
    pub fn is_degenerate_data(&self) -> bool {
        matches!(
            self,
            Error::LengthMismatch { .. }
                | Error::TooFewObservations(_)
                | Error::NonFiniteValue { .. }
                | Error::EmptySequence
                | Error::ZeroVariance(_)
                | Error::OutOfRange(_)
                | Error::IndexOutOfRange { .. }
                | Error::Inconsistent(_)
        )
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
