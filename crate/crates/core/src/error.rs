use std::path::PathBuf;

use thiserror::Error;

use crate::units::Unit;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("value {0} is not finite")]
    NonFinite(f64),

    #[error("incompatible units: cannot convert {from} to {to}")]
    IncompatibleUnits { from: Unit, to: Unit },

    #[error("unknown unit tag `{0}`")]
    UnknownUnit(String),

    #[error("unknown series kind `{0}`")]
    UnknownKind(String),

    #[error("invalid period {start}-{end}: start year must precede end year")]
    InvalidPeriod { start: i32, end: i32 },

    #[error("no data in period {start}-{end}")]
    EmptySlice { start: i32, end: i32 },

    #[error("series has no value for year {0}")]
    MissingYear(i32),

    #[error("years must be strictly increasing (year {0} follows {1})")]
    UnorderedYears(i32, i32),

    #[error("duplicate year {0}")]
    DuplicateYear(i32),

    #[error("non-positive value {value} at year {year} for a positive-only series")]
    NonPositiveValue { year: i32, value: f64 },

    #[error("unit {unit} is not valid for series kind {kind}")]
    KindUnitMismatch { kind: String, unit: Unit },

    #[error("expected series kind {expected}, found {found}")]
    KindError { expected: String, found: String },

    #[error("{path}: row {row}: {message}")]
    Parse {
        path: PathBuf,
        row: usize,
        message: String,
    },

    #[error("{path}: missing column `{column}`")]
    Schema { path: PathBuf, column: String },

    #[error("{path}: row {row}: non-positive value {value} for positive-only kind")]
    Domain {
        path: PathBuf,
        row: usize,
        value: f64,
    },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("write failed: {0}")]
    Write(String),

    #[error("manifest: {0}")]
    Manifest(String),

    #[error("need at least {needed} points, got {got}")]
    TooFewPoints { needed: usize, got: usize },

    #[error("interpolated value {value} at year {year} is not positive")]
    NonPositiveResult { year: i32, value: f64 },

    #[error("gap in series between {0} and {1}")]
    Gap(i32, i32),

    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },
}

impl Error {
    pub(crate) fn param(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name,
            reason: reason.into(),
        }
    }
}
