use std::path::PathBuf;

use thiserror::Error;

use crate::solver::SolveReport;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("region has no member pixels")]
    EmptyRegion,

    #[error("region pixel ({x}, {y}) touches the image border")]
    BorderViolation { x: usize, y: usize },

    #[error("guidance source undefined at required neighbor ({x}, {y})")]
    MissingNeighborValue { x: usize, y: usize },

    #[error("dimension mismatch: expected {expected:?}, found {found:?}")]
    DimensionMismatch {
        expected: (usize, usize),
        found: (usize, usize),
    },

    #[error("invalid image: {0}")]
    InvalidImage(String),

    #[error(
        "solver did not converge after {} iterations (relative residual {:.3e})",
        .0.iterations,
        .0.relative_residual
    )]
    NotConverged(SolveReport),

    #[error("placement at offset ({dx}, {dy}) puts region outside the target interior")]
    PlacementOutOfBounds { dx: i64, dy: i64 },

    #[error("instance mask has no member pixels")]
    EmptyMask,

    #[error("transform left the ROI mask empty")]
    DegenerateTransform,

    #[error("patch {patch:?} does not fit inside target {target:?} with a 1-pixel margin")]
    PatchTooLarge {
        patch: (usize, usize),
        target: (usize, usize),
    },

    #[error("no valid placement found after {retries} attempts")]
    NoValidPlacement { retries: usize },

    #[error("pasted region overlaps existing instance {instance}")]
    OverlapViolation { instance: usize },

    #[error("dataset contains no non-empty instance masks")]
    NoDonorInstances,

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("unsupported image format in {path}: {reason}")]
    UnsupportedFormat { path: PathBuf, reason: String },

    #[error("cannot decode {path}: {reason}")]
    Decode { path: PathBuf, reason: String },

    #[error("manifest schema violation{}: field `{field}`: {message}", match .index { Some(i) => format!(" in entry {i}"), None => String::new() })]
    SchemaViolation {
        index: Option<usize>,
        field: String,
        message: String,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn schema(index: Option<usize>, field: &str, message: impl Into<String>) -> Self {
        Error::SchemaViolation {
            index,
            field: field.to_string(),
            message: message.into(),
        }
    }
}
