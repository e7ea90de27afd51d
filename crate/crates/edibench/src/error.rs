//! Crate-wide error type.

use std::path::PathBuf;

/// Errors produced by any edibench operation.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("failed to read {path}: {reason}")]
    Read { path: PathBuf, reason: String },

    #[error("failed to write {path}: {reason}")]
    Write { path: PathBuf, reason: String },

    #[error("unsupported image format in {path}: {reason}")]
    Format { path: PathBuf, reason: String },

    #[error("invalid image: {0}")]
    InvalidImage(String),

    #[error("image dimensions {a_width}x{a_height} and {b_width}x{b_height} do not match")]
    DimensionMismatch {
        a_width: usize,
        a_height: usize,
        b_width: usize,
        b_height: usize,
    },

    #[error("image is {width}x{height}, operation needs at least {min_width}x{min_height}")]
    TooSmall {
        width: usize,
        height: usize,
        min_width: usize,
        min_height: usize,
    },

    #[error("operation requires a single-channel image, got {0} channels")]
    NotSingleChannel(usize),

    #[error("unknown interpolation method `{0}`")]
    UnknownMethod(String),

    #[error("unknown metric `{0}`")]
    UnknownMetric(String),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("region x0={x0} y0={y0} w={w} h={h} lies outside a {width}x{height} image")]
    RoiOutOfBounds {
        x0: usize,
        y0: usize,
        w: usize,
        h: usize,
        width: usize,
        height: usize,
    },

    #[error("reference edge map has no edges")]
    EmptyReferenceEdges,

    #[error("no usable images found in {0}")]
    NoUsableImages(PathBuf),

    #[error("download failed for {url}: {reason}")]
    Fetch { url: String, reason: String },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn read(path: impl Into<PathBuf>, err: impl std::fmt::Display) -> Self {
        Error::Read {
            path: path.into(),
            reason: err.to_string(),
        }
    }

    pub(crate) fn write(path: impl Into<PathBuf>, err: impl std::fmt::Display) -> Self {
        Error::Write {
            path: path.into(),
            reason: err.to_string(),
        }
    }

    pub(crate) fn format(path: impl Into<PathBuf>, reason: impl Into<String>) -> Self {
        Error::Format {
            path: path.into(),
            reason: reason.into(),
        }
    }
}
