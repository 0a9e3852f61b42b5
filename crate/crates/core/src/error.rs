use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("constant coefficient must be {expected}, found {found}")]
    NotNormalized { expected: &'static str, found: String },

    #[error("|z| = {modulus} exceeds the evaluation radius {radius}")]
    OutsideEvalRadius { modulus: f64, radius: f64 },

    #[error("phase jump of {jump:.4} rad at sample {index} (limit pi/2); sampling too coarse")]
    UnwrapJump { index: usize, jump: f64 },

    #[error("zero value at sample {0}; argument undefined")]
    ZeroValue(usize),

    #[error("non-finite value: {0}")]
    NonFinite(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("region not representable as a union of closed disks, segments and points: {0}")]
    Unrepresentable(String),

    #[error("malformed series document: {0}")]
    MalformedSeries(String),

    #[error("could not parse {what} from {input:?}")]
    Parse { what: &'static str, input: String },

    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
