use std::path::PathBuf;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("contour needs at least 3 points, got {0}")]
    TooFewPoints(usize),

    #[error("contour points {0} and {1} are identical")]
    DuplicatePoint(usize, usize),

    #[error("non-finite coordinate at point {0}")]
    NonFinite(usize),

    #[error("all contour points coincide; distances cannot be normalized")]
    DegenerateContour,

    #[error("invalid shape spec: {0}")]
    InvalidShape(String),

    #[error("invalid perturbation: {0}")]
    InvalidPerturbation(String),

    #[error("image has no foreground pixels")]
    EmptyImage,

    #[error("image has {0} foreground components, expected exactly one")]
    MultipleComponents(usize),

    #[error("traced boundary has {0} pixels, need at least 3")]
    BoundaryTooShort(usize),

    #[error("threshold {t} out of range for {mode} mode")]
    ThresholdRange { t: f64, mode: &'static str },

    #[error("invalid sweep plan: {0}")]
    InvalidPlan(String),

    #[error("invalid weight matrix: {0}")]
    InvalidMatrix(String),

    #[error("hierarchy level {0} not supported (use 2 or 3)")]
    HierarchyLevel(usize),

    #[error("curvature needs at least 8 points, got {0}")]
    CurvatureTooShort(usize),

    #[error("invalid smoothing scale {0}")]
    InvalidSigma(f64),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("invalid dataset: {0}")]
    InvalidDataset(String),

    #[error("class {class:?} has {count} samples, need at least {needed}")]
    ClassTooSmall {
        class: String,
        count: usize,
        needed: usize,
    },

    #[error("invalid classifier setting: {0}")]
    InvalidClassifier(String),

    #[error("parse error in {origin} line {line}: {msg}")]
    Parse {
        origin: String,
        line: usize,
        msg: String,
    },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}
