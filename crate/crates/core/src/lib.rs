//! Shape boundaries modelled as dynamically thresholded proximity networks.
//!
//! A closed contour becomes a complete weighted graph whose edge weights are
//! normalized Euclidean distances. Thresholding that graph at a series of
//! values yields a sequence of unweighted graphs; structural measurements
//! taken along the sweep form a shape descriptor that is invariant to
//! rotation, scale and start point.
//!
//! Pipeline:
//! [`shapes`] -> [`network`] -> [`metrics`] -> [`descriptor`] -> [`classify`],
//! with [`curvature`] alongside for per-point comparisons.

pub mod classify;
pub mod curvature;
pub mod descriptor;
mod error;
pub mod metrics;
pub mod network;
pub mod shapes;
pub mod stats;

pub use classify::{
    cross_validate, knn_classify, nb_fit, nb_predict, AccuracyReport, Classifier, ClassifierSpec,
    CvConfig, LabeledDataset, NbModel,
};
pub use curvature::{curvature_signal, normalize_signal, CurvatureSignal};
pub use descriptor::{
    extract_phi, extract_single, extract_varphi, sweep_measurements, DescriptorKind,
    FeatureVector, Layout,
};
pub use error::{Error, Result};
pub use metrics::{measure_all, measure_summary, MeasurementSet, MetricOptions, NodeProfile, Unreachable};
pub use network::{build_weighted, sweep, threshold, Mode, SweepPlan, ThresholdGraph, WeightedNet};
pub use shapes::{
    generate_shape, interpolate, perturb, resample, trace_boundary, Contour, Perturbation, Point,
    Raster, ShapeKind, ShapeSpec,
};
