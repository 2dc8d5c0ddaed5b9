//! Dataset plumbing, experiment runner and file formats behind the
//! `contourgraph` command.

pub mod config;
pub mod dataset;
pub mod experiment;
pub mod features;
pub mod output;

pub use config::{DatasetSource, ExperimentConfig, Thresholds};
pub use dataset::{load_dataset, save_dataset};
pub use experiment::{run_experiment, single_threshold_study, sweep_study, Condition, ExperimentOutcome};
