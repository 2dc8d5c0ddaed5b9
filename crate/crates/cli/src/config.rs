use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use contourgraph::shapes::synthetic::SyntheticSpec;
use contourgraph::{ClassifierSpec, CvConfig, DescriptorKind, MetricOptions, Mode, Perturbation, SweepPlan};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Thresholds {
    /// `count` equally spaced values.
    Count(usize),
    List(Vec<f64>),
}

impl Thresholds {
    pub fn plan(&self, mode: Mode) -> Result<SweepPlan> {
        Ok(match self {
            Thresholds::Count(n) => SweepPlan::uniform(*n, mode)?,
            Thresholds::List(ts) => SweepPlan::new(ts.clone(), mode)?,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "source", rename_all = "snake_case")]
pub enum DatasetSource {
    Directory {
        paths: Vec<PathBuf>,
        #[serde(default)]
        skip_bad: bool,
    },
    Synthetic(SyntheticSpec),
}

fn yes() -> bool {
    true
}

/// Everything needed to reproduce one run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub descriptor: DescriptorKind,
    pub mode: Mode,
    pub thresholds: Thresholds,
    pub classifier: ClassifierSpec,
    pub folds: usize,
    pub repeats: usize,
    pub seed: u64,
    /// Min–max scaling fitted on training folds.
    #[serde(default = "yes")]
    pub scale: bool,
    #[serde(default)]
    pub metrics: MetricOptions,
    pub dataset: DatasetSource,
    /// One condition per entry; empty means the unperturbed data.
    #[serde(default)]
    pub perturbations: Vec<Perturbation>,
    /// When set, per-node profiles at this threshold are written for
    /// every shape.
    #[serde(default)]
    pub profile_threshold: Option<f64>,
}

impl ExperimentConfig {
    pub fn new(dataset: DatasetSource) -> Self {
        Self {
            descriptor: DescriptorKind::Phi,
            mode: Mode::SmallerThan,
            thresholds: Thresholds::Count(13),
            classifier: ClassifierSpec::Knn { k: 1 },
            folds: 10,
            repeats: 100,
            seed: 0,
            scale: true,
            metrics: MetricOptions::default(),
            dataset,
            perturbations: Vec::new(),
            profile_threshold: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.descriptor == DescriptorKind::Single {
            bail!("descriptor must be phi or varphi; use single-threshold-study for single thresholds");
        }
        self.plan()?;
        self.classifier.validate()?;
        if self.folds < 2 {
            bail!("folds must be at least 2");
        }
        if self.repeats == 0 {
            bail!("repeats must be at least 1");
        }
        if let DatasetSource::Directory { paths, .. } = &self.dataset {
            if paths.is_empty() {
                bail!("no dataset paths given");
            }
        }
        Ok(())
    }

    pub fn plan(&self) -> Result<SweepPlan> {
        self.thresholds.plan(self.mode)
    }

    pub fn cv(&self) -> CvConfig {
        CvConfig {
            folds: self.folds,
            repeats: self.repeats,
            seed: self.seed,
            scale: self.scale,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("config serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: Self = serde_json::from_str(text).context("invalid experiment config")?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn read(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        Self::from_json(&text).with_context(|| format!("in {}", path.display()))
    }

    /// First 16 hex digits of the SHA-256 of the compact JSON form.
    pub fn hash(&self) -> String {
        let json = serde_json::to_vec(self).expect("config serializes");
        Sha256::digest(&json)[..8].iter().map(|b| format!("{b:02x}")).collect()
    }
}
