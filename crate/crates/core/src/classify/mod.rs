//! Classifiers and repeated stratified cross-validation.

mod bayes;
mod cv;
mod knn;

pub use bayes::{nb_fit, nb_predict, NbModel};
pub use cv::{cross_validate, fold_assignment, AccuracyReport, CvConfig};
pub use knn::knn_classify;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::descriptor::{FeatureVector, Layout};
use crate::error::{Error, Result};

/// Labeled feature vectors sharing one layout. Class ids follow the order
/// in which labels first appear.
#[derive(Debug, Clone)]
pub struct LabeledDataset {
    vectors: Vec<FeatureVector>,
    classes: Vec<String>,
    targets: Vec<usize>,
    dim: usize,
}

impl LabeledDataset {
    pub fn new(vectors: Vec<FeatureVector>) -> Result<Self> {
        let first = vectors
            .first()
            .ok_or_else(|| Error::InvalidDataset("dataset is empty".into()))?;
        let dim = first.values.len();
        let layout: &Layout = &first.layout;
        let mut classes: Vec<String> = Vec::new();
        let mut targets = Vec::with_capacity(vectors.len());
        for (i, v) in vectors.iter().enumerate() {
            if v.values.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: v.values.len(),
                });
            }
            if &v.layout != layout {
                return Err(Error::InvalidDataset(format!(
                    "vector {i} has a different feature layout"
                )));
            }
            if let Some(j) = v.values.iter().position(|x| !x.is_finite()) {
                return Err(Error::InvalidDataset(format!(
                    "vector {i} has a non-finite value at column {j}"
                )));
            }
            let label = v
                .label
                .as_deref()
                .ok_or_else(|| Error::InvalidDataset(format!("vector {i} has no label")))?;
            let id = match classes.iter().position(|c| c == label) {
                Some(id) => id,
                None => {
                    classes.push(label.to_string());
                    classes.len() - 1
                }
            };
            targets.push(id);
        }
        Ok(Self {
            vectors,
            classes,
            targets,
            dim,
        })
    }

    /// Builds a dataset from bare rows and labels, with an anonymous layout.
    pub fn from_rows(rows: Vec<Vec<f64>>, labels: &[&str]) -> Result<Self> {
        if rows.len() != labels.len() {
            return Err(Error::InvalidDataset(format!(
                "{} rows but {} labels",
                rows.len(),
                labels.len()
            )));
        }
        let dim = rows.first().map_or(0, Vec::len);
        let layout = Layout {
            kind: crate::descriptor::DescriptorKind::Single,
            mode: crate::network::Mode::SmallerThan,
            thresholds: Vec::new(),
            measurements: Vec::new(),
        };
        let vectors = rows
            .into_iter()
            .zip(labels)
            .enumerate()
            .map(|(i, (values, l))| FeatureVector {
                values,
                layout: layout.clone(),
                label: Some(l.to_string()),
                id: Some(format!("row{i}")),
            })
            .collect();
        let ds = Self::new(vectors)?;
        debug_assert_eq!(ds.dim, dim);
        Ok(ds)
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vectors(&self) -> &[FeatureVector] {
        &self.vectors
    }

    pub fn classes(&self) -> &[String] {
        &self.classes
    }

    pub fn targets(&self) -> &[usize] {
        &self.targets
    }

    pub fn layout(&self) -> &Layout {
        &self.vectors[0].layout
    }

    pub fn class_counts(&self) -> Vec<usize> {
        let mut counts = vec![0; self.classes.len()];
        for &t in &self.targets {
            counts[t] += 1;
        }
        counts
    }

    /// Same vectors with labels permuted by `perm` (`label[i] <- label[perm[i]]`).
    pub fn relabeled(&self, perm: &[usize]) -> Result<Self> {
        let mut vectors = self.vectors.clone();
        for (v, &p) in vectors.iter_mut().zip(perm) {
            v.label = self.vectors[p].label.clone();
        }
        Self::new(vectors)
    }

    pub(crate) fn rows(&self) -> Vec<&[f64]> {
        self.vectors.iter().map(|v| v.values.as_slice()).collect()
    }
}

/// Per-column min–max rescaler. Constant columns map to 0.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MinMaxScaler {
    min: Vec<f64>,
    span: Vec<f64>,
}

impl MinMaxScaler {
    pub fn fit<R: AsRef<[f64]>>(rows: &[R]) -> Self {
        let dim = rows.first().map_or(0, |r| r.as_ref().len());
        let mut min = vec![f64::INFINITY; dim];
        let mut max = vec![f64::NEG_INFINITY; dim];
        for r in rows {
            for (j, &x) in r.as_ref().iter().enumerate() {
                min[j] = min[j].min(x);
                max[j] = max[j].max(x);
            }
        }
        let span = min.iter().zip(&max).map(|(lo, hi)| hi - lo).collect();
        Self { min, span }
    }

    pub fn transform(&self, row: &[f64]) -> Vec<f64> {
        row.iter()
            .zip(self.min.iter().zip(&self.span))
            .map(|(&x, (&lo, &s))| if s > 0.0 { (x - lo) / s } else { 0.0 })
            .collect()
    }
}

/// A classifier usable inside cross-validation: trains on `train` rows and
/// predicts class ids for `queries`.
pub trait Classifier: Send + Sync {
    fn name(&self) -> String;

    fn fit_predict(
        &self,
        train: &[Vec<f64>],
        targets: &[usize],
        n_classes: usize,
        queries: &[Vec<f64>],
    ) -> Result<Vec<usize>>;
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum ClassifierSpec {
    Knn { k: usize },
    NaiveBayes,
}

impl ClassifierSpec {
    pub fn validate(&self) -> Result<()> {
        match self {
            ClassifierSpec::Knn { k: 0 } => Err(Error::InvalidClassifier("k must be positive".into())),
            _ => Ok(()),
        }
    }
}

impl fmt::Display for ClassifierSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassifierSpec::Knn { k } => write!(f, "knn:{k}"),
            ClassifierSpec::NaiveBayes => f.write_str("nb"),
        }
    }
}

impl FromStr for ClassifierSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let spec = match s.trim() {
            "nb" | "naive_bayes" => ClassifierSpec::NaiveBayes,
            "knn" => ClassifierSpec::Knn { k: 1 },
            other => {
                let k = other
                    .strip_prefix("knn:")
                    .and_then(|k| k.parse().ok())
                    .ok_or_else(|| {
                        Error::InvalidClassifier(format!("{other:?} (expected knn:K or nb)"))
                    })?;
                ClassifierSpec::Knn { k }
            }
        };
        spec.validate()?;
        Ok(spec)
    }
}

impl Classifier for ClassifierSpec {
    fn name(&self) -> String {
        self.to_string()
    }

    fn fit_predict(
        &self,
        train: &[Vec<f64>],
        targets: &[usize],
        n_classes: usize,
        queries: &[Vec<f64>],
    ) -> Result<Vec<usize>> {
        self.validate()?;
        match *self {
            ClassifierSpec::Knn { k } => {
                if k > train.len() {
                    return Err(Error::InvalidClassifier(format!(
                        "k = {k} exceeds {} training samples",
                        train.len()
                    )));
                }
                Ok(queries
                    .iter()
                    .map(|q| knn::vote(train, targets, n_classes, q, k))
                    .collect())
            }
            ClassifierSpec::NaiveBayes => {
                let model = bayes::fit_rows(train, targets, n_classes, 1)?;
                Ok(queries.iter().map(|q| model.predict_id(q)).collect())
            }
        }
    }
}
