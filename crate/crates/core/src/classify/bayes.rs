use serde::{Deserialize, Serialize};

use crate::descriptor::FeatureVector;
use crate::error::{Error, Result};

use super::LabeledDataset;

pub const VARIANCE_FLOOR: f64 = 1e-9;

/// Per-class diagonal Gaussian model.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NbModel {
    classes: Vec<String>,
    log_prior: Vec<f64>,
    mean: Vec<Vec<f64>>,
    var: Vec<Vec<f64>>,
}

impl NbModel {
    pub fn classes(&self) -> &[String] {
        &self.classes
    }

    pub fn dim(&self) -> usize {
        self.mean.first().map_or(0, Vec::len)
    }

    pub fn mean(&self, class: usize) -> &[f64] {
        &self.mean[class]
    }

    pub fn variance(&self, class: usize) -> &[f64] {
        &self.var[class]
    }

    pub fn log_posterior(&self, q: &[f64]) -> Vec<f64> {
        (0..self.mean.len())
            .map(|c| {
                let mut s = self.log_prior[c];
                for ((&x, &m), &v) in q.iter().zip(&self.mean[c]).zip(&self.var[c]) {
                    s -= 0.5 * ((2.0 * std::f64::consts::PI * v).ln() + (x - m) * (x - m) / v);
                }
                s
            })
            .collect()
    }

    pub(crate) fn predict_id(&self, q: &[f64]) -> usize {
        let lp = self.log_posterior(q);
        let mut best = 0;
        for c in 1..lp.len() {
            if lp[c] > lp[best] {
                best = c;
            }
        }
        best
    }
}

pub(crate) fn fit_rows<R: AsRef<[f64]>>(
    rows: &[R],
    targets: &[usize],
    n_classes: usize,
    min_per_class: usize,
) -> Result<NbModel> {
    let dim = rows.first().map_or(0, |r| r.as_ref().len());
    let mut count = vec![0usize; n_classes];
    let mut mean = vec![vec![0.0; dim]; n_classes];
    for (r, &t) in rows.iter().zip(targets) {
        count[t] += 1;
        for (m, x) in mean[t].iter_mut().zip(r.as_ref()) {
            *m += x;
        }
    }
    for (c, &n) in count.iter().enumerate() {
        if n < min_per_class {
            return Err(Error::ClassTooSmall {
                class: c.to_string(),
                count: n,
                needed: min_per_class,
            });
        }
        mean[c].iter_mut().for_each(|m| *m /= n as f64);
    }
    let mut var = vec![vec![0.0; dim]; n_classes];
    for (r, &t) in rows.iter().zip(targets) {
        for ((v, x), m) in var[t].iter_mut().zip(r.as_ref()).zip(&mean[t]) {
            *v += (x - m) * (x - m);
        }
    }
    for (c, &n) in count.iter().enumerate() {
        var[c].iter_mut().for_each(|v| *v = (*v / n as f64).max(VARIANCE_FLOOR));
    }
    let total = rows.len() as f64;
    Ok(NbModel {
        classes: (0..n_classes).map(|c| c.to_string()).collect(),
        log_prior: count.iter().map(|&n| (n as f64 / total).ln()).collect(),
        mean,
        var,
    })
}

/// Gaussian naive Bayes on raw features. Every class needs at least two
/// samples.
pub fn nb_fit(train: &LabeledDataset) -> Result<NbModel> {
    for (c, n) in train.class_counts().into_iter().enumerate() {
        if n < 2 {
            return Err(Error::ClassTooSmall {
                class: train.classes()[c].clone(),
                count: n,
                needed: 2,
            });
        }
    }
    let mut model = fit_rows(&train.rows(), train.targets(), train.classes().len(), 2)?;
    model.classes = train.classes().to_vec();
    Ok(model)
}

pub fn nb_predict(model: &NbModel, query: &FeatureVector) -> Result<String> {
    if query.values.len() != model.dim() {
        return Err(Error::DimensionMismatch {
            expected: model.dim(),
            got: query.values.len(),
        });
    }
    Ok(model.classes[model.predict_id(&query.values)].clone())
}
