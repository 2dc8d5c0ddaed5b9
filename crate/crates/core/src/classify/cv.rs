use std::fmt;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::stats::{mean, sample_std};

use super::{Classifier, LabeledDataset, MinMaxScaler};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CvConfig {
    pub folds: usize,
    pub repeats: usize,
    pub seed: u64,
    /// Min–max scaling fitted on the training folds.
    pub scale: bool,
}

impl Default for CvConfig {
    fn default() -> Self {
        Self {
            folds: 10,
            repeats: 100,
            seed: 0,
            scale: true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AccuracyReport {
    pub classifier: String,
    /// Percent.
    pub mean_accuracy: f64,
    /// Percent, sample standard deviation over repeats.
    pub std_dev: f64,
    pub n_folds: usize,
    pub n_repeats: usize,
    pub seed: u64,
    pub scaled: bool,
    pub classes: Vec<String>,
    /// `confusion[true][predicted]`, summed over repeats.
    pub confusion: Vec<Vec<u64>>,
    pub per_repeat: Vec<f64>,
}

impl AccuracyReport {
    pub fn table_header() -> &'static str {
        "classifier\tfolds\trepeats\tscaled\taccuracy"
    }

    pub fn table_row(&self) -> String {
        format!(
            "{}\t{}\t{}\t{}\t{}",
            self.classifier, self.n_folds, self.n_repeats, self.scaled, self
        )
    }
}

impl fmt::Display for AccuracyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:.2} ± {:.2}", self.mean_accuracy, self.std_dev)
    }
}

/// Stratified fold ids for one repeat. Within each class the members are
/// shuffled and dealt round-robin; the dealing position carries over
/// between classes so fold sizes stay balanced.
pub fn fold_assignment(targets: &[usize], n_classes: usize, folds: usize, seed: u64, repeat: u64) -> Vec<usize> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(repeat);
    let mut fold = vec![0; targets.len()];
    let mut offset = 0;
    for c in 0..n_classes {
        let mut members: Vec<usize> = (0..targets.len()).filter(|&i| targets[i] == c).collect();
        members.shuffle(&mut rng);
        for (j, &i) in members.iter().enumerate() {
            fold[i] = (offset + j) % folds;
        }
        offset = (offset + members.len()) % folds;
    }
    fold
}

type Prep = Box<dyn Fn(&[f64]) -> Vec<f64>>;

fn run_repeat(
    data: &LabeledDataset,
    clf: &dyn Classifier,
    cfg: &CvConfig,
    repeat: usize,
) -> Result<(usize, Vec<Vec<u64>>)> {
    let nc = data.classes().len();
    let targets = data.targets();
    let rows = data.rows();
    let fold = fold_assignment(targets, nc, cfg.folds, cfg.seed, repeat as u64);
    let mut confusion = vec![vec![0u64; nc]; nc];
    let mut correct = 0;
    for f in 0..cfg.folds {
        let (test_idx, train_idx): (Vec<usize>, Vec<usize>) = (0..rows.len()).partition(|&i| fold[i] == f);
        if test_idx.is_empty() {
            continue;
        }
        let train_raw: Vec<&[f64]> = train_idx.iter().map(|&i| rows[i]).collect();
        let prep: Prep = if cfg.scale {
            let scaler = MinMaxScaler::fit(&train_raw);
            Box::new(move |r| scaler.transform(r))
        } else {
            Box::new(|r| r.to_vec())
        };
        let train: Vec<Vec<f64>> = train_raw.iter().map(|r| prep(r)).collect();
        let train_t: Vec<usize> = train_idx.iter().map(|&i| targets[i]).collect();
        let queries: Vec<Vec<f64>> = test_idx.iter().map(|&i| prep(rows[i])).collect();
        let pred = clf.fit_predict(&train, &train_t, nc, &queries)?;
        for (&i, &p) in test_idx.iter().zip(&pred) {
            confusion[targets[i]][p] += 1;
            correct += usize::from(targets[i] == p);
        }
    }
    Ok((correct, confusion))
}

/// Repeated stratified n-fold cross-validation. Repeats run in parallel;
/// repeat `r` draws its folds from stream `r` of the seeded generator, so the
/// result does not depend on scheduling.
pub fn cross_validate(data: &LabeledDataset, clf: &dyn Classifier, cfg: &CvConfig) -> Result<AccuracyReport> {
    if cfg.folds < 2 {
        return Err(Error::InvalidClassifier(format!("need at least 2 folds, got {}", cfg.folds)));
    }
    if cfg.repeats == 0 {
        return Err(Error::InvalidClassifier("need at least 1 repeat".into()));
    }
    for (c, n) in data.class_counts().into_iter().enumerate() {
        if n < cfg.folds {
            return Err(Error::ClassTooSmall {
                class: data.classes()[c].clone(),
                count: n,
                needed: cfg.folds,
            });
        }
    }
    let results: Vec<(usize, Vec<Vec<u64>>)> = (0..cfg.repeats)
        .into_par_iter()
        .map(|r| run_repeat(data, clf, cfg, r))
        .collect::<Result<_>>()?;
    let nc = data.classes().len();
    let mut confusion = vec![vec![0u64; nc]; nc];
    let mut per_repeat = Vec::with_capacity(cfg.repeats);
    for (correct, conf) in &results {
        per_repeat.push(100.0 * *correct as f64 / data.len() as f64);
        for (row, add) in confusion.iter_mut().zip(conf) {
            for (a, b) in row.iter_mut().zip(add) {
                *a += b;
            }
        }
    }
    Ok(AccuracyReport {
        classifier: clf.name(),
        mean_accuracy: mean(&per_repeat),
        std_dev: sample_std(&per_repeat),
        n_folds: cfg.folds,
        n_repeats: cfg.repeats,
        seed: cfg.seed,
        scaled: cfg.scale,
        classes: data.classes().to_vec(),
        confusion,
        per_repeat,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::ClassifierSpec;

    fn separable() -> LabeledDataset {
        let mut rows = Vec::new();
        let mut labels = Vec::new();
        for i in 0..12 {
            rows.push(vec![i as f64 * 0.01, 1.0]);
            labels.push("left");
            rows.push(vec![5.0 + i as f64 * 0.01, 0.0]);
            labels.push("right");
        }
        LabeledDataset::from_rows(rows, &labels).unwrap()
    }

    #[test]
    fn folds_are_stratified_and_balanced() {
        let targets: Vec<usize> = (0..23).map(|i| i % 3).collect();
        let f = fold_assignment(&targets, 3, 5, 9, 0);
        let mut sizes = [0; 5];
        for &x in &f {
            sizes[x] += 1;
        }
        assert!(sizes.iter().max().unwrap() - sizes.iter().min().unwrap() <= 1);
        for c in 0..3 {
            let mut per = [0; 5];
            for i in (0..23).filter(|&i| targets[i] == c) {
                per[f[i]] += 1;
            }
            assert!(per.iter().max().unwrap() - per.iter().min().unwrap() <= 1);
        }
        assert_ne!(f, fold_assignment(&targets, 3, 5, 9, 1));
        assert_eq!(f, fold_assignment(&targets, 3, 5, 9, 0));
    }

    #[test]
    fn separable_is_perfect() {
        let ds = separable();
        for folds in [2, 3, 12] {
            let cfg = CvConfig { folds, repeats: 5, seed: 1, scale: true };
            let r = cross_validate(&ds, &ClassifierSpec::Knn { k: 1 }, &cfg).unwrap();
            assert_eq!((r.mean_accuracy, r.std_dev), (100.0, 0.0));
            assert_eq!(r.confusion, vec![vec![60, 0], vec![0, 60]]);
            assert_eq!(r.to_string(), "100.00 ± 0.00");
        }
    }

    #[test]
    fn deterministic_and_rejections() {
        let ds = separable();
        let cfg = CvConfig { folds: 4, repeats: 7, seed: 3, scale: false };
        let a = cross_validate(&ds, &ClassifierSpec::NaiveBayes, &cfg).unwrap();
        let b = cross_validate(&ds, &ClassifierSpec::NaiveBayes, &cfg).unwrap();
        assert_eq!(a, b);
        let too_many = CvConfig { folds: 13, ..cfg };
        assert!(matches!(
            cross_validate(&ds, &ClassifierSpec::NaiveBayes, &too_many),
            Err(Error::ClassTooSmall { count: 12, needed: 13, .. })
        ));
        assert!(cross_validate(&ds, &ClassifierSpec::NaiveBayes, &CvConfig { folds: 1, ..cfg }).is_err());
    }
}
