use crate::descriptor::FeatureVector;
use crate::error::{Error, Result};

use super::{LabeledDataset, MinMaxScaler};

fn sq_dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

/// Majority vote among the `k` nearest rows. Equal distances resolve to
/// the lower index, equal votes to the class met first among the neighbours.
pub(crate) fn vote<R: AsRef<[f64]>>(
    train: &[R],
    targets: &[usize],
    n_classes: usize,
    q: &[f64],
    k: usize,
) -> usize {
    if k == 1 {
        let mut best = (f64::INFINITY, 0);
        for (i, r) in train.iter().enumerate() {
            let d = sq_dist(r.as_ref(), q);
            if d < best.0 {
                best = (d, i);
            }
        }
        return targets[best.1];
    }
    let mut order: Vec<(f64, usize)> = train
        .iter()
        .enumerate()
        .map(|(i, r)| (sq_dist(r.as_ref(), q), i))
        .collect();
    order.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
    let mut votes = vec![0usize; n_classes];
    let mut seen = Vec::with_capacity(k);
    for &(_, i) in &order[..k] {
        let c = targets[i];
        if votes[c] == 0 {
            seen.push(c);
        }
        votes[c] += 1;
    }
    let mut best = seen[0];
    for &c in &seen[1..] {
        if votes[c] > votes[best] {
            best = c;
        }
    }
    best
}

/// k-NN label for `query`, with min–max scaling fitted on `train`.
pub fn knn_classify(train: &LabeledDataset, query: &FeatureVector, k: usize) -> Result<String> {
    if k == 0 || k > train.len() {
        return Err(Error::InvalidClassifier(format!(
            "k = {k} must lie in 1..={}",
            train.len()
        )));
    }
    if query.values.len() != train.dim() {
        return Err(Error::DimensionMismatch {
            expected: train.dim(),
            got: query.values.len(),
        });
    }
    let rows = train.rows();
    let scaler = MinMaxScaler::fit(&rows);
    let scaled: Vec<Vec<f64>> = rows.iter().map(|r| scaler.transform(r)).collect();
    let q = scaler.transform(&query.values);
    let id = vote(&scaled, train.targets(), train.classes().len(), &q, k);
    Ok(train.classes()[id].clone())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn query(ds: &LabeledDataset, values: Vec<f64>) -> FeatureVector {
        FeatureVector {
            values,
            layout: ds.layout().clone(),
            label: None,
            id: None,
        }
    }

    #[test]
    fn exact_match_and_geometry() {
        let ds = LabeledDataset::from_rows(
            vec![vec![0.0, 0.0], vec![0.1, 0.0], vec![1.0, 1.0], vec![0.9, 1.0]],
            &["zero", "zero", "one", "one"],
        )
        .unwrap();
        assert_eq!(knn_classify(&ds, &query(&ds, vec![0.9, 1.0]), 1).unwrap(), "one");
        assert_eq!(knn_classify(&ds, &query(&ds, vec![0.1, 0.1]), 1).unwrap(), "zero");
        assert_eq!(knn_classify(&ds, &query(&ds, vec![0.2, 0.1]), 3).unwrap(), "zero");
        assert!(matches!(
            knn_classify(&ds, &query(&ds, vec![0.0]), 1),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(knn_classify(&ds, &query(&ds, vec![0.0, 0.0]), 5).is_err());
    }

    #[test]
    fn tie_rules() {
        let rows = [vec![1.0], vec![-1.0], vec![3.0], vec![-3.0]];
        // distance tie: lower index wins
        assert_eq!(vote(&rows, &[0, 1, 0, 1], 2, &[0.0], 1), 0);
        assert_eq!(vote(&rows, &[1, 0, 0, 1], 2, &[0.0], 1), 1);
        // vote tie 1:1 -> class of the nearest neighbour first in order
        assert_eq!(vote(&rows, &[1, 0, 0, 1], 2, &[0.0], 2), 1);
        assert_eq!(vote(&rows, &[1, 0, 0, 0], 2, &[0.0], 2), 1);
        assert_eq!(vote(&rows, &[1, 0, 0, 0], 2, &[0.0], 3), 0);
    }

    #[test]
    fn training_set_self_classification() {
        let rows: Vec<Vec<f64>> = (0..30).map(|i| vec![(i * 7 % 11) as f64, (i * 3 % 13) as f64, i as f64]).collect();
        let labels: Vec<&str> = (0..30).map(|i| ["a", "b", "c"][i % 3]).collect();
        let ds = LabeledDataset::from_rows(rows, &labels).unwrap();
        for v in ds.vectors() {
            assert_eq!(knn_classify(&ds, v, 1).unwrap(), v.label.as_deref().unwrap());
        }
    }
}
