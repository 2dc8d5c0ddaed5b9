use crate::network::ThresholdGraph;

use super::bits::BitRows;
use super::mean_sorted;

/// Local clustering `2 e_i / (k_i (k_i - 1))` and its node average.
/// Neighbour-set intersections run on bitset rows. The average sums the
/// local values in sorted order, so it does not depend on node labels.
pub fn clustering(g: &ThresholdGraph) -> (f64, Vec<f64>) {
    clustering_on(g, &BitRows::new(g))
}

pub(super) fn clustering_on(g: &ThresholdGraph, rows: &BitRows) -> (f64, Vec<f64>) {
    let n = g.n();
    let row = |i: usize| rows.row(i);
    let cc: Vec<f64> = (0..n)
        .map(|i| {
            let k = g.degree(i);
            if k < 2 {
                return 0.0;
            }
            let ri = row(i);
            let twice_e: u64 = g
                .neighbors(i)
                .iter()
                .map(|&j| {
                    row(j as usize)
                        .iter()
                        .zip(ri)
                        .map(|(a, b)| (a & b).count_ones() as u64)
                        .sum::<u64>()
                })
                .sum();
            // every neighbour edge is seen from both ends
            let e = twice_e / 2;
            2.0 * e as f64 / (k * (k - 1)) as f64
        })
        .collect();
    (mean_sorted(&cc), cc)
}
