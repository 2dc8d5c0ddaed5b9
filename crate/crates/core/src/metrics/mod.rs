//! Structural measurements of a thresholded graph.
//!
//! Conventions for degenerate cases:
//! - `cc_i = 0` when `k_i < 2`;
//! - an unreachable ordered pair contributes distance `n` to the average
//!   path length (one more than the longest possible geodesic) unless
//!   overridden through [`MetricOptions`];
//! - assortativity is `0` when its denominator vanishes (no edges or a
//!   regular graph);
//! - betweenness sums over ordered pairs and is divided by `n^2`.

mod assortativity;
mod bits;
mod clustering;
mod degree;
mod paths;

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::network::{Mode, ThresholdGraph};

pub use assortativity::assortativity;
pub use clustering::clustering;
pub use degree::{degree_stats, hierarchical_degree, DegreeStats};
pub use paths::{avg_path_length, avg_path_length_with, betweenness};

/// Distance charged to an ordered pair with no connecting path.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Unreachable {
    /// `n`, one more than the longest possible geodesic.
    #[default]
    NodeCount,
    Fixed(u64),
}

impl Unreachable {
    fn distance(self, n: usize) -> u64 {
        match self {
            Unreachable::NodeCount => n as u64,
            Unreachable::Fixed(d) => d,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct MetricOptions {
    #[serde(default)]
    pub unreachable: Unreachable,
}

/// Graph-level measurements at one threshold.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MeasurementSet {
    pub threshold: f64,
    pub mode: Mode,
    pub avg_degree: f64,
    pub max_degree: f64,
    pub hier_degree_2: f64,
    pub hier_degree_3: f64,
    pub avg_clustering: f64,
    pub avg_path_length: f64,
    pub assortativity: f64,
    pub avg_betweenness: f64,
}

impl MeasurementSet {
    /// The seven generalized-descriptor values, in descriptor order.
    pub fn phi_values(&self) -> [f64; 7] {
        [
            self.avg_degree,
            self.hier_degree_2,
            self.hier_degree_3,
            self.avg_clustering,
            self.avg_path_length,
            self.assortativity,
            self.avg_betweenness,
        ]
    }
}

/// Per-node measurement vectors, indexed like the contour points.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct NodeProfile {
    pub degree: Vec<usize>,
    pub clustering: Vec<f64>,
    pub betweenness: Vec<f64>,
    pub hier_degree_2: Vec<u64>,
    pub hier_degree_3: Vec<u64>,
}

impl NodeProfile {
    /// CSV with header `node,k,cc,b,k2,k3`.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("node,k,cc,b,k2,k3\n");
        for i in 0..self.degree.len() {
            let _ = writeln!(
                s,
                "{i},{},{},{},{},{}",
                self.degree[i],
                self.clustering[i],
                self.betweenness[i],
                self.hier_degree_2[i],
                self.hier_degree_3[i]
            );
        }
        s
    }
}

pub(crate) fn mean_u64(values: &[u64]) -> f64 {
    if values.is_empty() {
        return 0.0;
    }
    values.iter().sum::<u64>() as f64 / values.len() as f64
}

pub(crate) fn mean_sorted(values: &[f64]) -> f64 {
    if values.is_empty() {
        return 0.0;
    }
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    v.iter().sum::<f64>() / v.len() as f64
}

/// Graph-level measurements only. Skips per-node betweenness, which the
/// average does not need, and runs the distance scan on bit rows. Equal to
/// the scalar half of [`measure_all`].
pub fn measure_summary(g: &ThresholdGraph, opts: &MetricOptions) -> MeasurementSet {
    let n = g.n();
    let deg = degree_stats(g);
    let rows = bits::BitRows::new(g);
    let (avg_clustering, _) = clustering::clustering_on(g, &rows);
    let scan = paths::scan_counts(g, &rows);
    MeasurementSet {
        threshold: g.threshold(),
        mode: g.mode(),
        avg_degree: deg.mean,
        max_degree: deg.max as f64,
        hier_degree_2: mean_u64(&scan.ring2),
        hier_degree_3: mean_u64(&scan.ring3),
        avg_clustering,
        avg_path_length: paths::path_length_from(&scan, n, opts),
        assortativity: assortativity(g),
        avg_betweenness: paths::betweenness_from(&scan, n).0,
    }
}

/// Everything at once: one BFS per source serves path lengths,
/// betweenness and both hierarchical degrees. Scalars are bit-identical to
/// the standalone functions.
pub fn measure_all(g: &ThresholdGraph, opts: &MetricOptions) -> (MeasurementSet, NodeProfile) {
    let n = g.n();
    let deg = degree_stats(g);
    let (avg_clustering, cc) = clustering(g);
    let scan = paths::scan_all(g, true);
    let avg_path_length = paths::path_length_from(&scan, n, opts);
    let (avg_betweenness, b) = paths::betweenness_from(&scan, n);
    let set = MeasurementSet {
        threshold: g.threshold(),
        mode: g.mode(),
        avg_degree: deg.mean,
        max_degree: deg.max as f64,
        hier_degree_2: mean_u64(&scan.ring2),
        hier_degree_3: mean_u64(&scan.ring3),
        avg_clustering,
        avg_path_length,
        assortativity: assortativity(g),
        avg_betweenness,
    };
    let profile = NodeProfile {
        degree: deg.per_node,
        clustering: cc,
        betweenness: b,
        hier_degree_2: scan.ring2,
        hier_degree_3: scan.ring3,
    };
    (set, profile)
}
