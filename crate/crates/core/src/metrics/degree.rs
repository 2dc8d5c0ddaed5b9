use crate::error::{Error, Result};
use crate::network::ThresholdGraph;

use super::mean_u64;

#[derive(Debug, Clone, PartialEq)]
pub struct DegreeStats {
    pub mean: f64,
    pub max: usize,
    pub per_node: Vec<usize>,
}

pub fn degree_stats(g: &ThresholdGraph) -> DegreeStats {
    let per_node: Vec<usize> = (0..g.n()).map(|i| g.degree(i)).collect();
    let total: usize = per_node.iter().sum();
    let mean = if per_node.is_empty() {
        0.0
    } else {
        total as f64 / per_node.len() as f64
    };
    DegreeStats {
        mean,
        max: per_node.iter().copied().max().unwrap_or(0),
        per_node,
    }
}

/// `k_i^h`: sum of degrees over nodes at geodesic distance exactly `h - 1`
/// from `i`. Only `h` in `{2, 3}` is supported.
pub fn hierarchical_degree(g: &ThresholdGraph, h: usize) -> Result<(f64, Vec<u64>)> {
    let n = g.n();
    let per_node: Vec<u64> = match h {
        2 => (0..n)
            .map(|i| g.neighbors(i).iter().map(|&j| g.degree(j as usize) as u64).sum())
            .collect(),
        3 => {
            let mut mark = vec![usize::MAX; n];
            (0..n)
                .map(|i| {
                    mark[i] = i;
                    for &j in g.neighbors(i) {
                        mark[j as usize] = i;
                    }
                    let mut sum = 0;
                    for &j in g.neighbors(i) {
                        for &l in g.neighbors(j as usize) {
                            let l = l as usize;
                            if mark[l] != i {
                                mark[l] = i;
                                sum += g.degree(l) as u64;
                            }
                        }
                    }
                    sum
                })
                .collect()
        }
        other => return Err(Error::HierarchyLevel(other)),
    };
    Ok((mean_u64(&per_node), per_node))
}
