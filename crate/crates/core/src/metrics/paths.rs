//! All-pairs BFS: average path length, betweenness, geodesic rings.

use std::collections::VecDeque;

use crate::network::ThresholdGraph;

use super::bits::{ones, BitRows};
use super::MetricOptions;

pub(super) struct Scan {
    /// Sum of finite geodesic distances over ordered pairs.
    pub dist_sum: u64,
    /// Ordered pairs with no path.
    pub unreachable: u64,
    /// Sum of degrees at distance 1 / 2 from each node.
    pub ring2: Vec<u64>,
    pub ring3: Vec<u64>,
    /// Unnormalized betweenness over ordered pairs.
    pub between: Vec<f64>,
}

/// One BFS per source with Brandes dependency accumulation. Sources are
/// processed in index order so floating sums are reproducible.
pub(super) fn scan_all(g: &ThresholdGraph, with_betweenness: bool) -> Scan {
    let n = g.n();
    let mut scan = Scan {
        dist_sum: 0,
        unreachable: 0,
        ring2: vec![0; n],
        ring3: vec![0; n],
        between: vec![0.0; n],
    };
    let mut dist = vec![u32::MAX; n];
    let mut sigma = vec![0.0f64; n];
    let mut delta = vec![0.0f64; n];
    let mut order = Vec::with_capacity(n);
    let mut queue = VecDeque::with_capacity(n);
    for s in 0..n {
        dist.fill(u32::MAX);
        sigma.fill(0.0);
        order.clear();
        dist[s] = 0;
        sigma[s] = 1.0;
        queue.push_back(s);
        while let Some(v) = queue.pop_front() {
            order.push(v);
            let dv = dist[v];
            match dv {
                1 => scan.ring2[s] += g.degree(v) as u64,
                2 => scan.ring3[s] += g.degree(v) as u64,
                _ => {}
            }
            scan.dist_sum += dv as u64;
            for &w in g.neighbors(v) {
                let w = w as usize;
                if dist[w] == u32::MAX {
                    dist[w] = dv + 1;
                    queue.push_back(w);
                }
                if dist[w] == dv + 1 {
                    sigma[w] += sigma[v];
                }
            }
        }
        scan.unreachable += (n - order.len()) as u64;
        if !with_betweenness {
            continue;
        }
        for &w in &order {
            delta[w] = 0.0;
        }
        for &w in order.iter().rev() {
            let dw = dist[w];
            if dw == 0 {
                continue;
            }
            let coeff = (1.0 + delta[w]) / sigma[w];
            for &v in g.neighbors(w) {
                let v = v as usize;
                if dist[v] + 1 == dw {
                    delta[v] += sigma[v] * coeff;
                }
            }
            scan.between[w] += delta[w];
        }
    }
    scan
}

/// Same counts as [`scan_all`] without betweenness, using level-synchronous
/// BFS over bit rows: each level is the union of its predecessors' rows.
pub(super) fn scan_counts(g: &ThresholdGraph, rows: &BitRows) -> Scan {
    let n = g.n();
    let words = rows.words();
    let mut scan = Scan {
        dist_sum: 0,
        unreachable: 0,
        ring2: vec![0; n],
        ring3: vec![0; n],
        between: Vec::new(),
    };
    let mut visited = vec![0u64; words];
    let mut frontier = vec![0u64; words];
    let mut next = vec![0u64; words];
    for s in 0..n {
        visited.fill(0);
        frontier.fill(0);
        visited[s / 64] |= 1 << (s % 64);
        frontier[s / 64] |= 1 << (s % 64);
        let mut reached = 1u64;
        let mut d = 0u64;
        loop {
            next.fill(0);
            for v in ones(&frontier) {
                for (x, r) in next.iter_mut().zip(rows.row(v)) {
                    *x |= r;
                }
            }
            let mut count = 0u64;
            for (x, seen) in next.iter_mut().zip(visited.iter_mut()) {
                *x &= !*seen;
                *seen |= *x;
                count += x.count_ones() as u64;
            }
            if count == 0 {
                break;
            }
            d += 1;
            reached += count;
            scan.dist_sum += d * count;
            if d <= 2 {
                let ring: u64 = ones(&next).map(|v| g.degree(v) as u64).sum();
                if d == 1 {
                    scan.ring2[s] = ring;
                } else {
                    scan.ring3[s] = ring;
                }
            }
            std::mem::swap(&mut frontier, &mut next);
        }
        scan.unreachable += n as u64 - reached;
    }
    scan
}

pub(super) fn path_length_from(scan: &Scan, n: usize, opts: &MetricOptions) -> f64 {
    if n < 2 {
        return 0.0;
    }
    let total = scan.dist_sum + scan.unreachable * opts.unreachable.distance(n);
    total as f64 / (n * (n - 1)) as f64
}

/// The node average uses the identity that the betweenness of all nodes
/// sums to the number of interior nodes over all geodesics, i.e. the sum of
/// `d(s, t) - 1` over reachable ordered pairs. That sum is an exact integer,
/// so the average does not depend on node order.
pub(super) fn betweenness_from(scan: &Scan, n: usize) -> (f64, Vec<f64>) {
    let norm = (n * n) as f64;
    let b: Vec<f64> = scan.between.iter().map(|&v| v / norm).collect();
    if n == 0 {
        return (0.0, b);
    }
    let reachable = (n * (n - 1)) as u64 - scan.unreachable;
    let interior = scan.dist_sum - reachable;
    (interior as f64 / (n * n * n) as f64, b)
}

/// Average geodesic distance over ordered pairs, unreachable pairs charged
/// `n`. Zero for graphs with fewer than two nodes.
pub fn avg_path_length(g: &ThresholdGraph) -> f64 {
    avg_path_length_with(g, &MetricOptions::default())
}

pub fn avg_path_length_with(g: &ThresholdGraph, opts: &MetricOptions) -> f64 {
    path_length_from(&scan_counts(g, &BitRows::new(g)), g.n(), opts)
}

/// `b_i = (1/n^2) * sum over ordered pairs (j, k), j != k, both != i, of
/// n_jk(i) / n_jk`; returns the node average and the per-node values.
pub fn betweenness(g: &ThresholdGraph) -> (f64, Vec<f64>) {
    betweenness_from(&scan_all(g, true), g.n())
}
