//! Normalized distance networks over contour points and their thresholded
//! unweighted graphs.

use std::fmt::{self, Write as _};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::shapes::Contour;

/// Which side of the threshold keeps an edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    /// Edge iff `w < t`.
    #[serde(alias = "lt")]
    SmallerThan,
    /// Edge iff `w > t`.
    #[serde(alias = "gt")]
    GreaterThan,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::SmallerThan => "smaller_than",
            Mode::GreaterThan => "greater_than",
        }
    }

    pub fn short(self) -> &'static str {
        match self {
            Mode::SmallerThan => "lt",
            Mode::GreaterThan => "gt",
        }
    }

    #[inline]
    fn keeps(self, w: f64, t: f64) -> bool {
        match self {
            Mode::SmallerThan => w < t - TIE_EPS,
            Mode::GreaterThan => w > t + TIE_EPS,
        }
    }

    fn check(self, t: f64) -> Result<()> {
        let ok = match self {
            // Values above 1 are allowed and give the complete graph.
            Mode::SmallerThan => t.is_finite() && t >= 0.0,
            Mode::GreaterThan => (0.0..1.0).contains(&t),
        };
        if ok {
            Ok(())
        } else {
            Err(Error::ThresholdRange {
                t,
                mode: self.as_str(),
            })
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "lt" | "smaller_than" => Ok(Mode::SmallerThan),
            "gt" | "greater_than" => Ok(Mode::GreaterThan),
            _ => Err(format!("unknown mode {s:?} (expected lt or gt)")),
        }
    }
}

/// Symmetric matrix of pairwise distances scaled so the largest is 1.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedNet {
    n: usize,
    w: Vec<f64>,
}

impl WeightedNet {
    /// Wraps an existing row-major matrix after checking symmetry, a zero
    /// diagonal and weights in `[0, 1]`.
    pub fn from_matrix(n: usize, w: Vec<f64>) -> Result<Self> {
        if w.len() != n * n {
            return Err(Error::DimensionMismatch {
                expected: n * n,
                got: w.len(),
            });
        }
        for i in 0..n {
            if w[i * n + i] != 0.0 {
                return Err(Error::InvalidMatrix(format!("nonzero diagonal at {i}")));
            }
            for j in i + 1..n {
                let v = w[i * n + j];
                if v != w[j * n + i] {
                    return Err(Error::InvalidMatrix(format!("asymmetric at ({i}, {j})")));
                }
                if !(0.0..=1.0).contains(&v) {
                    return Err(Error::InvalidMatrix(format!("weight {v} at ({i}, {j})")));
                }
            }
        }
        Ok(Self { n, w })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn weight(&self, i: usize, j: usize) -> f64 {
        self.w[i * self.n + j]
    }

    /// Upper-triangle entries `(w, i, j)` with `i < j`.
    fn pairs(&self) -> impl Iterator<Item = (f64, u32, u32)> + '_ {
        (0..self.n).flat_map(move |i| {
            (i + 1..self.n).map(move |j| (self.w[i * self.n + j], i as u32, j as u32))
        })
    }
}

/// Euclidean distance matrix over the contour points divided by its
/// maximum entry.
pub fn build_weighted(c: &Contour) -> Result<WeightedNet> {
    let pts = c.points();
    let n = pts.len();
    if n < 3 {
        return Err(Error::TooFewPoints(n));
    }
    let mut w = vec![0.0; n * n];
    let mut max = 0.0f64;
    for i in 0..n {
        for j in i + 1..n {
            let d = pts[i].dist(pts[j]);
            w[i * n + j] = d;
            max = max.max(d);
        }
    }
    if max == 0.0 {
        return Err(Error::DegenerateContour);
    }
    for i in 0..n {
        for j in i + 1..n {
            let v = w[i * n + j] / max;
            w[i * n + j] = v;
            w[j * n + i] = v;
        }
    }
    Ok(WeightedNet { n, w })
}

/// Unweighted undirected graph. Neighbour lists are kept sorted ascending,
/// which makes two graphs with the same edge set compare equal.
#[derive(Debug, Clone, PartialEq)]
pub struct ThresholdGraph {
    adj: Vec<Vec<u32>>,
    edges: usize,
    threshold: f64,
    mode: Mode,
}

impl ThresholdGraph {
    /// Graph from an explicit edge list; duplicates and self-loops are
    /// dropped. Threshold metadata is set to `0.0`/`SmallerThan`.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Self {
        let mut adj = vec![Vec::new(); n];
        for &(a, b) in edges {
            assert!(a < n && b < n, "edge ({a}, {b}) out of range for {n} nodes");
            if a != b {
                adj[a].push(b as u32);
                adj[b].push(a as u32);
            }
        }
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
        }
        let edges = adj.iter().map(Vec::len).sum::<usize>() / 2;
        Self {
            adj,
            edges,
            threshold: 0.0,
            mode: Mode::SmallerThan,
        }
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges
    }

    pub fn threshold(&self) -> f64 {
        self.threshold
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    #[inline]
    pub fn degree(&self, i: usize) -> usize {
        self.adj[i].len()
    }

    #[inline]
    pub fn neighbors(&self, i: usize) -> &[u32] {
        &self.adj[i]
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.adj[i].binary_search(&(j as u32)).is_ok()
    }

    /// Edges `(i, j)` with `i < j` in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj.iter().enumerate().flat_map(|(i, list)| {
            list.iter()
                .filter(move |&&j| (j as usize) > i)
                .map(move |&j| (i, j as usize))
        })
    }

    /// Edge list text, `i j` per line with 0-based ids.
    pub fn to_edge_list(&self) -> String {
        let mut s = String::new();
        for (i, j) in self.edges() {
            let _ = writeln!(s, "{i} {j}");
        }
        s
    }
}

/// Weights closer than this to a threshold count as equal to it, and equal
/// weights never make an edge. Keeps graphs stable under the round-off that
/// rotating a contour introduces.
pub const TIE_EPS: f64 = 1e-9;

/// One threshold transformation: edge `(i, j)`, `i != j`, iff
/// `w[i][j] < t` (smaller-than) or `w[i][j] > t` (greater-than), with ties
/// judged up to [`TIE_EPS`].
pub fn threshold(wnet: &WeightedNet, t: f64, mode: Mode) -> Result<ThresholdGraph> {
    mode.check(t)?;
    let n = wnet.n;
    let mut adj = vec![Vec::new(); n];
    let mut edges = 0;
    for (w, i, j) in wnet.pairs() {
        if mode.keeps(w, t) {
            adj[i as usize].push(j);
            adj[j as usize].push(i);
            edges += 1;
        }
    }
    // i-major enumeration already yields ascending neighbour lists.
    Ok(ThresholdGraph {
        adj,
        edges,
        threshold: t,
        mode,
    })
}

/// Ordered thresholds for one sweep.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepPlan {
    thresholds: Vec<f64>,
    mode: Mode,
}

impl SweepPlan {
    /// Thresholds must be strictly increasing and lie in `(0, 1]` for
    /// smaller-than or `[0, 1)` for greater-than.
    pub fn new(thresholds: Vec<f64>, mode: Mode) -> Result<Self> {
        if thresholds.is_empty() {
            return Err(Error::InvalidPlan("no thresholds".into()));
        }
        if thresholds.windows(2).any(|w| w[0].partial_cmp(&w[1]) != Some(std::cmp::Ordering::Less)) {
            return Err(Error::InvalidPlan("thresholds must be strictly increasing".into()));
        }
        for &t in &thresholds {
            let ok = match mode {
                Mode::SmallerThan => t > 0.0 && t <= 1.0,
                Mode::GreaterThan => (0.0..1.0).contains(&t),
            };
            if !ok {
                return Err(Error::InvalidPlan(format!("threshold {t} out of range for {mode}")));
            }
        }
        Ok(Self { thresholds, mode })
    }

    /// `count` equally spaced thresholds. Smaller-than uses `l / count` for
    /// `l = 1..=count`; greater-than mirrors it with `(l - 1) / count`. Each
    /// drops the endpoint that would give the empty graph.
    pub fn uniform(count: usize, mode: Mode) -> Result<Self> {
        if count == 0 {
            return Err(Error::InvalidPlan("no thresholds".into()));
        }
        let offset = match mode {
            Mode::SmallerThan => 1,
            Mode::GreaterThan => 0,
        };
        let thresholds = (0..count)
            .map(|l| (l + offset) as f64 / count as f64)
            .collect();
        Self::new(thresholds, mode)
    }

    pub fn thresholds(&self) -> &[f64] {
        &self.thresholds
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn len(&self) -> usize {
        self.thresholds.len()
    }

    pub fn is_empty(&self) -> bool {
        self.thresholds.is_empty()
    }
}

/// Work counters for a sweep.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SweepStats {
    /// Edge insertions into the incrementally maintained graph.
    pub edge_insertions: usize,
    pub graphs: usize,
}

/// Graphs for every threshold in plan order. Equivalent to calling
/// [`threshold`] per value, but the upper triangle is sorted by weight once
/// and every edge is inserted at most once.
pub fn sweep(wnet: &WeightedNet, plan: &SweepPlan) -> Vec<ThresholdGraph> {
    sweep_with_stats(wnet, plan).0
}

pub fn sweep_with_stats(wnet: &WeightedNet, plan: &SweepPlan) -> (Vec<ThresholdGraph>, SweepStats) {
    let mode = plan.mode;
    let mut pairs: Vec<(f64, u32, u32)> = wnet.pairs().collect();
    // Greater-than edge sets shrink as t grows, so walk the thresholds from
    // the top down, inserting heaviest edges first, and reverse at the end.
    let order: Vec<usize> = match mode {
        Mode::SmallerThan => {
            pairs.sort_unstable_by(|a, b| a.0.total_cmp(&b.0).then((a.1, a.2).cmp(&(b.1, b.2))));
            (0..plan.len()).collect()
        }
        Mode::GreaterThan => {
            pairs.sort_unstable_by(|a, b| b.0.total_cmp(&a.0).then((a.1, a.2).cmp(&(b.1, b.2))));
            (0..plan.len()).rev().collect()
        }
    };
    let n = wnet.n;
    let mut adj: Vec<Vec<u32>> = vec![Vec::new(); n];
    let mut next = 0;
    let mut stats = SweepStats::default();
    let mut out: Vec<Option<ThresholdGraph>> = vec![None; plan.len()];
    for idx in order {
        let t = plan.thresholds[idx];
        while next < pairs.len() && mode.keeps(pairs[next].0, t) {
            let (_, i, j) = pairs[next];
            adj[i as usize].push(j);
            adj[j as usize].push(i);
            next += 1;
            stats.edge_insertions += 1;
        }
        let mut snapshot = adj.clone();
        for list in &mut snapshot {
            list.sort_unstable();
        }
        out[idx] = Some(ThresholdGraph {
            adj: snapshot,
            edges: next,
            threshold: t,
            mode,
        });
        stats.graphs += 1;
    }
    (out.into_iter().map(|g| g.expect("every threshold visited")).collect(), stats)
}
