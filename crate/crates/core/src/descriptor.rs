//! Feature vectors built from threshold sweeps.
//!
//! * `phi`: per threshold `[<k>, <k2>, <k3>, <cc>, <l>, rho, <b>]`
//! * `varphi`: per threshold `[k_mean, k_max]`
//! * `single`: the seven `phi` values at one threshold

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::metrics::{degree_stats, measure_summary, MeasurementSet, MetricOptions};
use crate::network::{build_weighted, sweep, threshold, Mode, SweepPlan};
use crate::shapes::Contour;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DescriptorKind {
    Phi,
    Varphi,
    Single,
}

impl std::str::FromStr for DescriptorKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "phi" => Ok(Self::Phi),
            "varphi" => Ok(Self::Varphi),
            "single" => Ok(Self::Single),
            _ => Err(format!("unknown descriptor {s:?} (expected phi or varphi)")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Measurement {
    AvgDegree,
    MaxDegree,
    HierDegree2,
    HierDegree3,
    Clustering,
    PathLength,
    Assortativity,
    Betweenness,
}

pub const PHI_MEASUREMENTS: [Measurement; 7] = [
    Measurement::AvgDegree,
    Measurement::HierDegree2,
    Measurement::HierDegree3,
    Measurement::Clustering,
    Measurement::PathLength,
    Measurement::Assortativity,
    Measurement::Betweenness,
];

pub const VARPHI_MEASUREMENTS: [Measurement; 2] = [Measurement::AvgDegree, Measurement::MaxDegree];

impl Measurement {
    pub fn short_name(self) -> &'static str {
        match self {
            Measurement::AvgDegree => "k",
            Measurement::MaxDegree => "kmax",
            Measurement::HierDegree2 => "k2",
            Measurement::HierDegree3 => "k3",
            Measurement::Clustering => "cc",
            Measurement::PathLength => "l",
            Measurement::Assortativity => "rho",
            Measurement::Betweenness => "b",
        }
    }

    pub fn from_short_name(s: &str) -> Option<Self> {
        PHI_MEASUREMENTS
            .iter()
            .chain(&VARPHI_MEASUREMENTS)
            .copied()
            .find(|m| m.short_name() == s)
    }

    pub fn of(self, m: &MeasurementSet) -> f64 {
        match self {
            Measurement::AvgDegree => m.avg_degree,
            Measurement::MaxDegree => m.max_degree,
            Measurement::HierDegree2 => m.hier_degree_2,
            Measurement::HierDegree3 => m.hier_degree_3,
            Measurement::Clustering => m.avg_clustering,
            Measurement::PathLength => m.avg_path_length,
            Measurement::Assortativity => m.assortativity,
            Measurement::Betweenness => m.avg_betweenness,
        }
    }
}

/// Meaning of every position in a feature vector: threshold-major, then
/// measurement order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Layout {
    pub kind: DescriptorKind,
    pub mode: Mode,
    pub thresholds: Vec<f64>,
    pub measurements: Vec<Measurement>,
}

impl Layout {
    pub fn new(kind: DescriptorKind, mode: Mode, thresholds: Vec<f64>) -> Self {
        let measurements = match kind {
            DescriptorKind::Varphi => VARPHI_MEASUREMENTS.to_vec(),
            DescriptorKind::Phi | DescriptorKind::Single => PHI_MEASUREMENTS.to_vec(),
        };
        Self {
            kind,
            mode,
            thresholds,
            measurements,
        }
    }

    pub fn len(&self) -> usize {
        self.thresholds.len() * self.measurements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Column names such as `k_T0.077`. Thresholds get three decimals, or
    /// more if needed to keep names distinct.
    pub fn column_names(&self) -> Vec<String> {
        let mut prec = 3;
        let fmt = |prec: usize| -> Vec<String> {
            self.thresholds.iter().map(|t| format!("{t:.prec$}")).collect()
        };
        let mut labels = fmt(prec);
        while prec < 17 && {
            let mut sorted = labels.clone();
            sorted.sort();
            sorted.windows(2).any(|w| w[0] == w[1])
        } {
            prec += 1;
            labels = fmt(prec);
        }
        labels
            .iter()
            .flat_map(|t| {
                self.measurements
                    .iter()
                    .map(move |m| format!("{}_T{t}", m.short_name()))
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FeatureVector {
    pub values: Vec<f64>,
    pub layout: Layout,
    pub label: Option<String>,
    pub id: Option<String>,
}

impl FeatureVector {
    /// Lays out already computed measurement sets (one per threshold).
    pub fn from_measurements(kind: DescriptorKind, mode: Mode, sets: &[MeasurementSet]) -> Self {
        let layout = Layout::new(kind, mode, sets.iter().map(|m| m.threshold).collect());
        let values = sets
            .iter()
            .flat_map(|s| layout.measurements.iter().map(move |m| m.of(s)))
            .collect();
        Self {
            values,
            layout,
            label: None,
            id: None,
        }
    }

    fn tagged(mut self, c: &Contour) -> Self {
        self.label = c.label().map(str::to_string);
        self.id = c.id().map(str::to_string);
        self
    }

    /// The single-threshold slice at position `idx` of a `phi` vector.
    pub fn phi_slice(&self, idx: usize) -> Option<FeatureVector> {
        if self.layout.kind != DescriptorKind::Phi || idx >= self.layout.thresholds.len() {
            return None;
        }
        let w = self.layout.measurements.len();
        Some(FeatureVector {
            values: self.values[idx * w..(idx + 1) * w].to_vec(),
            layout: Layout::new(
                DescriptorKind::Single,
                self.layout.mode,
                vec![self.layout.thresholds[idx]],
            ),
            label: self.label.clone(),
            id: self.id.clone(),
        })
    }
}

/// Full measurement sets along the sweep.
pub fn sweep_measurements(
    c: &Contour,
    plan: &SweepPlan,
    opts: &MetricOptions,
) -> Result<Vec<MeasurementSet>> {
    let wnet = build_weighted(c)?;
    Ok(sweep(&wnet, plan)
        .iter()
        .map(|g| measure_summary(g, opts))
        .collect())
}

pub fn extract_phi(c: &Contour, plan: &SweepPlan, opts: &MetricOptions) -> Result<FeatureVector> {
    let sets = sweep_measurements(c, plan, opts)?;
    Ok(FeatureVector::from_measurements(DescriptorKind::Phi, plan.mode(), &sets).tagged(c))
}

/// Degree-only descriptor; skips the path and clustering work.
pub fn extract_varphi(c: &Contour, plan: &SweepPlan) -> Result<FeatureVector> {
    let wnet = build_weighted(c)?;
    let mut values = Vec::with_capacity(2 * plan.len());
    for g in sweep(&wnet, plan) {
        let d = degree_stats(&g);
        values.push(d.mean);
        values.push(d.max as f64);
    }
    Ok(FeatureVector {
        values,
        layout: Layout::new(DescriptorKind::Varphi, plan.mode(), plan.thresholds().to_vec()),
        label: None,
        id: None,
    }
    .tagged(c))
}

/// The seven measurements at a single threshold. Unlike sweep plans, `t`
/// may be `0` or (for smaller-than) exceed `1`.
pub fn extract_single(c: &Contour, t: f64, mode: Mode, opts: &MetricOptions) -> Result<FeatureVector> {
    let wnet = build_weighted(c)?;
    let g = threshold(&wnet, t, mode)?;
    let set = measure_summary(&g, opts);
    Ok(FeatureVector::from_measurements(DescriptorKind::Single, mode, &[set]).tagged(c))
}
