//! End-to-end runs: load or generate shapes, perturb, extract, classify,
//! and write every artifact under one output directory.

use std::fmt::Write as _;
use std::path::Path;

use anyhow::{bail, Context, Result};
use contourgraph::shapes::synthetic::generate_dataset;
use contourgraph::{
    build_weighted, cross_validate, extract_phi, extract_single, extract_varphi, measure_all, perturb, threshold,
    AccuracyReport, Classifier, Contour, CvConfig, DescriptorKind, FeatureVector, LabeledDataset, MetricOptions, Mode,
    Perturbation, SweepPlan,
};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::config::{DatasetSource, ExperimentConfig};
use crate::dataset::load_all;
use crate::features::write_features;
use crate::output::{provenance, write_atomic};

/// Shapes named by the config. Generated sets are put in the order a
/// directory load of the same shapes would produce.
pub fn load_source(source: &DatasetSource) -> Result<Vec<Contour>> {
    match source {
        DatasetSource::Directory { paths, skip_bad } => load_all(paths, *skip_bad),
        DatasetSource::Synthetic(spec) => {
            let mut cs = generate_dataset(spec)?;
            cs.sort_by(|a, b| (a.label(), a.id()).cmp(&(b.label(), b.id())));
            Ok(cs)
        }
    }
}

/// Applies `p` to every shape; shape `i` uses `p.for_sample(i)`.
pub fn perturb_dataset(contours: &[Contour], p: &Perturbation) -> Result<Vec<Contour>> {
    contours
        .par_iter()
        .enumerate()
        .map(|(i, c)| {
            perturb(c, &p.for_sample(i as u64))
                .with_context(|| format!("perturbing shape {} ({})", i, c.id().unwrap_or("?")))
        })
        .collect()
}

pub fn extract_dataset(
    contours: &[Contour],
    kind: DescriptorKind,
    plan: &SweepPlan,
    opts: &MetricOptions,
) -> Result<Vec<FeatureVector>> {
    contours
        .par_iter()
        .map(|c| {
            let v = match kind {
                DescriptorKind::Phi => extract_phi(c, plan, opts)?,
                DescriptorKind::Varphi => extract_varphi(c, plan)?,
                DescriptorKind::Single => {
                    let &[t] = plan.thresholds() else {
                        bail!("single-threshold extraction needs exactly one threshold");
                    };
                    extract_single(c, t, plan.mode(), opts)?
                }
            };
            Ok(v)
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Condition {
    pub name: String,
    pub perturbation: Option<Perturbation>,
}

impl Condition {
    pub fn all(cfg: &ExperimentConfig) -> Vec<Condition> {
        if cfg.perturbations.is_empty() {
            return vec![Condition {
                name: "original".into(),
                perturbation: None,
            }];
        }
        cfg.perturbations
            .iter()
            .map(|p| Condition {
                name: p.tag(),
                perturbation: Some(p.clone()),
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportFile {
    pub config_hash: String,
    pub seed: u64,
    pub condition: Condition,
    pub report: AccuracyReport,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentOutcome {
    pub config_hash: String,
    pub reports: Vec<(Condition, AccuracyReport)>,
}

pub fn format_table(rows: &[(Condition, AccuracyReport)], hash: &str, seed: u64) -> String {
    let mut s = provenance(hash, seed);
    let _ = writeln!(s, "condition\t{}", AccuracyReport::table_header());
    for (c, r) in rows {
        let _ = writeln!(s, "{}\t{}", c.name, r.table_row());
    }
    s
}

/// Writes `config.json`, then per condition `features_<name>.csv` (+ JSON
/// sidecar) and `report_<name>.json`, optional per-node profiles, and a
/// `report.txt` summary table.
pub fn run_experiment(cfg: &ExperimentConfig, out: &Path) -> Result<ExperimentOutcome> {
    cfg.validate()?;
    let hash = cfg.hash();
    write_atomic(&out.join("config.json"), cfg.to_json().as_bytes())?;
    let base = load_source(&cfg.dataset)?;
    let plan = cfg.plan()?;
    let mut reports = Vec::new();
    for cond in Condition::all(cfg) {
        let shapes = match &cond.perturbation {
            Some(p) => perturb_dataset(&base, p)?,
            None => base.clone(),
        };
        let vectors = extract_dataset(&shapes, cfg.descriptor, &plan, &cfg.metrics)?;
        write_features(&out.join(format!("features_{}.csv", cond.name)), &vectors, &hash, cfg.seed)?;
        let data = LabeledDataset::new(vectors).context("building labeled dataset")?;
        let report = cross_validate(&data, &cfg.classifier, &cfg.cv())
            .with_context(|| format!("cross-validating condition {}", cond.name))?;
        let file = ReportFile {
            config_hash: hash.clone(),
            seed: cfg.seed,
            condition: cond.clone(),
            report: report.clone(),
        };
        let mut json = serde_json::to_string_pretty(&file)?;
        json.push('\n');
        write_atomic(&out.join(format!("report_{}.json", cond.name)), json.as_bytes())?;
        if let Some(t) = cfg.profile_threshold {
            write_profiles(&shapes, t, cfg.mode, &cfg.metrics, &out.join("profiles").join(&cond.name), &hash, cfg.seed)?;
        }
        reports.push((cond, report));
    }
    write_atomic(&out.join("report.txt"), format_table(&reports, &hash, cfg.seed).as_bytes())?;
    Ok(ExperimentOutcome {
        config_hash: hash,
        reports,
    })
}

pub fn write_profiles(
    shapes: &[Contour],
    t: f64,
    mode: Mode,
    opts: &MetricOptions,
    dir: &Path,
    hash: &str,
    seed: u64,
) -> Result<()> {
    shapes.par_iter().enumerate().try_for_each(|(i, c)| {
        let g = threshold(&build_weighted(c)?, t, mode)?;
        let (_, profile) = measure_all(&g, opts);
        let name = c.id().map_or_else(|| format!("shape_{i:04}"), str::to_string);
        let text = provenance(hash, seed) + &profile.to_csv();
        write_atomic(&dir.join(format!("{name}.csv")), text.as_bytes())
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StudyRow {
    pub descriptor: DescriptorKind,
    pub n_thresholds: usize,
    pub threshold: Option<f64>,
    pub report: AccuracyReport,
}

/// Accuracy of `phi` and `varphi` for each sweep size in `sizes`.
pub fn sweep_study(
    contours: &[Contour],
    mode: Mode,
    sizes: &[usize],
    clf: &dyn Classifier,
    cv: &CvConfig,
    opts: &MetricOptions,
) -> Result<Vec<StudyRow>> {
    let mut rows = Vec::new();
    for &n in sizes {
        let plan = SweepPlan::uniform(n, mode)?;
        for kind in [DescriptorKind::Phi, DescriptorKind::Varphi] {
            let data = LabeledDataset::new(extract_dataset(contours, kind, &plan, opts)?)?;
            rows.push(StudyRow {
                descriptor: kind,
                n_thresholds: n,
                threshold: None,
                report: cross_validate(&data, clf, cv)?,
            });
        }
    }
    Ok(rows)
}

/// Accuracy of the seven measurements taken at each threshold alone.
pub fn single_threshold_study(
    contours: &[Contour],
    mode: Mode,
    thresholds: &[f64],
    clf: &dyn Classifier,
    cv: &CvConfig,
    opts: &MetricOptions,
) -> Result<Vec<StudyRow>> {
    thresholds
        .iter()
        .map(|&t| {
            let vectors: Vec<FeatureVector> = contours
                .par_iter()
                .map(|c| extract_single(c, t, mode, opts))
                .collect::<contourgraph::Result<_>>()?;
            Ok(StudyRow {
                descriptor: DescriptorKind::Single,
                n_thresholds: 1,
                threshold: Some(t),
                report: cross_validate(&LabeledDataset::new(vectors)?, clf, cv)?,
            })
        })
        .collect()
}

pub fn format_study(rows: &[StudyRow], hash: &str, seed: u64) -> String {
    let mut s = provenance(hash, seed);
    s.push_str("descriptor,n_thresholds,threshold,classifier,mean_accuracy,std_dev\n");
    for r in rows {
        let kind = match r.descriptor {
            DescriptorKind::Phi => "phi",
            DescriptorKind::Varphi => "varphi",
            DescriptorKind::Single => "single",
        };
        let t = r.threshold.map(|t| t.to_string()).unwrap_or_default();
        let _ = writeln!(
            s,
            "{kind},{},{t},{},{},{}",
            r.n_thresholds, r.report.classifier, r.report.mean_accuracy, r.report.std_dev
        );
    }
    s
}
