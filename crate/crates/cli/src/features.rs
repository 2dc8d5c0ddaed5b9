//! Feature files: a CSV with one row per shape (`id`, feature columns,
//! `label`) and a JSON sidecar holding the exact layout.

use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use contourgraph::descriptor::Measurement;
use contourgraph::{DescriptorKind, FeatureVector, Layout, Mode};
use serde::{Deserialize, Serialize};

use crate::output::{provenance, write_atomic};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Sidecar {
    pub version: String,
    pub config_hash: String,
    pub seed: u64,
    pub layout: Layout,
    pub rows: usize,
}

pub fn sidecar_path(csv: &Path) -> PathBuf {
    csv.with_extension("json")
}

pub fn format_features(vectors: &[FeatureVector], hash: &str, seed: u64) -> Result<String> {
    let Some(first) = vectors.first() else {
        bail!("no feature vectors to write");
    };
    let mut s = provenance(hash, seed);
    s.push_str("id,");
    for name in first.layout.column_names() {
        s.push_str(&name);
        s.push(',');
    }
    s.push_str("label\n");
    for (i, v) in vectors.iter().enumerate() {
        if v.layout != first.layout {
            bail!("vector {i} has a different layout");
        }
        let id = v.id.as_deref().unwrap_or("");
        let label = v.label.as_deref().unwrap_or("");
        if id.contains([',', '\n']) || label.contains([',', '\n']) {
            bail!("id or label of vector {i} contains a comma or newline");
        }
        s.push_str(id);
        for x in &v.values {
            s.push(',');
            s.push_str(&x.to_string());
        }
        s.push(',');
        s.push_str(label);
        s.push('\n');
    }
    Ok(s)
}

/// Writes the CSV and its sidecar.
pub fn write_features(path: &Path, vectors: &[FeatureVector], hash: &str, seed: u64) -> Result<()> {
    write_atomic(path, format_features(vectors, hash, seed)?.as_bytes())?;
    let sidecar = Sidecar {
        version: env!("CARGO_PKG_VERSION").to_string(),
        config_hash: hash.to_string(),
        seed,
        layout: vectors[0].layout.clone(),
        rows: vectors.len(),
    };
    let mut json = serde_json::to_string_pretty(&sidecar)?;
    json.push('\n');
    write_atomic(&sidecar_path(path), json.as_bytes())
}

/// Best-effort layout from column names alone. Thresholds are only as
/// precise as the names and the mode is assumed smaller-than.
fn layout_from_header(names: &[&str]) -> Result<Layout> {
    let mut measurements = Vec::new();
    let mut thresholds: Vec<f64> = Vec::new();
    for name in names {
        let (short, t) = name
            .split_once("_T")
            .with_context(|| format!("column {name:?} is not of the form <measure>_T<threshold>"))?;
        let m = Measurement::from_short_name(short).with_context(|| format!("unknown measurement in {name:?}"))?;
        let t: f64 = t.parse().with_context(|| format!("bad threshold in {name:?}"))?;
        if thresholds.last() != Some(&t) {
            thresholds.push(t);
        }
        if thresholds.len() == 1 {
            measurements.push(m);
        }
    }
    let kind = if measurements == [Measurement::AvgDegree, Measurement::MaxDegree] {
        DescriptorKind::Varphi
    } else {
        DescriptorKind::Phi
    };
    let layout = Layout::new(kind, Mode::SmallerThan, thresholds);
    if layout.column_names().len() != names.len() || layout.measurements != measurements {
        bail!("feature columns do not follow a known descriptor layout");
    }
    Ok(layout)
}

pub fn parse_features(text: &str, sidecar: Option<&Sidecar>, origin: &str) -> Result<Vec<FeatureVector>> {
    let mut lines = text.lines().enumerate().filter(|(_, l)| !l.starts_with('#') && !l.trim().is_empty());
    let (_, header) = lines.next().with_context(|| format!("{origin}: empty feature file"))?;
    let cols: Vec<&str> = header.split(',').collect();
    if cols.len() < 3 || cols[0] != "id" || cols[cols.len() - 1] != "label" {
        bail!("{origin}: header must be `id,<features...>,label`");
    }
    let names = &cols[1..cols.len() - 1];
    let layout = match sidecar {
        Some(s) => {
            if s.layout.column_names() != names {
                bail!("{origin}: columns disagree with the sidecar layout");
            }
            s.layout.clone()
        }
        None => layout_from_header(names).with_context(|| origin.to_string())?,
    };
    let mut out = Vec::new();
    for (i, line) in lines {
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != cols.len() {
            bail!("{origin}:{}: expected {} fields, found {}", i + 1, cols.len(), fields.len());
        }
        let values = fields[1..fields.len() - 1]
            .iter()
            .map(|f| f.trim().parse::<f64>())
            .collect::<Result<Vec<_>, _>>()
            .with_context(|| format!("{origin}:{}: bad number", i + 1))?;
        let opt = |s: &str| (!s.is_empty()).then(|| s.to_string());
        out.push(FeatureVector {
            values,
            layout: layout.clone(),
            label: opt(fields[fields.len() - 1]),
            id: opt(fields[0]),
        });
    }
    Ok(out)
}

/// Reads a feature CSV, using its sidecar when one sits next to it.
pub fn read_features(path: &Path) -> Result<Vec<FeatureVector>> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let sc = sidecar_path(path);
    let sidecar: Option<Sidecar> = if sc.exists() {
        let s = std::fs::read_to_string(&sc).with_context(|| format!("reading {}", sc.display()))?;
        Some(serde_json::from_str(&s).with_context(|| format!("parsing {}", sc.display()))?)
    } else {
        None
    };
    parse_features(&text, sidecar.as_ref(), &path.display().to_string())
}
