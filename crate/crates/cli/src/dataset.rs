//! Directory datasets: contour CSVs and PBM/PGM silhouettes.
//!
//! A shape's label is its `# label=` header when present, otherwise the
//! name of the subdirectory of the dataset root that contains it. Files are
//! read in lexicographic path order and each shape's id is its file stem.

use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context, Result};
use contourgraph::shapes::io::{format_contour_csv, read_contour_csv, read_netpbm};
use contourgraph::{trace_boundary, Contour};

use crate::output::write_atomic;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Format {
    Csv,
    Netpbm,
}

fn format_of(path: &Path) -> Option<Format> {
    let ext = path.extension()?.to_str()?.to_ascii_lowercase();
    match ext.as_str() {
        "csv" | "txt" => Some(Format::Csv),
        "pbm" | "pgm" => Some(Format::Netpbm),
        _ => None,
    }
}

fn collect(dir: &Path, out: &mut Vec<PathBuf>) -> Result<()> {
    let entries = std::fs::read_dir(dir).with_context(|| format!("reading directory {}", dir.display()))?;
    for entry in entries {
        let path = entry?.path();
        let hidden = path.file_name().and_then(|n| n.to_str()).is_some_and(|n| n.starts_with('.'));
        if hidden {
            continue;
        }
        if path.is_dir() {
            collect(&path, out)?;
        } else if format_of(&path).is_some() {
            out.push(path);
        }
    }
    Ok(())
}

/// Reads one contour file of either format.
pub fn load_shape(path: &Path) -> Result<Contour> {
    let c = match format_of(path) {
        Some(Format::Csv) => read_contour_csv(path)?,
        Some(Format::Netpbm) => trace_boundary(&read_netpbm(path)?)?,
        None => bail!("{}: not a .csv, .txt, .pbm or .pgm file", path.display()),
    };
    let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or_default();
    Ok(c.with_id(stem))
}

/// Loads every contour under `root`. A file that cannot be read aborts the
/// load unless `skip_bad` is set, in which case it is reported on stderr
/// and left out.
pub fn load_dataset(root: &Path, skip_bad: bool) -> Result<Vec<Contour>> {
    if !root.is_dir() {
        bail!("{} is not a directory", root.display());
    }
    let mut files = Vec::new();
    collect(root, &mut files)?;
    files.sort();
    let mut out = Vec::with_capacity(files.len());
    for path in &files {
        let rel = path.strip_prefix(root).unwrap_or(path);
        let mut c = match load_shape(path) {
            Ok(c) => c,
            Err(e) if skip_bad => {
                eprintln!("skipping {}: {e:#}", path.display());
                continue;
            }
            Err(e) => return Err(e.context(format!("loading dataset {}", root.display()))),
        };
        if c.label().is_none() {
            let mut comps = rel.components();
            if let (Some(first), Some(_)) = (comps.next(), comps.next()) {
                c.set_label(Some(first.as_os_str().to_string_lossy().into_owned()));
            }
        }
        out.push(c);
    }
    if out.is_empty() {
        bail!("no contour files (.csv, .txt, .pbm, .pgm) found in {}", root.display());
    }
    Ok(out)
}

/// Loads several roots in order and concatenates them.
pub fn load_all(roots: &[PathBuf], skip_bad: bool) -> Result<Vec<Contour>> {
    let mut out = Vec::new();
    for r in roots {
        out.extend(load_dataset(r, skip_bad)?);
    }
    Ok(out)
}

/// Writes `<root>/<label>/<id>.csv` for each contour, in the layout
/// [`load_dataset`] reads back. `header` is prepended to every file and
/// should consist of `#` lines.
pub fn save_dataset(root: &Path, contours: &[Contour], header: &str) -> Result<()> {
    for (i, c) in contours.iter().enumerate() {
        let label = c.label().ok_or_else(|| anyhow!("contour {i} has no label"))?;
        let id = c.id().map_or_else(|| format!("shape_{i:04}"), str::to_string);
        check_name(label)?;
        check_name(&id)?;
        let text = format!("{header}{}", format_contour_csv(c));
        write_atomic(&root.join(label).join(format!("{id}.csv")), text.as_bytes())?;
    }
    Ok(())
}

fn check_name(s: &str) -> Result<()> {
    if s.is_empty() || s.starts_with('.') || s.contains(['/', '\\', ',', '\n']) {
        bail!("{s:?} cannot be used as a file or column name");
    }
    Ok(())
}
