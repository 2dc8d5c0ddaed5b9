//! Contour CSV and PBM/PGM readers and writers.
//!
//! Contour CSV: one `x,y` pair per line in boundary order, closed
//! implicitly, with an optional `# label=<class>` header. Other `#` lines
//! and blank lines are ignored.

use std::fmt::Write as _;
use std::path::Path;

use super::{Contour, Point, Raster};
use crate::error::{Error, Result};

pub fn parse_contour_csv(text: &str, origin: &str) -> Result<Contour> {
    let mut label = None;
    let mut points = Vec::new();
    let err = |line: usize, msg: String| Error::Parse {
        origin: origin.to_string(),
        line,
        msg,
    };
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(comment) = line.strip_prefix('#') {
            if let Some(l) = comment.trim().strip_prefix("label=") {
                label = Some(l.trim().to_string());
            }
            continue;
        }
        let mut fields = line.split(',').map(str::trim);
        let (Some(xs), Some(ys), None) = (fields.next(), fields.next(), fields.next()) else {
            return Err(err(i + 1, format!("expected `x,y`, got {line:?}")));
        };
        let parse = |s: &str| {
            s.parse::<f64>()
                .map_err(|e| err(i + 1, format!("bad number {s:?}: {e}")))
        };
        points.push(Point::new(parse(xs)?, parse(ys)?));
    }
    let mut c = Contour::new(points)?;
    c.set_label(label);
    Ok(c)
}

/// Writes with Rust's shortest round-trip float formatting, so parsing the
/// output reproduces the contour bit-for-bit.
pub fn format_contour_csv(c: &Contour) -> String {
    let mut s = String::new();
    if let Some(l) = c.label() {
        let _ = writeln!(s, "# label={l}");
    }
    for p in c.points() {
        let _ = writeln!(s, "{},{}", p.x, p.y);
    }
    s
}

pub fn read_contour_csv(path: &Path) -> Result<Contour> {
    let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_contour_csv(&text, &path.display().to_string())
}

/// Parses P1/P2 (plain) and P4/P5 (raw) Netpbm images. Any nonzero sample is
/// foreground.
pub fn parse_netpbm(bytes: &[u8], origin: &str) -> Result<Raster> {
    let err = |msg: &str| Error::Parse {
        origin: origin.to_string(),
        line: 0,
        msg: msg.to_string(),
    };
    let mut pos = 0;
    let token = |pos: &mut usize| -> Option<String> {
        loop {
            while *pos < bytes.len() && bytes[*pos].is_ascii_whitespace() {
                *pos += 1;
            }
            if *pos < bytes.len() && bytes[*pos] == b'#' {
                while *pos < bytes.len() && bytes[*pos] != b'\n' {
                    *pos += 1;
                }
                continue;
            }
            break;
        }
        let start = *pos;
        while *pos < bytes.len() && !bytes[*pos].is_ascii_whitespace() {
            *pos += 1;
        }
        (start < *pos).then(|| String::from_utf8_lossy(&bytes[start..*pos]).into_owned())
    };
    let magic = token(&mut pos).ok_or_else(|| err("empty file"))?;
    let num = |pos: &mut usize, what: &str| -> Result<usize> {
        token(pos)
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| err(&format!("missing or invalid {what}")))
    };
    let width = num(&mut pos, "width")?;
    let height = num(&mut pos, "height")?;
    let total = width * height;
    let data: Vec<bool> = match magic.as_str() {
        "P1" => {
            let mut out = Vec::with_capacity(total);
            while out.len() < total {
                while pos < bytes.len() && (bytes[pos].is_ascii_whitespace()) {
                    pos += 1;
                }
                if pos < bytes.len() && bytes[pos] == b'#' {
                    while pos < bytes.len() && bytes[pos] != b'\n' {
                        pos += 1;
                    }
                    continue;
                }
                match bytes.get(pos) {
                    Some(b'0') => out.push(false),
                    Some(b'1') => out.push(true),
                    _ => return Err(err("truncated or invalid P1 data")),
                }
                pos += 1;
            }
            out
        }
        "P2" => {
            let _max = num(&mut pos, "maxval")?;
            (0..total)
                .map(|_| num(&mut pos, "sample").map(|v| v != 0))
                .collect::<Result<_>>()?
        }
        "P4" => {
            pos += 1;
            let row_bytes = width.div_ceil(8);
            let raw = bytes
                .get(pos..pos + row_bytes * height)
                .ok_or_else(|| err("truncated P4 data"))?;
            (0..total)
                .map(|i| {
                    let (x, y) = (i % width, i / width);
                    raw[y * row_bytes + x / 8] & (0x80 >> (x % 8)) != 0
                })
                .collect()
        }
        "P5" => {
            let max = num(&mut pos, "maxval")?;
            pos += 1;
            let bps = if max > 255 { 2 } else { 1 };
            let raw = bytes
                .get(pos..pos + total * bps)
                .ok_or_else(|| err("truncated P5 data"))?;
            raw.chunks(bps).map(|c| c.iter().any(|&b| b != 0)).collect()
        }
        other => return Err(err(&format!("unsupported magic {other:?}"))),
    };
    Raster::new(width, height, data)
}

pub fn read_netpbm(path: &Path) -> Result<Raster> {
    let bytes = std::fs::read(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_netpbm(&bytes, &path.display().to_string())
}

/// Raw PGM (P5), foreground 255.
pub fn format_pgm(r: &Raster) -> Vec<u8> {
    let mut out = format!("P5\n{} {}\n255\n", r.width(), r.height()).into_bytes();
    for y in 0..r.height() {
        for x in 0..r.width() {
            out.push(if r.get(x as i64, y as i64) { 255 } else { 0 });
        }
    }
    out
}
