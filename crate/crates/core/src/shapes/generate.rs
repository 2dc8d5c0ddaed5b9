use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::{Contour, Point};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ShapeKind {
    Circle,
    RegularPolygon,
    Star,
}

/// Ideal outline to sample. Vertex 0 sits at angle `rotation_deg`
/// (counterclockwise from +x); vertices proceed counterclockwise.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ShapeSpec {
    pub kind: ShapeKind,
    /// Sides for polygons, tips for stars; ignored for circles.
    #[serde(default)]
    pub sides: usize,
    /// Inner/outer radius ratio, stars only.
    #[serde(default = "default_inner_ratio")]
    pub inner_ratio: f64,
    pub samples: usize,
    #[serde(default = "default_center")]
    pub center: Point,
    pub radius: f64,
    #[serde(default)]
    pub rotation_deg: f64,
}

fn default_inner_ratio() -> f64 {
    0.5
}

fn default_center() -> Point {
    Point::new(0.0, 0.0)
}

impl ShapeSpec {
    pub fn circle(samples: usize, radius: f64) -> Self {
        Self {
            kind: ShapeKind::Circle,
            sides: 0,
            inner_ratio: default_inner_ratio(),
            samples,
            center: default_center(),
            radius,
            rotation_deg: 0.0,
        }
    }

    pub fn polygon(sides: usize, samples: usize, radius: f64) -> Self {
        Self {
            kind: ShapeKind::RegularPolygon,
            sides,
            ..Self::circle(samples, radius)
        }
    }

    pub fn star(tips: usize, inner_ratio: f64, samples: usize, radius: f64) -> Self {
        Self {
            kind: ShapeKind::Star,
            sides: tips,
            inner_ratio,
            ..Self::circle(samples, radius)
        }
    }

    pub fn rotated(mut self, deg: f64) -> Self {
        self.rotation_deg = deg;
        self
    }

    pub fn centered(mut self, center: Point) -> Self {
        self.center = center;
        self
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::InvalidShape(m.to_string()));
        if !(self.radius.is_finite() && self.radius > 0.0) {
            return bad("radius must be positive");
        }
        if self.samples < 3 {
            return bad("need at least 3 samples");
        }
        match self.kind {
            ShapeKind::Circle => {}
            ShapeKind::RegularPolygon | ShapeKind::Star => {
                let min_sides = if self.kind == ShapeKind::Star { 2 } else { 3 };
                if self.sides < min_sides {
                    return bad("too few sides/tips");
                }
                if self.samples < 3 * self.sides {
                    return bad("samples must be at least 3 per side/tip");
                }
            }
        }
        if self.kind == ShapeKind::Star && !(self.inner_ratio > 0.0 && self.inner_ratio < 1.0) {
            return bad("inner_ratio must lie in (0, 1)");
        }
        Ok(())
    }

    fn vertices(&self) -> Vec<Point> {
        let rot = self.rotation_deg.to_radians();
        let at = |angle: f64, r: f64| {
            Point::new(
                self.center.x + r * angle.cos(),
                self.center.y + r * angle.sin(),
            )
        };
        match self.kind {
            ShapeKind::Circle => Vec::new(),
            ShapeKind::RegularPolygon => (0..self.sides)
                .map(|k| at(rot + 2.0 * PI * k as f64 / self.sides as f64, self.radius))
                .collect(),
            ShapeKind::Star => (0..2 * self.sides)
                .map(|k| {
                    let r = if k % 2 == 0 {
                        self.radius
                    } else {
                        self.radius * self.inner_ratio
                    };
                    at(rot + PI * k as f64 / self.sides as f64, r)
                })
                .collect(),
        }
    }
}

/// Samples `spec.samples` points uniformly by arc length along the ideal
/// outline, starting at vertex 0 (or angle `rotation_deg` for circles).
pub fn generate_shape(spec: &ShapeSpec) -> Result<Contour> {
    spec.validate()?;
    let n = spec.samples;
    let points = if spec.kind == ShapeKind::Circle {
        let rot = spec.rotation_deg.to_radians();
        (0..n)
            .map(|j| {
                let a = rot + 2.0 * PI * j as f64 / n as f64;
                Point::new(
                    spec.center.x + spec.radius * a.cos(),
                    spec.center.y + spec.radius * a.sin(),
                )
            })
            .collect()
    } else {
        // Every edge of a regular polygon or star has the same length, so
        // arc length is linear in "edge units". Integer arithmetic keeps
        // samples that land on a vertex exactly on it.
        let verts = spec.vertices();
        let edges = verts.len();
        (0..n)
            .map(|j| {
                let num = j * edges;
                let e = num / n;
                let frac = (num % n) as f64 / n as f64;
                verts[e].lerp(verts[(e + 1) % edges], frac)
            })
            .collect()
    };
    Contour::new(points)
}
