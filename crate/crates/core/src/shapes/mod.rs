//! Contours: loading, generation, resampling, interpolation and perturbation.

mod generate;
pub mod io;
pub mod synthetic;
mod trace;
mod transform;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use generate::{generate_shape, ShapeKind, ShapeSpec};
pub use trace::{trace_boundary, Raster};
pub use transform::{interpolate, perturb, resample, Perturbation};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn dist(self, other: Point) -> f64 {
        (self.x - other.x).hypot(self.y - other.y)
    }

    pub(crate) fn lerp(self, other: Point, t: f64) -> Point {
        Point::new(
            self.x + (other.x - self.x) * t,
            self.y + (other.y - self.y) * t,
        )
    }
}

/// An ordered, closed boundary. Index arithmetic is cyclic.
#[derive(Debug, Clone, PartialEq)]
pub struct Contour {
    points: Vec<Point>,
    label: Option<String>,
    id: Option<String>,
}

impl Contour {
    /// Validates length, finiteness and that no two cyclically consecutive
    /// points coincide.
    pub fn new(points: Vec<Point>) -> Result<Self> {
        let n = points.len();
        if n < 3 {
            return Err(Error::TooFewPoints(n));
        }
        for (i, p) in points.iter().enumerate() {
            if !p.x.is_finite() || !p.y.is_finite() {
                return Err(Error::NonFinite(i));
            }
        }
        for i in 0..n {
            let j = (i + 1) % n;
            if points[i] == points[j] {
                return Err(Error::DuplicatePoint(i, j));
            }
        }
        Ok(Self {
            points,
            label: None,
            id: None,
        })
    }

    /// Drops cyclically consecutive duplicates before validating.
    pub fn from_points_dedup(mut points: Vec<Point>) -> Result<Self> {
        points.dedup();
        while points.len() > 1 && points.first() == points.last() {
            points.pop();
        }
        Self::new(points)
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    pub fn with_id(mut self, id: impl Into<String>) -> Self {
        self.id = Some(id.into());
        self
    }

    pub(crate) fn with_meta_of(mut self, other: &Contour) -> Self {
        self.label = other.label.clone();
        self.id = other.id.clone();
        self
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    pub fn id(&self) -> Option<&str> {
        self.id.as_deref()
    }

    pub fn set_label(&mut self, label: Option<String>) {
        self.label = label;
    }

    /// Mean of the boundary points.
    pub fn centroid(&self) -> Point {
        let n = self.points.len() as f64;
        let (sx, sy) = self
            .points
            .iter()
            .fold((0.0, 0.0), |(sx, sy), p| (sx + p.x, sy + p.y));
        Point::new(sx / n, sy / n)
    }

    /// Length of the closed polyline.
    pub fn perimeter(&self) -> f64 {
        self.segment_lengths().iter().sum()
    }

    /// Shoelace area; positive for counterclockwise order in a y-up frame.
    pub fn signed_area(&self) -> f64 {
        let n = self.points.len();
        let mut acc = 0.0;
        for i in 0..n {
            let a = self.points[i];
            let b = self.points[(i + 1) % n];
            acc += a.x * b.y - b.x * a.y;
        }
        acc / 2.0
    }

    /// Contour with the point order cyclically rotated so that `start`
    /// becomes index 0.
    pub fn rotate_start(&self, start: usize) -> Contour {
        let n = self.points.len();
        let points = (0..n).map(|i| self.points[(start + i) % n]).collect();
        Contour {
            points,
            label: self.label.clone(),
            id: self.id.clone(),
        }
    }

    pub(crate) fn segment_lengths(&self) -> Vec<f64> {
        let n = self.points.len();
        (0..n)
            .map(|i| self.points[i].dist(self.points[(i + 1) % n]))
            .collect()
    }
}
