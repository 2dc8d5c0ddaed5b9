//! Seeded, jittered geometric datasets for desk-scale experiments.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{generate_shape, perturb, Contour, Perturbation, ShapeSpec};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassTemplate {
    pub name: String,
    /// `radius` and `rotation_deg` are redrawn per sample.
    pub shape: ShapeSpec,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SyntheticSpec {
    pub classes: Vec<ClassTemplate>,
    pub samples_per_class: usize,
    /// Integer coordinate noise applied to every sample; 0 disables.
    pub noise_level: u32,
    pub radius_min: f64,
    pub radius_max: f64,
    pub seed: u64,
}

impl SyntheticSpec {
    /// Ten classes of regular shapes: circle, five polygons and four stars.
    pub fn geometric_ten(samples_per_class: usize, points: usize, seed: u64) -> Self {
        let t = |name: &str, shape: ShapeSpec| ClassTemplate {
            name: name.to_string(),
            shape,
        };
        let classes = vec![
            t("circle", ShapeSpec::circle(points, 1.0)),
            t("triangle", ShapeSpec::polygon(3, points, 1.0)),
            t("square", ShapeSpec::polygon(4, points, 1.0)),
            t("pentagon", ShapeSpec::polygon(5, points, 1.0)),
            t("hexagon", ShapeSpec::polygon(6, points, 1.0)),
            t("octagon", ShapeSpec::polygon(8, points, 1.0)),
            t("star4", ShapeSpec::star(4, 0.45, points, 1.0)),
            t("star5", ShapeSpec::star(5, 0.5, points, 1.0)),
            t("star6", ShapeSpec::star(6, 0.55, points, 1.0)),
            t("star8", ShapeSpec::star(8, 0.65, points, 1.0)),
        ];
        Self {
            classes,
            samples_per_class,
            noise_level: 1,
            radius_min: 15.0,
            radius_max: 30.0,
            seed,
        }
    }
}

/// Contours in class order, each labelled with its class name and an id of
/// the form `<class>_<index>`.
pub fn generate_dataset(spec: &SyntheticSpec) -> Result<Vec<Contour>> {
    if spec.classes.is_empty() || spec.samples_per_class == 0 {
        return Err(Error::InvalidDataset("synthetic spec has no samples".into()));
    }
    if !(spec.radius_min > 0.0 && spec.radius_min <= spec.radius_max) {
        return Err(Error::InvalidDataset("bad radius range".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut out = Vec::with_capacity(spec.classes.len() * spec.samples_per_class);
    for class in &spec.classes {
        for k in 0..spec.samples_per_class {
            let mut shape = class.shape.clone();
            shape.radius = if spec.radius_max > spec.radius_min {
                rng.gen_range(spec.radius_min..spec.radius_max)
            } else {
                spec.radius_min
            };
            shape.rotation_deg = rng.gen_range(0.0..360.0);
            let noise_seed: u64 = rng.gen();
            let mut c = generate_shape(&shape)?;
            if spec.noise_level > 0 {
                c = perturb(
                    &c,
                    &Perturbation::Noise {
                        level: spec.noise_level,
                        seed: noise_seed,
                    },
                )?;
            }
            out.push(
                c.with_label(class.name.clone())
                    .with_id(format!("{}_{k:03}", class.name)),
            );
        }
    }
    Ok(out)
}
