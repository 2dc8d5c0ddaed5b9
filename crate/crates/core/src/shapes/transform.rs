use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{Contour, Point};
use crate::error::{Error, Result};

/// `n` points spaced uniformly by arc length along the closed polyline,
/// starting at `c.points()[0]`.
pub fn resample(c: &Contour, n: usize) -> Result<Contour> {
    if n < 3 {
        return Err(Error::TooFewPoints(n));
    }
    let pts = c.points();
    let m = pts.len();
    let seg = c.segment_lengths();
    let total: f64 = seg.iter().sum();
    let mut out = Vec::with_capacity(n);
    let mut k = 0;
    let mut cum = 0.0;
    for j in 0..n {
        let s = total * j as f64 / n as f64;
        while k + 1 < m && cum + seg[k] < s {
            cum += seg[k];
            k += 1;
        }
        let frac = if seg[k] > 0.0 {
            ((s - cum) / seg[k]).clamp(0.0, 1.0)
        } else {
            0.0
        };
        out.push(pts[k].lerp(pts[(k + 1) % m], frac));
    }
    Ok(Contour::from_points_dedup(out)?.with_meta_of(c))
}

/// Pointwise blend `(1 - alpha) * a + alpha * b` after resampling both to a
/// common length and aligning `b` to `a` by the cyclic shift and direction
/// that minimize the summed point-to-point distance.
pub fn interpolate(a: &Contour, b: &Contour, alpha: f64) -> Result<Contour> {
    if !(0.0..=1.0).contains(&alpha) {
        return Err(Error::InvalidShape(format!("alpha {alpha} outside [0, 1]")));
    }
    let m = a.len().max(b.len());
    let ra = resample(a, m)?;
    let rb = resample(b, m)?;
    let aligned = align(ra.points(), rb.points());
    let points = ra
        .points()
        .iter()
        .zip(&aligned)
        .map(|(&p, &q)| Point::new((1.0 - alpha) * p.x + alpha * q.x, (1.0 - alpha) * p.y + alpha * q.y))
        .collect();
    Ok(Contour::from_points_dedup(points)?.with_meta_of(a))
}

fn align(a: &[Point], b: &[Point]) -> Vec<Point> {
    let m = a.len();
    let reversed: Vec<Point> = b.iter().rev().copied().collect();
    let mut best: Option<(f64, bool, usize)> = None;
    for (rev, cand) in [(false, b), (true, &reversed[..])] {
        for shift in 0..m {
            let cost: f64 = (0..m).map(|i| a[i].dist(cand[(i + shift) % m])).sum();
            if best.is_none_or(|(c, _, _)| cost < c) {
                best = Some((cost, rev, shift));
            }
        }
    }
    let (_, rev, shift) = best.expect("non-empty contour");
    let cand = if rev { &reversed[..] } else { b };
    (0..m).map(|i| cand[(i + shift) % m]).collect()
}

/// A single robustness transformation. Stochastic variants carry their own
/// seed, so a (seed, spec) pair always yields the same contour.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Perturbation {
    /// Rotation about the centroid, in degrees.
    Rotate { angle_deg: f64 },
    /// Uniform scaling about the centroid.
    Scale { factor: f64 },
    /// Integer offsets drawn uniformly from `[-level, level]` on each axis.
    Noise { level: u32, seed: u64 },
    /// One contiguous run of `floor(fraction * N)` points removed.
    DegradeContinuous { fraction: f64, seed: u64 },
    /// `floor(fraction * N)` distinct points removed at random.
    DegradeRandom { fraction: f64, seed: u64 },
}

/// Number of degradation levels used by the robustness protocol.
pub const DEGRADATION_LEVELS: u32 = 17;

impl Perturbation {
    /// Degradation level `1..=17` mapped linearly onto removal fractions up
    /// to one half.
    pub fn degradation_fraction(level: u32) -> f64 {
        level as f64 / (2 * DEGRADATION_LEVELS) as f64
    }

    /// Short tag used in file names and reports.
    pub fn tag(&self) -> String {
        match self {
            Perturbation::Rotate { angle_deg } => format!("rotate_{angle_deg}"),
            Perturbation::Scale { factor } => format!("scale_{factor}"),
            Perturbation::Noise { level, .. } => format!("noise_{level}"),
            Perturbation::DegradeContinuous { fraction, .. } => format!("degrade_continuous_{fraction}"),
            Perturbation::DegradeRandom { fraction, .. } => format!("degrade_random_{fraction}"),
        }
    }

    /// Same perturbation with its seed (if any) replaced.
    pub fn reseeded(&self, new_seed: u64) -> Perturbation {
        let mut p = self.clone();
        match &mut p {
            Perturbation::Noise { seed, .. }
            | Perturbation::DegradeContinuous { seed, .. }
            | Perturbation::DegradeRandom { seed, .. } => *seed = new_seed,
            Perturbation::Rotate { .. } | Perturbation::Scale { .. } => {}
        }
        p
    }

    /// The variant applied to the `index`-th shape of a dataset: stochastic
    /// perturbations get an independent seed derived from their own seed and
    /// the index.
    pub fn for_sample(&self, index: u64) -> Perturbation {
        match *self {
            Perturbation::Noise { seed, .. }
            | Perturbation::DegradeContinuous { seed, .. }
            | Perturbation::DegradeRandom { seed, .. } => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                rng.set_stream(index);
                self.reseeded(rng.gen())
            }
            Perturbation::Rotate { .. } | Perturbation::Scale { .. } => self.clone(),
        }
    }

    fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidPerturbation(m));
        match *self {
            Perturbation::Rotate { angle_deg } if !angle_deg.is_finite() => bad("angle must be finite".into()),
            Perturbation::Scale { factor } if !(factor.is_finite() && factor > 0.0) => {
                bad(format!("scale factor {factor} must be positive"))
            }
            Perturbation::DegradeContinuous { fraction, .. } | Perturbation::DegradeRandom { fraction, .. }
                if !(0.0..1.0).contains(&fraction) =>
            {
                bad(format!("degradation fraction {fraction} outside [0, 1)"))
            }
            _ => Ok(()),
        }
    }
}

pub fn perturb(c: &Contour, p: &Perturbation) -> Result<Contour> {
    p.validate()?;
    let pts = c.points();
    let n = pts.len();
    let out: Vec<Point> = match *p {
        Perturbation::Rotate { angle_deg } => {
            let ctr = c.centroid();
            let (s, co) = angle_deg.to_radians().sin_cos();
            pts.iter()
                .map(|q| {
                    let (dx, dy) = (q.x - ctr.x, q.y - ctr.y);
                    Point::new(ctr.x + dx * co - dy * s, ctr.y + dx * s + dy * co)
                })
                .collect()
        }
        Perturbation::Scale { factor } => {
            let ctr = c.centroid();
            pts.iter()
                .map(|q| Point::new(ctr.x + (q.x - ctr.x) * factor, ctr.y + (q.y - ctr.y) * factor))
                .collect()
        }
        Perturbation::Noise { level, seed } => {
            if level == 0 {
                return Ok(c.clone());
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let l = level as i64;
            pts.iter()
                .map(|q| {
                    let dx = rng.gen_range(-l..=l) as f64;
                    let dy = rng.gen_range(-l..=l) as f64;
                    Point::new(q.x + dx, q.y + dy)
                })
                .collect()
        }
        Perturbation::DegradeContinuous { fraction, seed } => {
            let m = removal_count(fraction, n)?;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let start = rng.gen_range(0..n);
            let mut keep = vec![true; n];
            for k in 0..m {
                keep[(start + k) % n] = false;
            }
            survivors(pts, &keep)
        }
        Perturbation::DegradeRandom { fraction, seed } => {
            let m = removal_count(fraction, n)?;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut keep = vec![true; n];
            for i in index::sample(&mut rng, n, m) {
                keep[i] = false;
            }
            survivors(pts, &keep)
        }
    };
    Ok(Contour::from_points_dedup(out)?.with_meta_of(c))
}

fn removal_count(fraction: f64, n: usize) -> Result<usize> {
    let m = (fraction * n as f64).floor() as usize;
    if m + 3 > n {
        return Err(Error::InvalidPerturbation(format!(
            "removing {m} of {n} points leaves fewer than 3"
        )));
    }
    Ok(m)
}

fn survivors(pts: &[Point], keep: &[bool]) -> Vec<Point> {
    pts.iter()
        .zip(keep)
        .filter_map(|(p, &k)| k.then_some(*p))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::shapes::{generate_shape, ShapeSpec};
    use proptest::prelude::*;

    #[test]
    fn per_sample_seeds() {
        let p = Perturbation::Noise { level: 2, seed: 9 };
        assert_eq!(p.for_sample(3), p.for_sample(3));
        assert_ne!(p.for_sample(3), p.for_sample(4));
        assert_ne!(p.for_sample(0), p);
        let r = Perturbation::Rotate { angle_deg: 7.0 };
        assert_eq!(r.for_sample(5), r);
    }

    fn pairwise(c: &Contour) -> Vec<f64> {
        let p = c.points();
        let mut d = Vec::new();
        for i in 0..p.len() {
            for j in i + 1..p.len() {
                d.push(p[i].dist(p[j]));
            }
        }
        d
    }

    fn circle(n: usize) -> Contour {
        generate_shape(&ShapeSpec::circle(n, 20.0)).unwrap()
    }

    #[test]
    fn resample_identity_on_uniform() {
        let c = circle(64);
        let r = resample(&c, 64).unwrap();
        for (p, q) in c.points().iter().zip(r.points()) {
            assert!(p.dist(*q) < 1e-9);
        }
    }

    #[test]
    fn resample_unit_square_corners() {
        let c = Contour::new(vec![
            Point::new(0.0, 0.0),
            Point::new(1.0, 0.0),
            Point::new(1.0, 1.0),
            Point::new(0.0, 1.0),
        ])
        .unwrap();
        let r = resample(&c, 4).unwrap();
        for (p, q) in c.points().iter().zip(r.points()) {
            assert!(p.dist(*q) < 1e-12);
        }
        let dense = resample(&c, 8).unwrap();
        assert!(dense.points()[1].dist(Point::new(0.5, 0.0)) < 1e-12);
    }

    #[test]
    fn resample_circle_stays_on_circle() {
        let r = resample(&circle(100), 50).unwrap();
        assert_eq!(r.len(), 50);
        assert_eq!(r.points()[0], circle(100).points()[0]);
        // Chord sagitta of the 100-gon bounds the deviation.
        let sag = 20.0 * (1.0 - (std::f64::consts::PI / 100.0).cos());
        for p in r.points() {
            let d = p.dist(Point::new(0.0, 0.0));
            assert!(d <= 20.0 + 1e-9 && d >= 20.0 - sag - 1e-9);
        }
        // Every other point of the 100-gon is a vertex, hence on the circle.
        for p in r.points() {
            assert!((p.dist(Point::new(0.0, 0.0)) - 20.0).abs() < 1e-6);
        }
    }

    #[test]
    fn interpolate_endpoints() {
        let a = circle(60);
        let b = generate_shape(&ShapeSpec::polygon(4, 80, 20.0).rotated(10.0)).unwrap();
        let m = 80;
        let ra = resample(&a, m).unwrap();
        let i0 = interpolate(&a, &b, 0.0).unwrap();
        for (p, q) in ra.points().iter().zip(i0.points()) {
            assert!(p.dist(*q) < 1e-9);
        }
        let i1 = interpolate(&a, &b, 1.0).unwrap();
        let rb = resample(&b, m).unwrap();
        let aligned = align(ra.points(), rb.points());
        for (p, q) in aligned.iter().zip(i1.points()) {
            assert!(p.dist(*q) < 1e-9);
        }
        assert!(interpolate(&a, &b, 1.5).is_err());
    }

    #[test]
    fn interpolate_circle_square_in_annulus() {
        let r = 20.0;
        let a = generate_shape(&ShapeSpec::circle(120, r)).unwrap();
        let b = generate_shape(&ShapeSpec::polygon(4, 120, r).rotated(45.0)).unwrap();
        let mid = interpolate(&a, &b, 0.5).unwrap();
        let half_side = r / 2f64.sqrt();
        for p in mid.points() {
            let rad = p.dist(Point::new(0.0, 0.0));
            // inside the circle, outside (or on) the inscribed axis-aligned square
            assert!(rad <= r + 1e-9, "{p:?} outside circle");
            assert!(p.x.abs().max(p.y.abs()) >= half_side - 1e-9, "{p:?} inside square");
        }
    }

    #[test]
    fn interpolate_alignment_handles_reversal() {
        let a = circle(40);
        let rev = Contour::new(a.points().iter().rev().copied().collect()).unwrap();
        let mid = interpolate(&a, &rev.rotate_start(7), 0.5).unwrap();
        let ra = resample(&a, 40).unwrap();
        for (p, q) in ra.points().iter().zip(mid.points()) {
            assert!(p.dist(*q) < 1e-9);
        }
    }

    #[test]
    fn rotate_full_turn_preserves_distances() {
        let c = generate_shape(&ShapeSpec::star(5, 0.4, 50, 30.0)).unwrap();
        let r = perturb(&c, &Perturbation::Rotate { angle_deg: 360.0 }).unwrap();
        for (a, b) in pairwise(&c).iter().zip(pairwise(&r)) {
            assert!((a - b).abs() <= 1e-9 * a);
        }
    }

    #[test]
    fn scale_doubles_distances() {
        let c = generate_shape(&ShapeSpec::polygon(5, 50, 30.0)).unwrap();
        let s = perturb(&c, &Perturbation::Scale { factor: 2.0 }).unwrap();
        for (a, b) in pairwise(&c).iter().zip(pairwise(&s)) {
            assert!((2.0 * a - b).abs() <= 1e-12 * b);
        }
    }

    #[test]
    fn zero_noise_is_identity() {
        let c = circle(30);
        assert_eq!(perturb(&c, &Perturbation::Noise { level: 0, seed: 9 }).unwrap(), c);
    }

    #[test]
    fn noise_offsets_are_bounded_integers() {
        let c = circle(200);
        let z = perturb(&c, &Perturbation::Noise { level: 2, seed: 1 }).unwrap();
        assert_eq!(z.len(), 200);
        for (p, q) in c.points().iter().zip(z.points()) {
            let (dx, dy) = (q.x - p.x, q.y - p.y);
            assert!(dx.abs() <= 2.0 + 1e-9 && dy.abs() <= 2.0 + 1e-9);
            assert!((dx - dx.round()).abs() < 1e-9 && (dy - dy.round()).abs() < 1e-9);
        }
    }

    #[test]
    fn degrade_random_count() {
        let c = circle(600);
        let d = perturb(&c, &Perturbation::DegradeRandom { fraction: 0.1, seed: 3 }).unwrap();
        assert_eq!(d.len(), 540);
        let d = perturb(&c, &Perturbation::DegradeContinuous { fraction: 0.1, seed: 3 }).unwrap();
        assert_eq!(d.len(), 540);
    }

    #[test]
    fn degrade_too_much_rejected() {
        let c = circle(10);
        assert!(perturb(&c, &Perturbation::DegradeRandom { fraction: 0.8, seed: 0 }).is_err());
        assert!(perturb(&c, &Perturbation::DegradeRandom { fraction: 1.0, seed: 0 }).is_err());
        assert!(perturb(&c, &Perturbation::Scale { factor: -1.0 }).is_err());
    }

    #[test]
    fn degrade_continuous_removes_one_run() {
        let c = circle(100);
        let d = perturb(&c, &Perturbation::DegradeContinuous { fraction: 0.25, seed: 11 }).unwrap();
        let idx: Vec<usize> = d
            .points()
            .iter()
            .map(|p| c.points().iter().position(|q| q == p).unwrap())
            .collect();
        // survivors form a single cyclic run: exactly one gap larger than one
        let gaps = (0..idx.len())
            .filter(|&i| (idx[(i + 1) % idx.len()] + 100 - idx[i]) % 100 != 1)
            .count();
        assert_eq!(gaps, 1);
    }

    #[test]
    fn degradation_levels_reach_half() {
        assert_eq!(Perturbation::degradation_fraction(17), 0.5);
        assert_eq!(Perturbation::degradation_fraction(1), 1.0 / 34.0);
    }

    proptest! {
        #[test]
        fn degrade_preserves_order(seed in any::<u64>(), frac in 0.0..0.9f64, cont in any::<bool>()) {
            let c = circle(80);
            let p = if cont {
                Perturbation::DegradeContinuous { fraction: frac, seed }
            } else {
                Perturbation::DegradeRandom { fraction: frac, seed }
            };
            let d = perturb(&c, &p).unwrap();
            let idx: Vec<usize> = d.points().iter()
                .map(|p| c.points().iter().position(|q| q == p).unwrap())
                .collect();
            prop_assert!(idx.windows(2).all(|w| w[0] < w[1]));
            prop_assert_eq!(d.len(), 80 - (frac * 80.0).floor() as usize);
            // bit-reproducible
            prop_assert_eq!(perturb(&c, &p).unwrap(), d);
        }

        #[test]
        fn rotation_is_isometry(angle in -720.0..720.0f64) {
            let c = generate_shape(&ShapeSpec::star(4, 0.3, 40, 15.0)).unwrap();
            let r = perturb(&c, &Perturbation::Rotate { angle_deg: angle }).unwrap();
            for (a, b) in pairwise(&c).iter().zip(pairwise(&r)) {
                prop_assert!((a - b).abs() <= 1e-9 * a);
            }
        }

        #[test]
        fn generate_then_resample_idempotent(sides in 3usize..9, per_side in 3usize..20, star in any::<bool>()) {
            let spec = if star {
                ShapeSpec::star(sides, 0.45, 2 * sides * per_side, 12.0)
            } else {
                ShapeSpec::polygon(sides, sides * per_side, 12.0)
            };
            let c = generate_shape(&spec).unwrap();
            let r = resample(&c, c.len()).unwrap();
            for (p, q) in c.points().iter().zip(r.points()) {
                prop_assert!(p.dist(*q) < 1e-9);
            }
        }
    }
}
