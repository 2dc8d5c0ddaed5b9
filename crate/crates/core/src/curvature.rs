//! Curvature of a closed contour by Fourier-domain differentiation.
//!
//! The contour is read as the complex signal `u = x + i y`, low-pass
//! filtered with a Gaussian in frequency, and differentiated by
//! multiplying its spectrum by `i w` and `(i w)^2`. Smoothing shrinks the
//! curve, so the result is rescaled by the ratio of smoothed to original
//! perimeter.

use std::f64::consts::PI;
use std::fmt::Write as _;

use rustfft::num_complex::Complex64;
use rustfft::FftPlanner;

use crate::error::{Error, Result};
use crate::shapes::Contour;
use crate::stats;

const EPS: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct CurvatureSignal {
    pub values: Vec<f64>,
    /// Gaussian standard deviation in spectral bins.
    pub sigma: f64,
    pub normalized: bool,
    /// Set when a near-zero derivative forced the denominator guard, or
    /// when normalizing a constant signal.
    pub degenerate: bool,
}

impl CurvatureSignal {
    /// CSV with header `index,curvature`.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("index,curvature\n");
        for (i, v) in self.values.iter().enumerate() {
            let _ = writeln!(s, "{i},{v}");
        }
        s
    }
}

/// Default smoothing: `N / 64` spectral bins.
pub fn default_sigma(n: usize) -> f64 {
    n as f64 / 64.0
}

/// Signed curvature per point. The sign is relative to the enclosed
/// region: convex stretches are positive whichever way the contour runs.
pub fn curvature_signal(c: &Contour, sigma: f64) -> Result<CurvatureSignal> {
    let n = c.len();
    if n < 8 {
        return Err(Error::CurvatureTooShort(n));
    }
    if !(sigma.is_finite() && sigma > 0.0) {
        return Err(Error::InvalidSigma(sigma));
    }
    let mut planner = FftPlanner::<f64>::new();
    let forward = planner.plan_fft_forward(n);
    let inverse = planner.plan_fft_inverse(n);

    let mut spectrum: Vec<Complex64> = c.points().iter().map(|p| Complex64::new(p.x, p.y)).collect();
    forward.process(&mut spectrum);

    let mut d1 = vec![Complex64::new(0.0, 0.0); n];
    let mut d2 = vec![Complex64::new(0.0, 0.0); n];
    for k in 0..n {
        // The Nyquist bin of an even-length signal has no well-defined
        // derivative; drop it.
        if 2 * k == n {
            continue;
        }
        let f = if 2 * k < n { k as f64 } else { k as f64 - n as f64 };
        let gain = (-f * f / (2.0 * sigma * sigma)).exp();
        let w = 2.0 * PI * f / n as f64;
        let s = spectrum[k] * gain;
        d1[k] = s * Complex64::new(0.0, w);
        d2[k] = s * (-w * w);
    }
    inverse.process(&mut d1);
    inverse.process(&mut d2);
    let scale = 1.0 / n as f64;

    let mut degenerate = false;
    let mut smoothed_len = 0.0;
    let mut raw: Vec<f64> = Vec::with_capacity(n);
    for k in 0..n {
        let (xp, yp) = (d1[k].re * scale, d1[k].im * scale);
        let (xpp, ypp) = (d2[k].re * scale, d2[k].im * scale);
        let speed = xp.hypot(yp);
        smoothed_len += speed;
        let mut den = speed * speed * speed;
        if speed < EPS {
            degenerate = true;
            den = den.max(EPS);
        }
        raw.push((xp * ypp - yp * xpp) / den);
    }
    let orient = if c.signed_area() < 0.0 { -1.0 } else { 1.0 };
    let shrink = smoothed_len / c.perimeter();
    let values = raw.into_iter().map(|k| orient * k * shrink).collect();
    Ok(CurvatureSignal {
        values,
        sigma,
        normalized: false,
        degenerate,
    })
}

/// Min–max rescale to `[0, 1]`; a constant signal becomes all `0.5` and is
/// flagged degenerate.
pub fn normalize_signal(s: &CurvatureSignal) -> CurvatureSignal {
    let (values, ok) = stats::min_max(&s.values);
    CurvatureSignal {
        values,
        sigma: s.sigma,
        normalized: true,
        degenerate: s.degenerate || !ok,
    }
}

/// Indices of cyclic local maxima of `|values|` that rise at least half way
/// from the minimum to the maximum magnitude.
pub fn dominant_peaks(values: &[f64]) -> Vec<usize> {
    let n = values.len();
    let mag: Vec<f64> = values.iter().map(|v| v.abs()).collect();
    let lo = mag.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = mag.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let cut = lo + 0.5 * (hi - lo);
    (0..n)
        .filter(|&i| {
            let (a, b, c) = (mag[(i + n - 1) % n], mag[i], mag[(i + 1) % n]);
            b > cut && b >= a && b > c
        })
        .collect()
}
