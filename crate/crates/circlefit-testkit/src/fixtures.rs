//! Canonical point-set fixtures used across the test suites.

use circlefit::synth::{add_radial_noise, sample_circle, Jitter};
use circlefit::{Circle64, Point64, PointSet64};
use std::f64::consts::TAU;

/// Ground truth of the clean/noisy contour fixtures.
pub fn truth() -> Circle64 {
    Circle64::new(12.5, -7.25, 100.0)
}

/// The four axis points of the unit circle.
pub fn f_unit4() -> PointSet64 {
    PointSet64::from_xy(&[(1.0, 0.0), (0.0, 1.0), (-1.0, 0.0), (0.0, -1.0)]).unwrap()
}

/// 360 equispaced noiseless samples of circle (12.5, -7.25, 100).
pub fn f_clean() -> PointSet64 {
    sample_circle(&truth(), 360, Jitter::Equispaced, 0).unwrap()
}

/// `f_clean` with Gaussian radial noise, sigma = 0.05 px, seed 42.
pub fn f_noisy() -> PointSet64 {
    add_radial_noise(&f_clean(), truth().center(), 0.05, 42)
}

/// `f_clean` plus an appended burr arc: `count` points at radius
/// `100 + offset`, equispaced over `[theta0, theta0 + span]`. Returns the
/// point set and the injected indices.
pub fn clean_plus_burr(count: usize, offset: f64, theta0: f64, span: f64) -> (PointSet64, Vec<usize>) {
    let t = truth();
    let mut pts: Vec<Point64> = f_clean().points().to_vec();
    let base = pts.len();
    for j in 0..count {
        let frac = if count == 1 {
            0.0
        } else {
            j as f64 / (count - 1) as f64
        };
        let ang = theta0 + span * frac;
        pts.push(Point64::new(
            t.a + (t.r + offset) * ang.cos(),
            t.b + (t.r + offset) * ang.sin(),
        ));
    }
    let idx = (base..pts.len()).collect();
    (PointSet64::new(pts).unwrap(), idx)
}

/// A generic circle sampled without the fixture constants.
pub fn ring(center: (f64, f64), radius: f64, n: usize) -> PointSet64 {
    let pts: Vec<Point64> = (0..n)
        .map(|k| {
            let t = TAU * k as f64 / n as f64;
            Point64::new(center.0 + radius * t.cos(), center.1 + radius * t.sin())
        })
        .collect();
    PointSet64::new(pts).unwrap()
}
