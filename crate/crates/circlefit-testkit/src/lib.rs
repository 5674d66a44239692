//! Test support for the circlefit workspace: shared fixtures and slow,
//! obviously-correct reference implementations used to cross-check the
//! production code. Everything here is written for clarity, not speed, and
//! deliberately avoids the production code paths it verifies.

pub mod fixtures;
pub mod oracle;

use circlefit::{Circle64, Point64, PointSet64};

/// Max absolute difference across the three circle parameters.
pub fn circle_gap(a: &Circle64, b: &Circle64) -> f64 {
    (a.a - b.a).abs().max((a.b - b.b).abs()).max((a.r - b.r).abs())
}

/// Translate every point by `(dx, dy)`.
pub fn translate(ps: &PointSet64, dx: f64, dy: f64) -> PointSet64 {
    PointSet64::new(
        ps.iter()
            .map(|p| Point64::new(p.x + dx, p.y + dy))
            .collect(),
    )
    .unwrap()
}

/// Rotate every point about the origin by `phi` radians.
pub fn rotate(ps: &PointSet64, phi: f64) -> PointSet64 {
    let (s, c) = phi.sin_cos();
    PointSet64::new(
        ps.iter()
            .map(|p| Point64::new(c * p.x - s * p.y, s * p.x + c * p.y))
            .collect(),
    )
    .unwrap()
}

/// Scale every point about the origin by `s`.
pub fn scale(ps: &PointSet64, s: f64) -> PointSet64 {
    PointSet64::new(ps.iter().map(|p| Point64::new(s * p.x, s * p.y)).collect()).unwrap()
}
