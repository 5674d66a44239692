//! Deterministic synthetic contours: circle samplers, radial Gaussian
//! noise, contamination injectors, and a washer-style dataset emulating a
//! serial-inspection run. Everything is a pure function of its arguments
//! including the seed, so repeated calls are bit-identical.

use crate::error::{Error, Result};
use crate::geom::{Circle, Point, PointSet};
use crate::rng::{mix_seed, XorShiftStar};
use crate::scalar::{cast, Real};
use serde::{Deserialize, Serialize};
use std::f64::consts::{PI, TAU};

/// Angular placement mode for [`sample_circle`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Jitter {
    /// `theta_k = 2 pi k / n`.
    Equispaced,
    /// Angles drawn uniformly from (-pi, pi].
    UniformRandom,
}

/// Shape of one injected contamination pattern.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ContaminationKind {
    /// Lone points at random angles.
    Isolated,
    /// A compact 2-D Gaussian cloud, dust-like.
    ClusterBlob,
    /// A contiguous arc riding off the true radius, burr-like.
    BurrArc,
}

/// Contamination recipe: how many points, how far off the true radius, and
/// (for blob/burr) how much angle they cover.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ContaminationSpec {
    pub kind: ContaminationKind,
    pub count: usize,
    /// Radial offset from the true radius, pixels.
    pub radial_offset: f64,
    /// Angular span in radians; ignored for `Isolated`.
    pub angular_span: f64,
}

/// One synthetic part: its contour, ground truth, and outlier bookkeeping.
#[derive(Debug, Clone, PartialEq)]
pub struct SyntheticWorkpiece<F> {
    pub points: PointSet<F>,
    pub truth: Circle<F>,
    pub true_diameter_mm: F,
    pub px_per_mm: F,
    /// Indices of injected contamination, sorted ascending.
    pub outlier_indices: Vec<usize>,
    /// Seed this part was generated from.
    pub seed: u64,
    /// Contamination pattern injected into this part, if any.
    pub contamination: Option<ContaminationSpec>,
}

/// Points per generated washer contour.
pub const POINTS_PER_PART: usize = 360;
/// Pixel scale of the synthetic camera.
pub const PX_PER_MM: f64 = 100.0;

/// Sample `n` points exactly on the circle locus.
pub fn sample_circle<F: Real>(
    c: &Circle<F>,
    n: usize,
    jitter: Jitter,
    seed: u64,
) -> Result<PointSet<F>> {
    if n == 0 {
        return Err(Error::BadCount("sample count must be >= 1".into()));
    }
    let mut rng = XorShiftStar::new(seed);
    let pts = (0..n)
        .map(|k| {
            let theta = match jitter {
                Jitter::Equispaced => TAU * k as f64 / n as f64,
                Jitter::UniformRandom => rng.range(-PI, PI),
            };
            let t = cast::<F>(theta);
            Point::new(c.a + c.r * t.cos(), c.b + c.r * t.sin())
        })
        .collect();
    Ok(PointSet::new_unchecked(pts))
}

/// Displace each point along its ray from `center` by a Gaussian sample of
/// standard deviation `sigma`. `sigma = 0` returns the input unchanged.
pub fn add_radial_noise<F: Real>(
    ps: &PointSet<F>,
    center: Point<F>,
    sigma: f64,
    seed: u64,
) -> PointSet<F> {
    assert!(sigma >= 0.0, "sigma must be non-negative");
    if sigma == 0.0 {
        return ps.clone();
    }
    let mut rng = XorShiftStar::new(seed);
    let pts = ps
        .iter()
        .map(|p| {
            let dx = p.x - center.x;
            let dy = p.y - center.y;
            let d = (dx * dx + dy * dy).sqrt();
            let (ux, uy) = if d > F::zero() {
                (dx / d, dy / d)
            } else {
                (F::one(), F::zero()) // ray of the centroid itself: theta = 0
            };
            let g = cast::<F>(sigma * rng.normal());
            Point::new(p.x + g * ux, p.y + g * uy)
        })
        .collect();
    PointSet::new_unchecked(pts)
}

/// Append contamination to a contour. Returns the extended point set and
/// the indices of the injected points (always the trailing range).
pub fn inject_outliers<F: Real>(
    ps: &PointSet<F>,
    truth: &Circle<F>,
    spec: &ContaminationSpec,
    seed: u64,
) -> (PointSet<F>, Vec<usize>) {
    if spec.count == 0 {
        return (ps.clone(), Vec::new());
    }
    let mut rng = XorShiftStar::new(seed);
    let mut pts: Vec<Point<F>> = ps.points().to_vec();
    let base = pts.len();
    let rho = truth.r + cast::<F>(spec.radial_offset);

    match spec.kind {
        ContaminationKind::Isolated => {
            for _ in 0..spec.count {
                let t = cast::<F>(rng.range(-PI, PI));
                pts.push(Point::new(truth.a + rho * t.cos(), truth.b + rho * t.sin()));
            }
        }
        ContaminationKind::ClusterBlob => {
            let theta_c = rng.range(-PI, PI);
            let cx = truth.a + rho * cast::<F>(theta_c.cos());
            let cy = truth.b + rho * cast::<F>(theta_c.sin());
            // spread chosen so ~2 sigma covers the requested angular span
            let sigma_blob = spec.angular_span * crate::scalar::to_f64(rho) / 4.0;
            for _ in 0..spec.count {
                let gx = cast::<F>(sigma_blob * rng.normal());
                let gy = cast::<F>(sigma_blob * rng.normal());
                pts.push(Point::new(cx + gx, cy + gy));
            }
        }
        ContaminationKind::BurrArc => {
            let theta0 = rng.range(-PI, PI);
            for j in 0..spec.count {
                let frac = if spec.count == 1 {
                    0.0
                } else {
                    j as f64 / (spec.count - 1) as f64
                };
                let t = cast::<F>(theta0 + spec.angular_span * frac);
                pts.push(Point::new(truth.a + rho * t.cos(), truth.b + rho * t.sin()));
            }
        }
    }
    let indices = (base..pts.len()).collect();
    (PointSet::new_unchecked(pts), indices)
}

/// Contamination mixture drawn per part. The shapes mimic the artifacts a
/// silhouette inspection sees (burrs, dust specks, films on the edge); the
/// rates and sizes are synthetic stand-ins, not calibrated to any
/// physical measurement, and are echoed in emitted metadata.
fn draw_contamination(rng: &mut XorShiftStar) -> Option<ContaminationSpec> {
    // offsets land in one of two regimes: subtle (inside typical consensus
    // thresholds) or gross
    let offset = |rng: &mut XorShiftStar| {
        if rng.next_f64() < 0.5 {
            rng.range(0.6, 1.5)
        } else {
            rng.range(2.0, 10.0)
        }
    };
    match rng.next_index(4) {
        0 => None,
        1 => Some(ContaminationSpec {
            kind: ContaminationKind::Isolated,
            count: rng.range_usize(3, 10),
            radial_offset: offset(rng),
            angular_span: 0.0,
        }),
        2 => Some(ContaminationSpec {
            kind: ContaminationKind::ClusterBlob,
            count: rng.range_usize(8, 15),
            radial_offset: offset(rng).max(1.5),
            angular_span: rng.range(0.1, 0.3),
        }),
        _ => Some(ContaminationSpec {
            kind: ContaminationKind::BurrArc,
            count: rng.range_usize(8, 15),
            radial_offset: offset(rng),
            angular_span: rng.range(0.15, 0.4),
        }),
    }
}

/// Generate a washer dataset: part diameters drawn in 23.7 +/- 0.1 mm at a
/// fixed 100 px/mm scale. Part 0 is a clean, noise-free reference for
/// calibration; the rest carry radial noise and the contamination mixture.
pub fn make_washer_dataset<F: Real>(
    num_parts: usize,
    seed: u64,
) -> Result<Vec<SyntheticWorkpiece<F>>> {
    if num_parts < 2 {
        return Err(Error::BadCount(
            "need at least a reference part and one measured part".into(),
        ));
    }
    (0..num_parts)
        .map(|i| {
            let part_seed = mix_seed(seed, i as u64);
            let mut rng = XorShiftStar::new(part_seed);

            let diameter_mm = rng.range(23.6, 23.8);
            let radius_px = diameter_mm * PX_PER_MM / 2.0;
            let truth = Circle::new(
                cast::<F>(1250.0 + rng.range(-20.0, 20.0)),
                cast::<F>(1250.0 + rng.range(-20.0, 20.0)),
                cast::<F>(radius_px),
            );

            let base = sample_circle(&truth, POINTS_PER_PART, Jitter::Equispaced, part_seed)?;
            let (points, outlier_indices, contamination) = if i == 0 {
                (base, Vec::new(), None)
            } else {
                let sigma = rng.range(0.02, 0.08);
                let contamination = draw_contamination(&mut rng);
                let noisy = add_radial_noise(
                    &base,
                    truth.center(),
                    sigma,
                    mix_seed(part_seed, 1),
                );
                match &contamination {
                    Some(spec) => {
                        let (pts, idx) = inject_outliers(&noisy, &truth, spec, mix_seed(part_seed, 2));
                        (pts, idx, contamination)
                    }
                    None => (noisy, Vec::new(), None),
                }
            };

            Ok(SyntheticWorkpiece {
                points,
                truth,
                true_diameter_mm: cast(diameter_mm),
                px_per_mm: cast(PX_PER_MM),
                outlier_indices,
                seed: part_seed,
                contamination,
            })
        })
        .collect()
}
