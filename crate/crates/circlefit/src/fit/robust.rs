//! Consensus- and reweighting-based fitters. RANSAC and LMedS draw minimal
//! triplets from the seeded PRNG, so identical `(points, config)` inputs
//! give bit-identical results. IRLS and the M-estimator iterate damped
//! Gauss-Newton steps on the weighted geometric objective, with Huber
//! weights; they differ only in when the Huber threshold is fixed.

use super::{fit_lsf, FitConfig, FitResult};
use crate::error::{Error, Result};
use crate::geom::{circle_from_three_points, Circle, Point, PointSet};
use crate::linalg::solve_sym3;
use crate::rng::XorShiftStar;
use crate::scalar::{cast, Real};
use crate::stats::{median, median_in_place};

/// Weighted geometric cost `sum w_i (d_i - R)^2`.
fn weighted_cost<F: Real>(pts: &[Point<F>], w: &[F], c: &Circle<F>) -> F {
    pts.iter()
        .zip(w)
        .map(|(p, &wi)| {
            let r = c.residual(p);
            wi * r * r
        })
        .sum()
}

/// One Gauss-Newton step on the weighted geometric objective, damped by
/// step halving whenever the full step does not decrease the cost.
fn damped_gauss_newton_step<F: Real>(
    pts: &[Point<F>],
    w: &[F],
    c: &Circle<F>,
) -> Result<Circle<F>> {
    let tiny = cast::<F>(1e-300);
    let mut jtj = [[F::zero(); 3]; 3];
    let mut jtr = [F::zero(); 3];
    for (p, &wi) in pts.iter().zip(w) {
        let dx = p.x - c.a;
        let dy = p.y - c.b;
        let d = (dx * dx + dy * dy).sqrt();
        let (ux, uy) = if d > tiny {
            (dx / d, dy / d)
        } else {
            (F::zero(), F::zero())
        };
        let r = d - c.r;
        // residual jacobian row: [-ux, -uy, -1]
        let j = [-ux, -uy, -F::one()];
        for i in 0..3 {
            for k in 0..3 {
                jtj[i][k] += wi * j[i] * j[k];
            }
            jtr[i] += wi * j[i] * r;
        }
    }
    let step = solve_sym3(jtj, [-jtr[0], -jtr[1], -jtr[2]])?;

    let base_cost = weighted_cost(pts, w, c);
    let mut scale = F::one();
    for _ in 0..30 {
        let cand = Circle::new(
            c.a + step[0] * scale,
            c.b + step[1] * scale,
            c.r + step[2] * scale,
        );
        if cand.r > F::zero() && weighted_cost(pts, w, &cand) <= base_cost {
            return Ok(cand);
        }
        scale = scale * cast::<F>(0.5);
    }
    Ok(*c)
}

/// Huber weights: 1 inside the threshold, `delta / |r|` outside.
fn huber_weights<F: Real>(residuals: &[F], delta: F) -> Vec<F> {
    residuals
        .iter()
        .map(|r| {
            let a = r.abs();
            if a <= delta {
                F::one()
            } else {
                delta / a
            }
        })
        .collect()
}

/// Robust residual scale: 1.4826 times the median absolute deviation about
/// the median. Floored by a tiny radius-relative epsilon so that noiseless
/// data (MAD at rounding level) does not zero out every weight.
fn robust_delta<F: Real>(residuals: &[F], factor: F, radius: F) -> F {
    let med = median(residuals);
    let mut dev: Vec<F> = residuals.iter().map(|r| (*r - med).abs()).collect();
    let mad = median_in_place(&mut dev);
    let scale = cast::<F>(1.4826) * mad;
    (factor * scale).max(cast::<F>(1e-9) * (F::one() + radius.abs()))
}

enum DeltaPolicy {
    /// Threshold frozen from the residuals of the initial algebraic fit.
    FixedFromInit,
    /// Threshold re-estimated from the current residuals every iteration.
    Adaptive,
}

fn reweighted_fit<F: Real>(
    ps: &PointSet<F>,
    cfg: &FitConfig,
    policy: DeltaPolicy,
) -> Result<FitResult<F>> {
    let init = fit_lsf(ps)?;
    let pts = ps.points();
    let factor = cast::<F>(cfg.irls_delta_factor);
    let tol = cast::<F>(cfg.convergence_tol);

    let mut circle = init.circle;
    let mut residuals: Vec<F> = pts.iter().map(|p| circle.residual(p)).collect();
    let fixed_delta = match policy {
        DeltaPolicy::FixedFromInit => Some(robust_delta(&residuals, factor, circle.r)),
        DeltaPolicy::Adaptive => None,
    };

    let mut iterations = 0;
    let mut converged = false;
    while iterations < cfg.max_irls_iterations {
        iterations += 1;
        let delta = match fixed_delta {
            Some(d) => d,
            None => robust_delta(&residuals, factor, circle.r),
        };
        let weights = huber_weights(&residuals, delta);
        let next = damped_gauss_newton_step(pts, &weights, &circle)?;
        let change = (next.a - circle.a)
            .abs()
            .max((next.b - circle.b).abs())
            .max((next.r - circle.r).abs());
        circle = next;
        residuals = pts.iter().map(|p| circle.residual(p)).collect();
        if change < tol {
            converged = true;
            break;
        }
    }

    Ok(FitResult {
        circle,
        iterations,
        converged,
        inlier_count: ps.len(),
    })
}

/// Iteratively reweighted least squares with Huber weights. The threshold
/// is set once, from the robust scale of the initial fit's residuals.
pub fn fit_irls<F: Real>(ps: &PointSet<F>, cfg: &FitConfig) -> Result<FitResult<F>> {
    reweighted_fit(ps, cfg, DeltaPolicy::FixedFromInit)
}

/// Huber M-estimator: like IRLS, but the threshold tracks the robust scale
/// of the current residuals at every iteration.
pub fn fit_mestimator<F: Real>(ps: &PointSet<F>, cfg: &FitConfig) -> Result<FitResult<F>> {
    reweighted_fit(ps, cfg, DeltaPolicy::Adaptive)
}

fn draw_triplet(rng: &mut XorShiftStar, n: usize) -> [usize; 3] {
    let i = rng.next_index(n);
    let j = loop {
        let j = rng.next_index(n);
        if j != i {
            break j;
        }
    };
    let k = loop {
        let k = rng.next_index(n);
        if k != i && k != j {
            break k;
        }
    };
    [i, j, k]
}

/// RANSAC: sample minimal triplets, score by consensus under the absolute
/// radial threshold `d_i < epsilon`, and refit the winner by [`fit_lsf`] on
/// its consensus set. Collinear triplets are discarded but still consume
/// iteration budget. Ties keep the earliest model.
pub fn fit_ransac<F: Real>(ps: &PointSet<F>, cfg: &FitConfig) -> Result<FitResult<F>> {
    let n = ps.len();
    if n < 3 {
        return Err(Error::TooFewPoints { needed: 3, got: n });
    }
    let pts = ps.points();
    let eps = cast::<F>(cfg.ransac_epsilon);
    let mut rng = XorShiftStar::new(cfg.rng_seed);

    let mut best: Option<(usize, Circle<F>)> = None;
    for _ in 0..cfg.ransac_iterations {
        let [i, j, k] = draw_triplet(&mut rng, n);
        let Ok(candidate) = circle_from_three_points(pts[i], pts[j], pts[k]) else {
            continue;
        };
        let count = pts
            .iter()
            .filter(|p| candidate.residual(p).abs() < eps)
            .count();
        if best.as_ref().map_or(true, |(c, _)| count > *c) {
            best = Some((count, candidate));
        }
    }
    let (inlier_count, model) = best.ok_or(Error::NoModelFound)?;

    let consensus: Vec<Point<F>> = pts
        .iter()
        .copied()
        .filter(|p| model.residual(p).abs() < eps)
        .collect();
    let refit = fit_lsf(&PointSet::new_unchecked(consensus))?;

    Ok(FitResult {
        circle: refit.circle,
        iterations: cfg.ransac_iterations,
        converged: inlier_count >= 3,
        inlier_count,
    })
}

/// Least median of squares: among sampled triplet circles, keep the one
/// with the smallest median squared residual over all points. The winning
/// triplet circle is returned as-is, without refitting.
pub fn fit_lmeds<F: Real>(ps: &PointSet<F>, cfg: &FitConfig) -> Result<FitResult<F>> {
    let n = ps.len();
    if n < 3 {
        return Err(Error::TooFewPoints { needed: 3, got: n });
    }
    let pts = ps.points();
    let mut rng = XorShiftStar::new(cfg.rng_seed);

    let mut scratch = vec![F::zero(); n];
    let mut best: Option<(F, Circle<F>)> = None;
    for _ in 0..cfg.lmeds_samples {
        let [i, j, k] = draw_triplet(&mut rng, n);
        let Ok(candidate) = circle_from_three_points(pts[i], pts[j], pts[k]) else {
            continue;
        };
        for (slot, p) in scratch.iter_mut().zip(pts) {
            let r = candidate.residual(p);
            *slot = r * r;
        }
        let med = median_in_place(&mut scratch);
        if best.as_ref().map_or(true, |(m, _)| med < *m) {
            best = Some((med, candidate));
        }
    }
    let (_, circle) = best.ok_or(Error::NoModelFound)?;

    Ok(FitResult {
        circle,
        iterations: cfg.lmeds_samples,
        converged: true,
        inlier_count: n,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::TAU;

    fn unit4() -> PointSet<f64> {
        PointSet::from_xy(&[(1.0, 0.0), (0.0, 1.0), (-1.0, 0.0), (0.0, -1.0)]).unwrap()
    }

    fn clean_with_ring(extra: usize, radius: f64) -> PointSet<f64> {
        // 360 clean samples of (12.5, -7.25, 100) plus `extra` points on a
        // concentric ring of the given radius
        let mut pts: Vec<(f64, f64)> = (0..360)
            .map(|k| {
                let t = TAU * k as f64 / 360.0;
                (12.5 + 100.0 * t.cos(), -7.25 + 100.0 * t.sin())
            })
            .collect();
        for k in 0..extra {
            let t = TAU * k as f64 / extra as f64;
            pts.push((12.5 + radius * t.cos(), -7.25 + radius * t.sin()));
        }
        PointSet::from_xy(&pts).unwrap()
    }

    fn cfg_with_seed(seed: u64) -> FitConfig {
        FitConfig {
            rng_seed: seed,
            ..FitConfig::default()
        }
    }

    #[test]
    fn ransac_unit4() {
        for seed in [1u64, 2, 99] {
            let res = fit_ransac(&unit4(), &cfg_with_seed(seed)).unwrap();
            assert!(res.circle.a.abs() < 1e-9);
            assert!(res.circle.b.abs() < 1e-9);
            assert!((res.circle.r - 1.0).abs() < 1e-9);
            assert_eq!(res.inlier_count, 4);
            assert!(res.converged);
        }
    }

    #[test]
    fn ransac_excludes_contaminants() {
        let ps = clean_with_ring(40, 130.0);
        let res = fit_ransac(&ps, &cfg_with_seed(7)).unwrap();
        assert!((res.circle.a - 12.5).abs() < 1e-6);
        assert!((res.circle.b + 7.25).abs() < 1e-6);
        assert!((res.circle.r - 100.0).abs() < 1e-6);
        assert_eq!(res.inlier_count, 360);
        // every contaminant sits far outside the inlier band
        for p in &ps.points()[360..] {
            assert!(res.circle.residual(p).abs() > 1.0);
        }
    }

    #[test]
    fn ransac_too_few_points() {
        let ps = PointSet::from_xy(&[(0.0, 0.0), (1.0, 1.0)]).unwrap();
        assert!(matches!(
            fit_ransac(&ps, &FitConfig::default()),
            Err(Error::TooFewPoints { needed: 3, got: 2 })
        ));
    }

    #[test]
    fn ransac_all_collinear_finds_no_model() {
        let ps = PointSet::from_xy(&[(0.0, 0.0), (1.0, 0.0), (2.0, 0.0), (3.0, 0.0)]).unwrap();
        assert!(matches!(
            fit_ransac(&ps, &cfg_with_seed(5)),
            Err(Error::NoModelFound)
        ));
    }

    #[test]
    fn irls_clean_contour_exact() {
        let res = fit_irls(&clean_with_ring(0, 0.0), &FitConfig::default()).unwrap();
        assert!((res.circle.a - 12.5).abs() < 1e-9);
        assert!((res.circle.b + 7.25).abs() < 1e-9);
        assert!((res.circle.r - 100.0).abs() < 1e-9);
        assert!(res.converged);
        assert!(res.iterations <= 5, "iterations {}", res.iterations);
    }

    #[test]
    fn irls_downweights_outlier_ring() {
        let res = fit_irls(&clean_with_ring(10, 120.0), &FitConfig::default()).unwrap();
        assert!((res.circle.a - 12.5).abs() < 1e-2);
        assert!((res.circle.b + 7.25).abs() < 1e-2);
        assert!((res.circle.r - 100.0).abs() < 1e-2);
    }

    #[test]
    fn irls_unit4() {
        let res = fit_irls(&unit4(), &FitConfig::default()).unwrap();
        assert!(res.circle.a.abs() < 1e-9);
        assert!((res.circle.r - 1.0).abs() < 1e-9);
    }

    #[test]
    fn mestimator_clean_exact() {
        let res = fit_mestimator(&clean_with_ring(0, 0.0), &FitConfig::default()).unwrap();
        assert!((res.circle.r - 100.0).abs() < 1e-9);
        assert!(res.converged);
    }

    #[test]
    fn mestimator_rejects_outlier_ring() {
        let res = fit_mestimator(&clean_with_ring(10, 120.0), &FitConfig::default()).unwrap();
        assert!((res.circle.a - 12.5).abs() < 1e-2);
        assert!((res.circle.b + 7.25).abs() < 1e-2);
        assert!((res.circle.r - 100.0).abs() < 1e-2);
    }

    #[test]
    fn mestimator_quadratic_zone_matches_plain_fixed_point() {
        // all residuals stay below delta -> weights all one -> the result is
        // the unweighted geometric fixed point
        let mut rng = crate::rng::XorShiftStar::new(8);
        let pts: Vec<(f64, f64)> = (0..120)
            .map(|k| {
                let t = TAU * k as f64 / 120.0;
                let r = 10.0 + 0.001 * rng.normal();
                (r * t.cos(), r * t.sin())
            })
            .collect();
        let ps = PointSet::from_xy(&pts).unwrap();
        let cfg = FitConfig {
            irls_delta_factor: 1e6, // force the quadratic zone
            ..FitConfig::default()
        };
        let m = fit_mestimator(&ps, &cfg).unwrap();
        // unweighted Gauss-Newton fixed point from the same start
        let mut c = fit_lsf(&ps).unwrap().circle;
        let w = vec![1.0; ps.len()];
        for _ in 0..100 {
            let next = damped_gauss_newton_step(ps.points(), &w, &c).unwrap();
            let change = (next.a - c.a)
                .abs()
                .max((next.b - c.b).abs())
                .max((next.r - c.r).abs());
            c = next;
            if change < cfg.convergence_tol {
                break;
            }
        }
        assert!((m.circle.a - c.a).abs() < 1e-9);
        assert!((m.circle.b - c.b).abs() < 1e-9);
        assert!((m.circle.r - c.r).abs() < 1e-9);
    }

    #[test]
    fn lmeds_unit4() {
        let res = fit_lmeds(&unit4(), &cfg_with_seed(3)).unwrap();
        assert!(res.circle.a.abs() < 1e-9);
        assert!((res.circle.r - 1.0).abs() < 1e-9);
        assert_eq!(res.inlier_count, 4);
    }

    #[test]
    fn lmeds_survives_45_percent_contamination() {
        // shift a contiguous 45% arc of the clean contour out to radius 130
        let mut pts: Vec<(f64, f64)> = (0..360)
            .map(|k| {
                let t = TAU * k as f64 / 360.0;
                let r = if k < 162 { 130.0 } else { 100.0 };
                (12.5 + r * t.cos(), -7.25 + r * t.sin())
            })
            .collect();
        pts.rotate_left(77); // arbitrary rotation; order must not matter
        let ps = PointSet::from_xy(&pts).unwrap();
        let res = fit_lmeds(&ps, &cfg_with_seed(3)).unwrap();
        assert!((res.circle.r - 100.0).abs() < 0.5, "r {}", res.circle.r);
    }

    #[test]
    fn lmeds_three_points_is_circumcircle() {
        let ps = PointSet::<f64>::from_xy(&[(1.0, 0.0), (0.0, 1.0), (-1.0, 0.0)]).unwrap();
        let res = fit_lmeds(&ps, &cfg_with_seed(1)).unwrap();
        assert!((res.circle.r - 1.0).abs() < 1e-12);
        let med: f64 = {
            let mut sq: Vec<f64> = ps
                .iter()
                .map(|p| {
                    let r = res.circle.residual(p);
                    r * r
                })
                .collect();
            crate::stats::median_in_place(&mut sq)
        };
        assert!(med < 1e-24);
    }

    #[test]
    fn seeded_methods_are_bit_deterministic() {
        let ps = clean_with_ring(40, 130.0);
        let cfg = cfg_with_seed(7);
        let a = fit_ransac(&ps, &cfg).unwrap();
        let b = fit_ransac(&ps, &cfg).unwrap();
        assert_eq!(a, b);
        let a = fit_lmeds(&ps, &cfg).unwrap();
        let b = fit_lmeds(&ps, &cfg).unwrap();
        assert_eq!(a, b);
    }
}
