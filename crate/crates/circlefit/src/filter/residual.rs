//! Residual-based removal: Z-score, MAD score, and percentile bounds, all
//! computed on signed radial residuals against the preliminary circle.

use super::{preliminary_circle, FilterConfig, FilterMethod, FilterReport};
use crate::error::Result;
use crate::geom::{residuals, PointSet};
use crate::scalar::{cast, Real};
use crate::stats::{median, median_in_place, percentile_sorted};

/// Indices whose z-score magnitude exceeds `tau`. Population standard
/// deviation; a deviation below 1e-15 flags nothing.
pub(crate) fn zscore_removed<F: Real>(res: &[F], tau: F) -> Vec<usize> {
    let n = cast::<F>(res.len() as f64);
    let mean = res.iter().copied().sum::<F>() / n;
    let var = res.iter().map(|r| (*r - mean) * (*r - mean)).sum::<F>() / n;
    let sd = var.sqrt();
    if sd < cast::<F>(1e-15) {
        return Vec::new();
    }
    res.iter()
        .enumerate()
        .filter(|(_, r)| ((**r - mean) / sd).abs() > tau)
        .map(|(i, _)| i)
        .collect()
}

/// Indices whose MAD score `|r - median| / (MAD + eps)` exceeds `tau`.
pub(crate) fn mad_removed<F: Real>(res: &[F], tau: F, eps: F) -> Vec<usize> {
    let med = median(res);
    let mut dev: Vec<F> = res.iter().map(|r| (*r - med).abs()).collect();
    let mad = median_in_place(&mut dev);
    let denom = mad + eps;
    res.iter()
        .enumerate()
        .filter(|(_, r)| (**r - med).abs() / denom > tau)
        .map(|(i, _)| i)
        .collect()
}

/// Indices strictly outside the interpolated `[lo, hi]` percentile bounds
/// of the signed residuals. A residual spread at rounding level keeps
/// everything: with mathematically equal residuals the interval is
/// degenerate but inclusive, and floating-point dust must not break that.
pub(crate) fn percentile_removed<F: Real>(res: &[F], lo_pct: f64, hi_pct: f64) -> Vec<usize> {
    let mut sorted = res.to_vec();
    sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let span = sorted[sorted.len() - 1] - sorted[0];
    let scale = sorted
        .iter()
        .fold(F::zero(), |m, r| m.max(r.abs()))
        .max(F::one());
    if span <= cast::<F>(1e-12) * scale {
        return Vec::new();
    }
    let lo = percentile_sorted(&sorted, lo_pct);
    let hi = percentile_sorted(&sorted, hi_pct);
    res.iter()
        .enumerate()
        .filter(|(_, r)| **r < lo || **r > hi)
        .map(|(i, _)| i)
        .collect()
}

/// Z-score filter on radial residuals.
pub fn filter_zscore<F: Real>(ps: &PointSet<F>, cfg: &FilterConfig) -> Result<FilterReport<F>> {
    let circle = preliminary_circle(ps)?;
    let res = residuals(ps, &circle);
    let removed = zscore_removed(&res, cast(cfg.zscore_tau));
    Ok(FilterReport::from_removed(ps, removed, FilterMethod::ZScore))
}

/// Median-absolute-deviation filter on radial residuals.
pub fn filter_mad<F: Real>(ps: &PointSet<F>, cfg: &FilterConfig) -> Result<FilterReport<F>> {
    let circle = preliminary_circle(ps)?;
    let res = residuals(ps, &circle);
    let removed = mad_removed(&res, cast(cfg.mad_tau), cast(cfg.mad_epsilon));
    Ok(FilterReport::from_removed(ps, removed, FilterMethod::Mad))
}

/// Percentile filter on signed radial residuals.
pub fn filter_percentile<F: Real>(ps: &PointSet<F>, cfg: &FilterConfig) -> Result<FilterReport<F>> {
    let circle = preliminary_circle(ps)?;
    let res = residuals(ps, &circle);
    let removed = percentile_removed(&res, cfg.percentile_lo, cfg.percentile_hi);
    Ok(FilterReport::from_removed(
        ps,
        removed,
        FilterMethod::Percentile,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::Point;
    use std::f64::consts::TAU;

    fn clean_plus(extra: &[(f64, f64)]) -> PointSet<f64> {
        let mut pts: Vec<(f64, f64)> = (0..360)
            .map(|k| {
                let t = TAU * k as f64 / 360.0;
                (12.5 + 100.0 * t.cos(), -7.25 + 100.0 * t.sin())
            })
            .collect();
        pts.extend_from_slice(extra);
        PointSet::from_xy(&pts).unwrap()
    }

    #[test]
    fn zscore_zero_variance_guard() {
        let ps = clean_plus(&[]);
        let rep = filter_zscore(&ps, &FilterConfig::default()).unwrap();
        assert!(rep.removed_indices.is_empty());
    }

    #[test]
    fn zscore_flags_far_point() {
        // one point at radius 200 on the contour of radius 100
        let ps = clean_plus(&[(12.5 + 200.0, -7.25)]);
        let rep = filter_zscore(&ps, &FilterConfig::default()).unwrap();
        assert_eq!(rep.removed_indices, vec![360]);
        // cross-check against the printed formula on this fixture
        let circle = preliminary_circle(&ps).unwrap();
        let res = residuals(&ps, &circle);
        let n = res.len() as f64;
        let mean = res.iter().sum::<f64>() / n;
        let sd = (res.iter().map(|r| (r - mean).powi(2)).sum::<f64>() / n).sqrt();
        let flagged: Vec<usize> = res
            .iter()
            .enumerate()
            .filter(|(_, r)| ((*r - mean) / sd).abs() > 3.0)
            .map(|(i, _)| i)
            .collect();
        assert_eq!(rep.removed_indices, flagged);
    }

    #[test]
    fn zscore_rule_small_symmetric_noise() {
        // residual vector {0,0,0,0, small symmetric pair} keeps everything
        let res = vec![0.0, 0.0, 0.0, 0.0, 0.01, -0.01];
        assert!(zscore_removed(&res, 3.0).is_empty());
        // max |z| for a lone nonzero residual among zeros exceeds tau = 2
        let res = vec![0.0, 0.0, 0.0, 0.0, 1.0];
        assert_eq!(zscore_removed(&res, 1.9), vec![4]);
    }

    #[test]
    fn mad_rule_hand_cases() {
        // residuals {0,0,0,0,10}: MAD = 0, score of the last ~ 1e13 > 3
        assert_eq!(mad_removed(&[0.0, 0.0, 0.0, 0.0, 10.0], 3.0, 1e-12), vec![4]);
        // residuals {-1,0,1}: MAD = 1, all scores <= 1
        assert!(mad_removed(&[-1.0, 0.0, 1.0], 3.0, 1e-12).is_empty());
    }

    #[test]
    fn mad_keeps_clean_contour() {
        let rep = filter_mad(&clean_plus(&[]), &FilterConfig::default()).unwrap();
        assert!(rep.removed_indices.is_empty());
    }

    #[test]
    fn percentile_rule_three_distinct() {
        // interpolated bounds always keep the middle order statistic
        let removed = percentile_removed(&[5.0, -2.0, 1.0], 2.275, 97.725);
        assert!(removed.len() <= 2);
        assert!(!removed.contains(&2));
        // and both extremes go for well-separated values
        assert_eq!(removed, vec![0, 1]);
    }

    #[test]
    fn percentile_keeps_degenerate_interval() {
        let rep = filter_percentile(&clean_plus(&[]), &FilterConfig::default()).unwrap();
        assert!(rep.removed_indices.is_empty());
    }

    #[test]
    fn percentile_normal_tail_mass() {
        // 1000 points with standard-normal radial offsets: expect ~45
        // removals (2 x 2.275% tails), generously bracketed
        let mut rng = crate::rng::XorShiftStar::new(77);
        let pts: Vec<Point<f64>> = (0..1000)
            .map(|k| {
                let t = TAU * k as f64 / 1000.0;
                let r = 100.0 + rng.normal();
                Point::new(r * t.cos(), r * t.sin())
            })
            .collect();
        let ps = PointSet::new(pts).unwrap();
        let rep = filter_percentile(&ps, &FilterConfig::default()).unwrap();
        let removed = rep.removed_indices.len();
        assert!(
            (25..=70).contains(&removed),
            "removed {removed} of 1000, expected around 45"
        );
    }
}
