//! Polar-coordinate outlier detection.
//!
//! The contour is transformed to polar coordinates about its centroid and
//! sorted by angle. Strided windows of `w` consecutive radii yield local
//! standard deviations; their median becomes the global deviation scale.
//! Each point is then tested once, against the mean radius of the
//! non-overlapping width-`w` window it falls in: it is an outlier when
//! `|r - r_local_mean| > T * sigma_global`. Survivors are mapped back to
//! Cartesian coordinates about the same centroid.

use super::{FilterConfig, FilterMethod, FilterReport};
use crate::error::{Error, Result};
use crate::geom::{centroid, from_polar, to_polar, PointSet, PolarPoint};
use crate::scalar::{cast, Real};
use crate::stats::median_in_place;

/// Angle-sorted polar view of a point set plus the window statistics the
/// detector thresholds against.
#[derive(Debug, Clone)]
pub struct PolarProfile<F> {
    /// Polar points ordered by ascending angle (ties by radius, then by
    /// original index).
    pub sorted_polar: Vec<PolarPoint<F>>,
    /// Input index of each sorted element.
    pub original_index: Vec<usize>,
    /// Population standard deviation of each sigma-estimation window.
    pub window_sigmas: Vec<F>,
    /// Median of `window_sigmas`.
    pub sigma_global: F,
}

/// Mean radius of the width-`w` window starting at sorted position `start`,
/// wrapping past the angular seam.
fn window_mean<F: Real>(radii: &[F], start: usize, w: usize) -> F {
    let n = radii.len();
    let mut sum = F::zero();
    for k in 0..w {
        sum += radii[(start + k) % n];
    }
    sum / cast::<F>(w as f64)
}

/// Population standard deviation over one radius window.
pub(crate) fn window_sigma<F: Real>(radii: &[F], start: usize, w: usize) -> F {
    let n = radii.len();
    let mean = window_mean(radii, start, w);
    let mut acc = F::zero();
    for k in 0..w {
        let d = radii[(start + k) % n] - mean;
        acc += d * d;
    }
    (acc / cast::<F>(w as f64)).sqrt()
}

/// Build the sorted polar profile and its window statistics.
///
/// Sigma-estimation windows hold exactly `pcod_window` consecutive sorted
/// points, start at 0, stride, 2*stride, ..., and the trailing ones wrap
/// circularly: a circle has no angular boundary, so the seam is sampled
/// like everywhere else.
pub fn pcod_profile<F: Real>(ps: &PointSet<F>, cfg: &FilterConfig) -> Result<PolarProfile<F>> {
    let n = ps.len();
    let w = cfg.pcod_window;
    if n < w {
        return Err(Error::TooFewPoints { needed: w, got: n });
    }
    let center = centroid(ps)?;
    let polar = to_polar(ps, center)?;

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| {
        polar[i]
            .theta
            .partial_cmp(&polar[j].theta)
            .unwrap()
            .then(polar[i].r.partial_cmp(&polar[j].r).unwrap())
            .then(i.cmp(&j))
    });
    let sorted_polar: Vec<PolarPoint<F>> = order.iter().map(|&i| polar[i]).collect();
    let radii: Vec<F> = sorted_polar.iter().map(|p| p.r).collect();

    let mut window_sigmas = Vec::with_capacity(n / cfg.pcod_stride + 1);
    let mut start = 0;
    while start < n {
        window_sigmas.push(window_sigma(&radii, start, w));
        start += cfg.pcod_stride;
    }
    let mut scratch = window_sigmas.clone();
    let sigma_global = median_in_place(&mut scratch);

    Ok(PolarProfile {
        sorted_polar,
        original_index: order,
        window_sigmas,
        sigma_global,
    })
}

/// Run the polar-coordinate detector and back-project the survivors.
pub fn filter_pcod<F: Real>(ps: &PointSet<F>, cfg: &FilterConfig) -> Result<FilterReport<F>> {
    let profile = pcod_profile(ps, cfg)?;
    let center = centroid(ps)?;
    let n = ps.len();
    let w = cfg.pcod_window;
    let radii: Vec<F> = profile.sorted_polar.iter().map(|p| p.r).collect();

    // Degenerate profile: all window deviations at rounding level. The
    // strict `> T * 0` rule removes nothing; the epsilon keeps floating-
    // point dust on mathematically-constant radii from slipping past it.
    let mean_r = radii.iter().copied().sum::<F>() / cast::<F>(n as f64);
    let degenerate = profile.sigma_global <= cast::<F>(1e-12) * (F::one() + mean_r.abs());

    let threshold = cast::<F>(cfg.pcod_t) * profile.sigma_global;
    let mut removed_sorted: Vec<bool> = vec![false; n];
    if !degenerate {
        // Detection windows partition the sorted sequence: width w, stride
        // w, each point judged once against its own window's mean. The
        // final partial window borrows wrapped points for its mean only.
        let mut start = 0;
        while start < n {
            let mean = window_mean(&radii, start, w);
            for t in start..(start + w).min(n) {
                if (radii[t] - mean).abs() > threshold {
                    removed_sorted[t] = true;
                }
            }
            start += w;
        }
    }

    let mut kept: Vec<(usize, PolarPoint<F>)> = Vec::with_capacity(n);
    let mut removed_indices = Vec::new();
    for (pos, &orig) in profile.original_index.iter().enumerate() {
        if removed_sorted[pos] {
            removed_indices.push(orig);
        } else {
            kept.push((orig, profile.sorted_polar[pos]));
        }
    }
    kept.sort_by_key(|&(orig, _)| orig);
    removed_indices.sort_unstable();

    let kept_polar: Vec<PolarPoint<F>> = kept.iter().map(|&(_, p)| p).collect();
    Ok(FilterReport {
        kept: from_polar(&kept_polar, center),
        removed_indices,
        method: FilterMethod::Pcod,
    })
}
