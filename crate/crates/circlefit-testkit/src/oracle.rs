//! Independent reference computations. Each function re-derives a result
//! from first principles (brute force, direct formula evaluation) without
//! touching the production implementation it is used to check.

use circlefit::{Circle64, PointSet64};
use std::collections::BTreeSet;

/// Sum of squared geometric (radial) distances.
pub fn geometric_cost(ps: &PointSet64, a: f64, b: f64, r: f64) -> f64 {
    ps.iter()
        .map(|p| {
            let d = ((p.x - a).powi(2) + (p.y - b).powi(2)).sqrt() - r;
            d * d
        })
        .sum()
}

/// Brute-force geometric minimizer: nested grid refinement over (a, b, R),
/// shrinking the search box around the best grid node until its half-width
/// falls below `tol`. The starting box is centered on the coordinate means
/// and the mean distance from them, so the oracle is independent of every
/// fitter.
pub fn geometric_minimizer_grid(ps: &PointSet64, tol: f64) -> Circle64 {
    let n = ps.len() as f64;
    let cx = ps.iter().map(|p| p.x).sum::<f64>() / n;
    let cy = ps.iter().map(|p| p.y).sum::<f64>() / n;
    let mean_r = ps
        .iter()
        .map(|p| ((p.x - cx).powi(2) + (p.y - cy).powi(2)).sqrt())
        .sum::<f64>()
        / n;

    let mut best = (cx, cy, mean_r);
    let mut best_cost = geometric_cost(ps, best.0, best.1, best.2);
    let mut half = 2.0f64;
    const GRID: i32 = 6;

    while half > tol * 0.25 {
        let (a0, b0, r0) = best;
        for ia in -GRID..=GRID {
            for ib in -GRID..=GRID {
                for ir in -GRID..=GRID {
                    let a = a0 + half * ia as f64 / GRID as f64;
                    let b = b0 + half * ib as f64 / GRID as f64;
                    let r = r0 + half * ir as f64 / GRID as f64;
                    if r <= 0.0 {
                        continue;
                    }
                    let cost = geometric_cost(ps, a, b, r);
                    if cost < best_cost {
                        best_cost = cost;
                        best = (a, b, r);
                    }
                }
            }
        }
        half *= 0.5;
    }
    Circle64::new(best.0, best.1, best.2)
}

/// Textbook median: sort and take the middle, averaging the two central
/// order statistics for even counts.
pub fn naive_median(xs: &[f64]) -> f64 {
    let mut v = xs.to_vec();
    v.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let n = v.len();
    if n % 2 == 1 {
        v[n / 2]
    } else {
        0.5 * (v[n / 2 - 1] + v[n / 2])
    }
}

fn residuals_vs(ps: &PointSet64, c: &Circle64) -> Vec<f64> {
    ps.iter()
        .map(|p| ((p.x - c.a).powi(2) + (p.y - c.b).powi(2)).sqrt() - c.r)
        .collect()
}

/// Z-score rule: `|r_i - mean| / population sigma > tau`, nothing flagged
/// when the deviation is at rounding level.
pub fn zscore_removed(ps: &PointSet64, prelim: &Circle64, tau: f64) -> BTreeSet<usize> {
    let res = residuals_vs(ps, prelim);
    let n = res.len() as f64;
    let mean = res.iter().sum::<f64>() / n;
    let sd = (res.iter().map(|r| (r - mean).powi(2)).sum::<f64>() / n).sqrt();
    if sd < 1e-15 {
        return BTreeSet::new();
    }
    res.iter()
        .enumerate()
        .filter(|(_, r)| ((*r - mean) / sd).abs() > tau)
        .map(|(i, _)| i)
        .collect()
}

/// MAD rule: `|r_i - median| / (MAD + eps) > tau`.
pub fn mad_removed(ps: &PointSet64, prelim: &Circle64, tau: f64, eps: f64) -> BTreeSet<usize> {
    let res = residuals_vs(ps, prelim);
    let med = naive_median(&res);
    let mad = naive_median(&res.iter().map(|r| (r - med).abs()).collect::<Vec<_>>());
    res.iter()
        .enumerate()
        .filter(|(_, r)| (*r - med).abs() / (mad + eps) > tau)
        .map(|(i, _)| i)
        .collect()
}

/// Percentile rule on signed residuals: flag anything strictly outside the
/// linearly interpolated `[lo, hi]` percentile bounds. A residual spread at
/// rounding level flags nothing (degenerate-but-inclusive interval).
pub fn percentile_removed(
    ps: &PointSet64,
    prelim: &Circle64,
    lo_pct: f64,
    hi_pct: f64,
) -> BTreeSet<usize> {
    let res = residuals_vs(ps, prelim);
    let mut sorted = res.clone();
    sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let span = sorted[sorted.len() - 1] - sorted[0];
    let scale = sorted.iter().fold(0.0f64, |m, r| m.max(r.abs())).max(1.0);
    if span <= 1e-12 * scale {
        return BTreeSet::new();
    }
    let at = |pct: f64| -> f64 {
        if sorted.len() == 1 {
            return sorted[0];
        }
        let rank = pct / 100.0 * (sorted.len() - 1) as f64;
        let lo = rank.floor() as usize;
        let hi = rank.ceil() as usize;
        sorted[lo] + (sorted[hi] - sorted[lo]) * (rank - lo as f64)
    };
    let (lo, hi) = (at(lo_pct), at(hi_pct));
    res.iter()
        .enumerate()
        .filter(|(_, r)| **r < lo || **r > hi)
        .map(|(i, _)| i)
        .collect()
}

/// DBSCAN noise labels from the printed definitions: not a core point
/// (fewer than `min_pts` neighbors within `eps`, self included) and not
/// within `eps` of any core point.
pub fn dbscan_removed(ps: &PointSet64, eps: f64, min_pts: usize) -> BTreeSet<usize> {
    let n = ps.len();
    let pts = ps.points();
    let dist = |i: usize, j: usize| -> f64 {
        ((pts[i].x - pts[j].x).powi(2) + (pts[i].y - pts[j].y).powi(2)).sqrt()
    };
    let core: Vec<bool> = (0..n)
        .map(|i| (0..n).filter(|&j| dist(i, j) <= eps).count() >= min_pts)
        .collect();
    (0..n)
        .filter(|&i| !core[i] && !(0..n).any(|j| j != i && core[j] && dist(i, j) <= eps))
        .collect()
}

/// LOF scores from the printed definitions, flagging `LOF > tau`.
/// k-distance ties broken by index; neighbor sets keep all ties; local
/// reachability density capped at 1e15.
pub fn lof_removed(ps: &PointSet64, k: usize, tau: f64) -> BTreeSet<usize> {
    let n = ps.len();
    let pts = ps.points();
    assert!(n > k);
    let dist = |i: usize, j: usize| -> f64 {
        ((pts[i].x - pts[j].x).powi(2) + (pts[i].y - pts[j].y).powi(2)).sqrt()
    };

    let mut k_dist = vec![0.0f64; n];
    let mut neighbors: Vec<Vec<usize>> = vec![Vec::new(); n];
    for i in 0..n {
        let mut ds: Vec<(f64, usize)> = (0..n).filter(|&j| j != i).map(|j| (dist(i, j), j)).collect();
        ds.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap().then(a.1.cmp(&b.1)));
        k_dist[i] = ds[k - 1].0;
        neighbors[i] = ds
            .iter()
            .take_while(|(d, _)| *d <= k_dist[i])
            .map(|&(_, j)| j)
            .collect();
    }
    let lrd: Vec<f64> = (0..n)
        .map(|i| {
            let mean = neighbors[i]
                .iter()
                .map(|&j| k_dist[j].max(dist(i, j)))
                .sum::<f64>()
                / neighbors[i].len() as f64;
            if mean > 0.0 {
                (1.0 / mean).min(1e15)
            } else {
                1e15
            }
        })
        .collect();
    (0..n)
        .filter(|&i| {
            let lof = neighbors[i].iter().map(|&j| lrd[j] / lrd[i]).sum::<f64>()
                / neighbors[i].len() as f64;
            lof > tau
        })
        .collect()
}

/// Polar-window rule replayed end to end: centroid, polar transform, theta
/// sort (ties by radius then input index), strided sigma windows with the
/// population formula and circular wrap, median global sigma, then one
/// verdict per point from its width-`w` partition window. A global sigma at
/// rounding level (<= 1e-12 relative) removes nothing.
pub fn pcod_removed(ps: &PointSet64, w: usize, stride: usize, t: f64) -> BTreeSet<usize> {
    let n = ps.len();
    assert!(n >= w);
    let cx = ps.iter().map(|p| p.x).sum::<f64>() / n as f64;
    let cy = ps.iter().map(|p| p.y).sum::<f64>() / n as f64;
    let polar: Vec<(f64, f64)> = ps
        .iter()
        .map(|p| {
            let dx = p.x - cx;
            let dy = p.y - cy;
            let r = (dx * dx + dy * dy).sqrt();
            let theta = if r == 0.0 {
                0.0
            } else {
                let t = dy.atan2(dx);
                if t == -std::f64::consts::PI {
                    -t
                } else {
                    t
                }
            };
            (r, theta)
        })
        .collect();

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| {
        polar[i]
            .1
            .partial_cmp(&polar[j].1)
            .unwrap()
            .then(polar[i].0.partial_cmp(&polar[j].0).unwrap())
            .then(i.cmp(&j))
    });
    let radii: Vec<f64> = order.iter().map(|&i| polar[i].0).collect();

    let window_mean = |start: usize| -> f64 {
        (0..w).map(|k| radii[(start + k) % n]).sum::<f64>() / w as f64
    };
    let mut sigmas = Vec::new();
    let mut start = 0;
    while start < n {
        let mean = window_mean(start);
        let var = (0..w)
            .map(|k| (radii[(start + k) % n] - mean).powi(2))
            .sum::<f64>()
            / w as f64;
        sigmas.push(var.sqrt());
        start += stride;
    }
    let sigma_global = naive_median(&sigmas);

    let mean_r = radii.iter().sum::<f64>() / n as f64;
    if sigma_global <= 1e-12 * (1.0 + mean_r.abs()) {
        return BTreeSet::new();
    }

    let mut removed = BTreeSet::new();
    let mut start = 0;
    while start < n {
        let mean = window_mean(start);
        for pos in start..(start + w).min(n) {
            if (radii[pos] - mean).abs() > t * sigma_global {
                removed.insert(order[pos]);
            }
        }
        start += w;
    }
    removed
}
