//! Density-based removal operating directly on the (x, y) coordinates:
//! DBSCAN noise labeling and the local outlier factor.

use super::{FilterConfig, FilterMethod, FilterReport};
use crate::error::{Error, Result};
use crate::geom::PointSet;
use crate::scalar::{cast, to_f64, Real};
use crate::stats::median_in_place;

/// Cap applied to the local reachability density when duplicate points make
/// the mean reachability distance collapse to zero.
const LRD_CAP: f64 = 1e15;

fn resolved_eps<F: Real>(ps: &PointSet<F>, cfg: &FilterConfig) -> F {
    if let Some(eps) = cfg.dbscan_eps {
        return cast(eps);
    }
    let n = ps.len();
    if n < 2 {
        return F::zero();
    }
    // 3x the median nearest-neighbor distance
    let pts = ps.points();
    let mut nn = Vec::with_capacity(n);
    for (i, p) in pts.iter().enumerate() {
        let mut best = F::infinity();
        for (j, q) in pts.iter().enumerate() {
            if i != j {
                best = best.min(p.distance(q));
            }
        }
        nn.push(best);
    }
    cast::<F>(3.0) * median_in_place(&mut nn)
}

/// DBSCAN-style noise removal: drops exactly the points that are neither
/// core (at least `min_pts` neighbors within `eps`, the point itself
/// included) nor within `eps` of some core point. Clusters are kept whole.
pub fn filter_dbscan<F: Real>(ps: &PointSet<F>, cfg: &FilterConfig) -> Result<FilterReport<F>> {
    let n = ps.len();
    if n == 0 {
        return Ok(FilterReport::keep_all(ps, FilterMethod::Dbscan));
    }
    let eps = resolved_eps(ps, cfg);
    let pts = ps.points();

    let mut core = vec![false; n];
    for i in 0..n {
        let count = pts
            .iter()
            .filter(|q| pts[i].distance(q) <= eps)
            .count();
        core[i] = count >= cfg.dbscan_min_pts;
    }

    let removed = (0..n)
        .filter(|&i| {
            !core[i]
                && !(0..n).any(|j| j != i && core[j] && pts[i].distance(&pts[j]) <= eps)
        })
        .collect();
    Ok(FilterReport::from_removed(ps, removed, FilterMethod::Dbscan))
}

/// Local-outlier-factor removal: drops points whose LOF exceeds the
/// threshold. k-distance ties are broken by ascending index; the neighbor
/// set keeps every point at distance <= k-distance, so it can exceed `k`.
pub fn filter_lof<F: Real>(ps: &PointSet<F>, cfg: &FilterConfig) -> Result<FilterReport<F>> {
    let n = ps.len();
    let k = cfg.lof_k;
    if n <= k {
        return Err(Error::TooFewPoints {
            needed: k + 1,
            got: n,
        });
    }
    let pts = ps.points();

    let mut k_dist = vec![F::zero(); n];
    let mut neighbors: Vec<Vec<usize>> = Vec::with_capacity(n);
    let mut dist_row: Vec<(F, usize)> = Vec::with_capacity(n - 1);
    for i in 0..n {
        dist_row.clear();
        for (j, q) in pts.iter().enumerate() {
            if j != i {
                dist_row.push((pts[i].distance(q), j));
            }
        }
        dist_row.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap().then(a.1.cmp(&b.1)));
        let kd = dist_row[k - 1].0;
        k_dist[i] = kd;
        neighbors.push(
            dist_row
                .iter()
                .take_while(|(d, _)| *d <= kd)
                .map(|&(_, j)| j)
                .collect(),
        );
    }

    let cap = cast::<F>(LRD_CAP);
    let mut lrd = vec![F::zero(); n];
    for i in 0..n {
        let sum: F = neighbors[i]
            .iter()
            .map(|&j| k_dist[j].max(pts[i].distance(&pts[j])))
            .sum();
        let mean = sum / cast::<F>(neighbors[i].len() as f64);
        lrd[i] = if mean > F::zero() {
            (F::one() / mean).min(cap)
        } else {
            cap
        };
    }

    let tau = cast::<F>(cfg.lof_tau);
    let removed = (0..n)
        .filter(|&i| {
            let sum: F = neighbors[i].iter().map(|&j| lrd[j] / lrd[i]).sum();
            let lof = sum / cast::<F>(neighbors[i].len() as f64);
            lof > tau
        })
        .collect();
    Ok(FilterReport::from_removed(ps, removed, FilterMethod::Lof))
}

/// Expose the auto-selected DBSCAN radius for reporting and tests.
pub fn dbscan_effective_eps<F: Real>(ps: &PointSet<F>, cfg: &FilterConfig) -> f64 {
    to_f64(resolved_eps(ps, cfg))
}
