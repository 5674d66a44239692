//! Outlier removal for circular contours: five classical detectors plus the
//! polar-coordinate window method in [`pcod`]. Every filter maps a point set
//! to a [`FilterReport`] listing what survived and which input indices were
//! dropped, so the benchmark harness can cross any filter with any fitter.

mod density;
pub mod pcod;
mod residual;

pub use density::{dbscan_effective_eps, filter_dbscan, filter_lof};
pub use pcod::{filter_pcod, pcod_profile, PolarProfile};
pub use residual::{filter_mad, filter_percentile, filter_zscore};

use crate::error::{Error, Result};
use crate::fit::fit_lsf;
use crate::geom::{Circle, PointSet};
use crate::scalar::Real;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

/// Identifier of one removal method, in benchmark row order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FilterMethod {
    ZScore,
    Mad,
    Dbscan,
    Lof,
    Percentile,
    None,
    Pcod,
}

impl FilterMethod {
    /// All methods in benchmark row order.
    pub const ALL: [FilterMethod; 7] = [
        FilterMethod::ZScore,
        FilterMethod::Mad,
        FilterMethod::Dbscan,
        FilterMethod::Lof,
        FilterMethod::Percentile,
        FilterMethod::None,
        FilterMethod::Pcod,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            FilterMethod::ZScore => "zscore",
            FilterMethod::Mad => "mad",
            FilterMethod::Dbscan => "dbscan",
            FilterMethod::Lof => "lof",
            FilterMethod::Percentile => "percentile",
            FilterMethod::None => "none",
            FilterMethod::Pcod => "pcod",
        }
    }
}

impl fmt::Display for FilterMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FilterMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        FilterMethod::ALL
            .iter()
            .copied()
            .find(|m| m.name() == s)
            .ok_or_else(|| Error::UnknownMethod(s.to_string()))
    }
}

/// Filter outcome: surviving points plus the input indices that were
/// removed (strictly increasing). Kept points preserve input order.
#[derive(Debug, Clone, PartialEq)]
pub struct FilterReport<F> {
    pub kept: PointSet<F>,
    pub removed_indices: Vec<usize>,
    pub method: FilterMethod,
}

impl<F: Real> FilterReport<F> {
    pub(crate) fn keep_all(ps: &PointSet<F>, method: FilterMethod) -> Self {
        FilterReport {
            kept: ps.clone(),
            removed_indices: Vec::new(),
            method,
        }
    }

    /// Build a report from the set of removed input indices.
    pub(crate) fn from_removed(
        ps: &PointSet<F>,
        mut removed: Vec<usize>,
        method: FilterMethod,
    ) -> Self {
        removed.sort_unstable();
        removed.dedup();
        let mut flag = vec![false; ps.len()];
        for &i in &removed {
            flag[i] = true;
        }
        let kept = ps
            .iter()
            .zip(&flag)
            .filter(|(_, &f)| !f)
            .map(|(p, _)| *p)
            .collect();
        FilterReport {
            kept: PointSet::new_unchecked(kept),
            removed_indices: removed,
            method,
        }
    }
}

/// Tunables for every removal method.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct FilterConfig {
    pub zscore_tau: f64,
    pub mad_tau: f64,
    pub mad_epsilon: f64,
    /// DBSCAN neighborhood radius in pixels; `None` selects it automatically
    /// as 3x the median nearest-neighbor distance.
    pub dbscan_eps: Option<f64>,
    pub dbscan_min_pts: usize,
    pub lof_k: usize,
    pub lof_tau: f64,
    /// Percentile bounds in percent.
    pub percentile_lo: f64,
    pub percentile_hi: f64,
    /// Window width (points), sigma-window stride, and deviation threshold
    /// multiplier for the polar-coordinate detector.
    pub pcod_window: usize,
    pub pcod_stride: usize,
    pub pcod_t: f64,
}

impl Default for FilterConfig {
    fn default() -> Self {
        FilterConfig {
            zscore_tau: 3.0,
            mad_tau: 3.0,
            mad_epsilon: 1e-12,
            dbscan_eps: None,
            dbscan_min_pts: 4,
            lof_k: 20,
            lof_tau: 1.5,
            percentile_lo: 2.275,
            percentile_hi: 97.725,
            pcod_window: 20,
            pcod_stride: 10,
            pcod_t: 3.0,
        }
    }
}

impl FilterConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.zscore_tau > 0.0 && self.mad_tau > 0.0 && self.lof_tau > 0.0 && self.pcod_t > 0.0)
        {
            return Err(Error::InvalidConfig("thresholds must be > 0".into()));
        }
        if !(self.percentile_lo > 0.0 && self.percentile_lo < self.percentile_hi)
            || !(self.percentile_hi < 100.0)
        {
            return Err(Error::InvalidConfig(
                "need 0 < percentile_lo < percentile_hi < 100".into(),
            ));
        }
        if self.dbscan_min_pts == 0 || self.lof_k == 0 || self.pcod_window == 0 {
            return Err(Error::InvalidConfig("counts must be >= 1".into()));
        }
        if self.pcod_stride == 0 || self.pcod_stride > self.pcod_window {
            return Err(Error::InvalidConfig(
                "need 1 <= pcod_stride <= pcod_window".into(),
            ));
        }
        if let Some(eps) = self.dbscan_eps {
            if !(eps > 0.0) {
                return Err(Error::InvalidConfig("dbscan_eps must be > 0".into()));
            }
        }
        Ok(())
    }
}

/// Preliminary circle used by the residual-based filters (Z-score, MAD,
/// percentile): the deterministic algebraic least-squares fit.
pub fn preliminary_circle<F: Real>(ps: &PointSet<F>) -> Result<Circle<F>> {
    Ok(fit_lsf(ps)?.circle)
}

/// Uniform dispatch over the removal methods; `none` keeps every point.
pub fn apply_filter<F: Real>(
    method: FilterMethod,
    ps: &PointSet<F>,
    cfg: &FilterConfig,
) -> Result<FilterReport<F>> {
    match method {
        FilterMethod::None => Ok(FilterReport::keep_all(ps, FilterMethod::None)),
        FilterMethod::ZScore => filter_zscore(ps, cfg),
        FilterMethod::Mad => filter_mad(ps, cfg),
        FilterMethod::Dbscan => filter_dbscan(ps, cfg),
        FilterMethod::Lof => filter_lof(ps, cfg),
        FilterMethod::Percentile => filter_percentile(ps, cfg),
        FilterMethod::Pcod => filter_pcod(ps, cfg),
    }
}

/// Dispatch by identifier string; rejects unknown names.
pub fn apply_filter_named<F: Real>(
    name: &str,
    ps: &PointSet<F>,
    cfg: &FilterConfig,
) -> Result<FilterReport<F>> {
    apply_filter(name.parse()?, ps, cfg)
}
