//! JSON config file support. Every CLI parameter can come from one file;
//! explicit flags override file values, which override the defaults.

use circlefit::{Error, FilterConfig, FitConfig, Result};
use serde::Deserialize;
use std::path::Path;

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    #[serde(default)]
    pub fit: PartialFitConfig,
    #[serde(default)]
    pub filter: PartialFilterConfig,
    #[serde(default)]
    pub bench: PartialBenchConfig,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PartialFitConfig {
    pub ransac_iterations: Option<usize>,
    pub ransac_epsilon: Option<f64>,
    pub lmeds_samples: Option<usize>,
    pub irls_delta_factor: Option<f64>,
    pub max_irls_iterations: Option<usize>,
    pub convergence_tol: Option<f64>,
    pub rng_seed: Option<u64>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PartialFilterConfig {
    pub zscore_tau: Option<f64>,
    pub mad_tau: Option<f64>,
    pub mad_epsilon: Option<f64>,
    pub dbscan_eps: Option<f64>,
    pub dbscan_min_pts: Option<usize>,
    pub lof_k: Option<usize>,
    pub lof_tau: Option<f64>,
    pub percentile_lo: Option<f64>,
    pub percentile_hi: Option<f64>,
    pub pcod_window: Option<usize>,
    pub pcod_stride: Option<usize>,
    pub pcod_t: Option<f64>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PartialBenchConfig {
    pub parts: Option<usize>,
    pub seed: Option<u64>,
    pub emit: Option<String>,
    pub cal_per_filter_only: Option<bool>,
    pub include_reference: Option<bool>,
    pub threads: Option<usize>,
}

impl ConfigFile {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        serde_json::from_str(&text).map_err(|e| Error::Parse {
            line: e.line(),
            column: e.column(),
            message: format!("config: {e}"),
        })
    }
}

macro_rules! overlay {
    ($base:expr, $part:expr, $($field:ident),+ $(,)?) => {
        $(if let Some(v) = $part.$field {
            $base.$field = v;
        })+
    };
}

/// Apply file values on top of the defaults, leaving room for flags to
/// override afterwards.
pub fn fit_config_from(part: &PartialFitConfig) -> FitConfig {
    let mut cfg = FitConfig::default();
    overlay!(
        cfg,
        part,
        ransac_iterations,
        ransac_epsilon,
        lmeds_samples,
        irls_delta_factor,
        max_irls_iterations,
        convergence_tol,
        rng_seed,
    );
    cfg
}

pub fn filter_config_from(part: &PartialFilterConfig) -> FilterConfig {
    let mut cfg = FilterConfig::default();
    if let Some(v) = part.dbscan_eps {
        cfg.dbscan_eps = Some(v);
    }
    overlay!(
        cfg,
        part,
        zscore_tau,
        mad_tau,
        mad_epsilon,
        dbscan_min_pts,
        lof_k,
        lof_tau,
        percentile_lo,
        percentile_hi,
        pcod_window,
        pcod_stride,
        pcod_t,
    );
    cfg
}
