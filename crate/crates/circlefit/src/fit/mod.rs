//! The ten circle-fitting algorithms behind one dispatch interface.
//!
//! Closed-form algebraic fits live in [`algebraic`], the consensus and
//! reweighting methods in [`robust`]. All of them consume a [`PointSet`] and
//! produce a [`FitResult`]; stochastic methods draw from the seeded
//! in-crate PRNG so results are bit-reproducible.

mod algebraic;
mod robust;

pub use algebraic::{fit_edcircle, fit_hyperls, fit_lsf, fit_pratt, fit_taubin, fit_tls};
pub use robust::{fit_irls, fit_lmeds, fit_mestimator, fit_ransac};

use crate::error::{Error, Result};
use crate::geom::{Circle, PointSet};
use crate::scalar::Real;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

/// Identifier of one fitting algorithm, in benchmark column order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FitAlgorithm {
    Lsf,
    Pratt,
    Taubin,
    Ransac,
    Irls,
    #[serde(rename = "hyperls")]
    HyperLs,
    #[serde(rename = "mestimator")]
    MEstimator,
    #[serde(rename = "lmeds")]
    LMedS,
    Tls,
    #[serde(rename = "edcircle")]
    EdCircle,
}

impl FitAlgorithm {
    /// All algorithms in benchmark column order.
    pub const ALL: [FitAlgorithm; 10] = [
        FitAlgorithm::Lsf,
        FitAlgorithm::Pratt,
        FitAlgorithm::Taubin,
        FitAlgorithm::Ransac,
        FitAlgorithm::Irls,
        FitAlgorithm::HyperLs,
        FitAlgorithm::MEstimator,
        FitAlgorithm::LMedS,
        FitAlgorithm::Tls,
        FitAlgorithm::EdCircle,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            FitAlgorithm::Lsf => "lsf",
            FitAlgorithm::Pratt => "pratt",
            FitAlgorithm::Taubin => "taubin",
            FitAlgorithm::Ransac => "ransac",
            FitAlgorithm::Irls => "irls",
            FitAlgorithm::HyperLs => "hyperls",
            FitAlgorithm::MEstimator => "mestimator",
            FitAlgorithm::LMedS => "lmeds",
            FitAlgorithm::Tls => "tls",
            FitAlgorithm::EdCircle => "edcircle",
        }
    }
}

impl fmt::Display for FitAlgorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FitAlgorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        FitAlgorithm::ALL
            .iter()
            .copied()
            .find(|a| a.name() == s)
            .ok_or_else(|| Error::UnknownAlgorithm(s.to_string()))
    }
}

/// Outcome of a fit: the circle plus bookkeeping. `iterations` is 1 for
/// closed-form methods; `inlier_count` is the population size for
/// non-consensus methods and the best consensus size for RANSAC.
#[derive(Debug, Clone, PartialEq)]
pub struct FitResult<F> {
    pub circle: Circle<F>,
    pub iterations: usize,
    pub converged: bool,
    pub inlier_count: usize,
}

/// Tunables for the stochastic and iterative fitters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct FitConfig {
    pub ransac_iterations: usize,
    /// Inlier threshold for RANSAC, pixels.
    pub ransac_epsilon: f64,
    pub lmeds_samples: usize,
    /// Huber threshold as a multiple of the robust residual scale.
    pub irls_delta_factor: f64,
    pub max_irls_iterations: usize,
    pub convergence_tol: f64,
    pub rng_seed: u64,
}

impl Default for FitConfig {
    fn default() -> Self {
        FitConfig {
            ransac_iterations: 1000,
            ransac_epsilon: 1.0,
            lmeds_samples: 1000,
            irls_delta_factor: 1.345,
            max_irls_iterations: 100,
            convergence_tol: 1e-10,
            rng_seed: 1,
        }
    }
}

impl FitConfig {
    pub fn validate(&self) -> Result<()> {
        if self.ransac_iterations == 0 || self.lmeds_samples == 0 || self.max_irls_iterations == 0
        {
            return Err(Error::InvalidConfig("iteration counts must be >= 1".into()));
        }
        if !(self.ransac_epsilon > 0.0) {
            return Err(Error::InvalidConfig("ransac_epsilon must be > 0".into()));
        }
        if !(self.convergence_tol > 0.0) {
            return Err(Error::InvalidConfig("convergence_tol must be > 0".into()));
        }
        if !(self.irls_delta_factor > 0.0) {
            return Err(Error::InvalidConfig("irls_delta_factor must be > 0".into()));
        }
        Ok(())
    }
}

/// Uniform dispatch over the ten algorithms.
pub fn fit<F: Real>(
    algorithm: FitAlgorithm,
    ps: &PointSet<F>,
    cfg: &FitConfig,
) -> Result<FitResult<F>> {
    match algorithm {
        FitAlgorithm::Lsf => fit_lsf(ps),
        FitAlgorithm::Pratt => fit_pratt(ps),
        FitAlgorithm::Taubin => fit_taubin(ps),
        FitAlgorithm::Ransac => fit_ransac(ps, cfg),
        FitAlgorithm::Irls => fit_irls(ps, cfg),
        FitAlgorithm::HyperLs => fit_hyperls(ps),
        FitAlgorithm::MEstimator => fit_mestimator(ps, cfg),
        FitAlgorithm::LMedS => fit_lmeds(ps, cfg),
        FitAlgorithm::Tls => fit_tls(ps),
        FitAlgorithm::EdCircle => fit_edcircle(ps),
    }
}

/// Dispatch by identifier string; rejects unknown names.
pub fn fit_named<F: Real>(name: &str, ps: &PointSet<F>, cfg: &FitConfig) -> Result<FitResult<F>> {
    fit(name.parse()?, ps, cfg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::PointSet;

    fn unit4() -> PointSet<f64> {
        PointSet::from_xy(&[(1.0, 0.0), (0.0, 1.0), (-1.0, 0.0), (0.0, -1.0)]).unwrap()
    }

    #[test]
    fn dispatch_lsf() {
        let r = fit_named("lsf", &unit4(), &FitConfig::default()).unwrap();
        assert!(r.circle.a.abs() < 1e-12);
        assert!(r.circle.b.abs() < 1e-12);
        assert!((r.circle.r - 1.0).abs() < 1e-12);
    }

    #[test]
    fn dispatch_ransac_seeded() {
        let cfg = FitConfig {
            rng_seed: 1,
            ..FitConfig::default()
        };
        let r = fit_named("ransac", &unit4(), &cfg).unwrap();
        assert!((r.circle.r - 1.0).abs() < 1e-9);
    }

    #[test]
    fn dispatch_unknown_name() {
        let err = fit_named("bogus", &unit4(), &FitConfig::default()).unwrap_err();
        assert!(matches!(err, Error::UnknownAlgorithm(s) if s == "bogus"));
    }

    #[test]
    fn every_algorithm_parses_its_own_name() {
        for a in FitAlgorithm::ALL {
            assert_eq!(a.name().parse::<FitAlgorithm>().unwrap(), a);
        }
    }

    #[test]
    fn config_validation() {
        assert!(FitConfig::default().validate().is_ok());
        let bad = FitConfig {
            ransac_epsilon: 0.0,
            ..FitConfig::default()
        };
        assert!(matches!(bad.validate(), Err(Error::InvalidConfig(_))));
    }
}
