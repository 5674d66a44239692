//! Robust circle fitting and contour outlier filtering.
//!
//! The crate measures circular contours the way a dimensional-metrology
//! pipeline does: edge points come in, optionally pass through an outlier
//! filter, and a circle fit turns the survivors into a diameter. Ten fitting
//! algorithms and six removal methods sit behind uniform dispatch so they
//! can be crossed in a benchmark grid, and a deterministic synthetic-data
//! generator plus MAE/SDAE harness make the whole comparison reproducible
//! from a single seed.
//!
//! The numeric core is generic over the scalar type (`f32` or `f64`, see
//! [`scalar::Real`]); the harness and the type aliases at the crate root pin
//! `f64`.
//!
//! ```
//! use circlefit::{fit, Circle64, FitAlgorithm, FitConfig};
//! use circlefit::synth::{sample_circle, Jitter};
//!
//! let truth = Circle64::new(4.0, -3.0, 25.0);
//! let ps = sample_circle(&truth, 64, Jitter::Equispaced, 1).unwrap();
//! let result = fit(FitAlgorithm::Pratt, &ps, &FitConfig::default()).unwrap();
//! assert!((result.circle.r - 25.0).abs() < 1e-9);
//! ```

pub mod error;
pub mod fit;
pub mod filter;
pub mod geom;
pub mod harness;
pub mod linalg;
pub mod rng;
pub mod scalar;
mod stats;
pub mod synth;

pub use error::{Error, Result, Stage};
pub use fit::{fit, fit_named, FitAlgorithm, FitConfig, FitResult};
pub use filter::{apply_filter, apply_filter_named, FilterConfig, FilterMethod, FilterReport};
pub use geom::{Circle, Point, PointSet, PolarPoint};

/// Concrete `f64` aliases used by the harness and CLI.
pub type Point64 = geom::Point<f64>;
pub type Circle64 = geom::Circle<f64>;
pub type PolarPoint64 = geom::PolarPoint<f64>;
pub type PointSet64 = geom::PointSet<f64>;
pub type FitResult64 = fit::FitResult<f64>;
pub type FilterReport64 = filter::FilterReport<f64>;
pub type Workpiece64 = synth::SyntheticWorkpiece<f64>;
