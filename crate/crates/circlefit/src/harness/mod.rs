//! Measurement harness: pixel-to-millimeter calibration, MAE/SDAE metrics,
//! the filter x fitter benchmark grid, and the file formats behind the CLI.
//! This layer is concrete `f64`.

pub mod io;

pub use io::{parse_points_file, render_table, write_table, PointsFormat, TableFormat};

use crate::error::{Error, Result, Stage};
use crate::filter::{apply_filter, FilterConfig, FilterMethod};
use crate::fit::{fit, FitAlgorithm, FitConfig};
use crate::geom::PointSet;
use crate::synth::SyntheticWorkpiece;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

/// Pixel-to-millimeter conversion derived from a reference part.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CalibrationFactor {
    pub mm_per_px: f64,
    pub reference_diameter_mm: f64,
    pub reference_diameter_px: f64,
    pub filter_method: FilterMethod,
    pub fitter: FitAlgorithm,
}

/// One measured part.
#[derive(Debug, Clone, PartialEq)]
pub struct MeasurementRecord {
    pub part_id: usize,
    pub diameter_px: f64,
    pub diameter_mm: f64,
    pub removed_count: usize,
    pub fit_converged: bool,
}

/// Benchmark grid over the filter rows and fitter columns. `NaN` cells mark
/// combinations where some part failed to process; they render as `FAIL`.
#[derive(Debug, Clone, PartialEq)]
pub struct BenchmarkTable {
    pub filters: Vec<FilterMethod>,
    pub fitters: Vec<FitAlgorithm>,
    pub mae_mm: Vec<Vec<f64>>,
    pub sdae_mm: Vec<Vec<f64>>,
    pub num_parts: usize,
    pub seed: u64,
}

impl BenchmarkTable {
    pub fn mae(&self, filter: FilterMethod, fitter: FitAlgorithm) -> f64 {
        let r = self.filters.iter().position(|&f| f == filter).unwrap();
        let c = self.fitters.iter().position(|&f| f == fitter).unwrap();
        self.mae_mm[r][c]
    }

    pub fn sdae(&self, filter: FilterMethod, fitter: FitAlgorithm) -> f64 {
        let r = self.filters.iter().position(|&f| f == filter).unwrap();
        let c = self.fitters.iter().position(|&f| f == fitter).unwrap();
        self.sdae_mm[r][c]
    }
}

/// Switchable protocol choices, with the defaults documented on each field.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct BenchmarkOptions {
    /// Calibrate once per filter row (with the least-squares fitter)
    /// instead of once per (filter, fitter) cell. Default: per-cell, since
    /// measured pixel diameters depend on the fitter as well.
    pub cal_per_filter_only: bool,
    /// Include the reference part in the error statistics. Default: off;
    /// its error is zero by construction and would deflate both metrics.
    pub include_reference: bool,
    /// Dataset seed carried into emitted metadata.
    pub seed: u64,
}

impl Default for BenchmarkOptions {
    fn default() -> Self {
        BenchmarkOptions {
            cal_per_filter_only: false,
            include_reference: false,
            seed: 0,
        }
    }
}

/// Build a calibration factor from a reference diameter measured in pixels
/// and known in millimeters.
pub fn calibrate(
    reference_px: f64,
    reference_mm: f64,
    filter_method: FilterMethod,
    fitter: FitAlgorithm,
) -> Result<CalibrationFactor> {
    if !(reference_px > 0.0) || !(reference_mm > 0.0) {
        return Err(Error::NonPositiveInput);
    }
    Ok(CalibrationFactor {
        mm_per_px: reference_mm / reference_px,
        reference_diameter_mm: reference_mm,
        reference_diameter_px: reference_px,
        filter_method,
        fitter,
    })
}

/// Mean absolute error between estimates and ground truth.
pub fn mae(estimates_mm: &[f64], truths_mm: &[f64]) -> Result<f64> {
    if estimates_mm.len() != truths_mm.len() {
        return Err(Error::LengthMismatch {
            left: estimates_mm.len(),
            right: truths_mm.len(),
        });
    }
    if estimates_mm.is_empty() {
        return Err(Error::EmptyInput);
    }
    let sum: f64 = estimates_mm
        .iter()
        .zip(truths_mm)
        .map(|(e, t)| (e - t).abs())
        .sum();
    Ok(sum / estimates_mm.len() as f64)
}

/// Population standard deviation of the absolute errors.
pub fn sdae(estimates_mm: &[f64], truths_mm: &[f64]) -> Result<f64> {
    if estimates_mm.len() != truths_mm.len() {
        return Err(Error::LengthMismatch {
            left: estimates_mm.len(),
            right: truths_mm.len(),
        });
    }
    if estimates_mm.len() < 2 {
        return Err(Error::TooFewValues);
    }
    let abs_errors: Vec<f64> = estimates_mm
        .iter()
        .zip(truths_mm)
        .map(|(e, t)| (e - t).abs())
        .collect();
    let n = abs_errors.len() as f64;
    let mean = abs_errors.iter().sum::<f64>() / n;
    let var = abs_errors.iter().map(|a| (a - mean).powi(2)).sum::<f64>() / n;
    Ok(var.sqrt())
}

/// Filter, fit the survivors, and convert the diameter to millimeters.
/// Errors are tagged with the stage that produced them.
pub fn run_pipeline(
    ps: &PointSet<f64>,
    filter_method: FilterMethod,
    fitter: FitAlgorithm,
    fcfg: &FilterConfig,
    ccfg: &FitConfig,
    cal: &CalibrationFactor,
) -> Result<MeasurementRecord> {
    let report = apply_filter(filter_method, ps, fcfg).map_err(|e| e.in_stage(Stage::Filter))?;
    let result = fit(fitter, &report.kept, ccfg).map_err(|e| e.in_stage(Stage::Fit))?;
    let diameter_px = result.circle.diameter();
    Ok(MeasurementRecord {
        part_id: 0,
        diameter_px,
        diameter_mm: diameter_px * cal.mm_per_px,
        removed_count: report.removed_indices.len(),
        fit_converged: result.converged,
    })
}

/// Measure the reference part in pixel units for one (filter, fitter) pair.
fn reference_diameter_px(
    reference: &SyntheticWorkpiece<f64>,
    filter_method: FilterMethod,
    fitter: FitAlgorithm,
    fcfg: &FilterConfig,
    ccfg: &FitConfig,
) -> Result<f64> {
    let report = apply_filter(filter_method, &reference.points, fcfg)
        .map_err(|e| e.in_stage(Stage::Filter))?;
    let result = fit(fitter, &report.kept, ccfg).map_err(|e| e.in_stage(Stage::Fit))?;
    Ok(result.circle.diameter())
}

fn benchmark_cell(
    dataset: &[SyntheticWorkpiece<f64>],
    filter_method: FilterMethod,
    fitter: FitAlgorithm,
    cal_fitter: FitAlgorithm,
    fcfg: &FilterConfig,
    ccfg: &FitConfig,
    include_reference: bool,
) -> Result<(f64, f64)> {
    let reference = &dataset[0];
    let ref_px = reference_diameter_px(reference, filter_method, cal_fitter, fcfg, ccfg)?;
    let cal = calibrate(ref_px, reference.true_diameter_mm, filter_method, fitter)?;

    let start = if include_reference { 0 } else { 1 };
    let mut estimates = Vec::with_capacity(dataset.len() - start);
    let mut truths = Vec::with_capacity(dataset.len() - start);
    for (part_id, part) in dataset.iter().enumerate().skip(start) {
        let mut record = run_pipeline(&part.points, filter_method, fitter, fcfg, ccfg, &cal)?;
        record.part_id = part_id;
        estimates.push(record.diameter_mm);
        truths.push(part.true_diameter_mm);
    }
    Ok((mae(&estimates, &truths)?, sdae(&estimates, &truths)?))
}

/// Run the full filter x fitter grid over a dataset whose part 0 is the
/// calibration reference. Cells are independent and evaluated in parallel;
/// the result is byte-identical regardless of scheduling. A cell where any
/// part fails is recorded as NaN rather than silently skipped.
pub fn run_benchmark(
    dataset: &[SyntheticWorkpiece<f64>],
    fcfg: &FilterConfig,
    ccfg: &FitConfig,
    opts: &BenchmarkOptions,
) -> Result<BenchmarkTable> {
    if dataset.len() < 2 {
        return Err(Error::EmptyDataset);
    }
    let filters = FilterMethod::ALL.to_vec();
    let fitters = FitAlgorithm::ALL.to_vec();

    let cells: Vec<(f64, f64)> = (0..filters.len() * fitters.len())
        .into_par_iter()
        .map(|idx| {
            let filter_method = filters[idx / fitters.len()];
            let fitter = fitters[idx % fitters.len()];
            let cal_fitter = if opts.cal_per_filter_only {
                FitAlgorithm::Lsf
            } else {
                fitter
            };
            benchmark_cell(
                dataset,
                filter_method,
                fitter,
                cal_fitter,
                fcfg,
                ccfg,
                opts.include_reference,
            )
            .unwrap_or((f64::NAN, f64::NAN))
        })
        .collect();

    let mut mae_mm = Vec::with_capacity(filters.len());
    let mut sdae_mm = Vec::with_capacity(filters.len());
    for r in 0..filters.len() {
        let row = &cells[r * fitters.len()..(r + 1) * fitters.len()];
        mae_mm.push(row.iter().map(|c| c.0).collect());
        sdae_mm.push(row.iter().map(|c| c.1).collect());
    }

    Ok(BenchmarkTable {
        filters,
        fitters,
        mae_mm,
        sdae_mm,
        num_parts: dataset.len(),
        seed: opts.seed,
    })
}
