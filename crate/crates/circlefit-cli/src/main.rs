//! circlefit command line: fit circles to edge-point files, filter
//! contours, generate synthetic washer datasets, and run the filter x
//! fitter benchmark.
//!
//! Exit codes: 0 success, 2 usage error, 3 data/parse error, 4 numerical
//! failure.

mod config;

use circlefit::harness::{
    calibrate, io, render_table, run_benchmark, BenchmarkOptions, TableFormat,
};
use circlefit::synth::make_washer_dataset;
use circlefit::{
    apply_filter_named, fit_named, Error, FilterConfig, FitConfig, PointSet64, Result,
};
use clap::{Args, Parser, Subcommand};
use config::ConfigFile;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "circlefit", version, about = "Circle fitting and contour outlier filtering")]
struct Cli {
    /// JSON config file; explicit flags override its values.
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Fit a circle to an edge-point file.
    Fit(FitArgs),
    /// Remove outliers from an edge-point file.
    Filter(FilterArgs),
    /// Generate a synthetic washer dataset.
    Synth(SynthArgs),
    /// Run the filter x fitter benchmark on a synthetic dataset.
    Bench(BenchArgs),
    /// Compute a pixel-to-millimeter conversion factor.
    Calibrate(CalibrateArgs),
}

#[derive(Args)]
struct FitFlags {
    #[arg(long)]
    ransac_iterations: Option<usize>,
    #[arg(long)]
    ransac_epsilon: Option<f64>,
    #[arg(long)]
    lmeds_samples: Option<usize>,
    #[arg(long)]
    irls_delta_factor: Option<f64>,
    #[arg(long)]
    max_irls_iterations: Option<usize>,
    #[arg(long)]
    convergence_tol: Option<f64>,
    /// Seed for the stochastic fitters.
    #[arg(long = "fit-seed")]
    fit_seed: Option<u64>,
}

impl FitFlags {
    fn apply(&self, cfg: &mut FitConfig) {
        macro_rules! set {
            ($($field:ident),+) => {
                $(if let Some(v) = self.$field { cfg.$field = v; })+
            };
        }
        set!(
            ransac_iterations,
            ransac_epsilon,
            lmeds_samples,
            irls_delta_factor,
            max_irls_iterations,
            convergence_tol
        );
        if let Some(v) = self.fit_seed {
            cfg.rng_seed = v;
        }
    }
}

#[derive(Args)]
struct FilterFlags {
    #[arg(long)]
    zscore_tau: Option<f64>,
    #[arg(long)]
    mad_tau: Option<f64>,
    #[arg(long)]
    mad_epsilon: Option<f64>,
    /// Neighborhood radius in px; omit for automatic selection.
    #[arg(long)]
    dbscan_eps: Option<f64>,
    #[arg(long)]
    dbscan_min_pts: Option<usize>,
    #[arg(long)]
    lof_k: Option<usize>,
    #[arg(long)]
    lof_tau: Option<f64>,
    #[arg(long)]
    percentile_lo: Option<f64>,
    #[arg(long)]
    percentile_hi: Option<f64>,
    #[arg(long)]
    pcod_window: Option<usize>,
    #[arg(long)]
    pcod_stride: Option<usize>,
    #[arg(long)]
    pcod_t: Option<f64>,
}

impl FilterFlags {
    fn apply(&self, cfg: &mut FilterConfig) {
        macro_rules! set {
            ($($field:ident),+) => {
                $(if let Some(v) = self.$field { cfg.$field = v; })+
            };
        }
        set!(
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
            pcod_t
        );
        if let Some(v) = self.dbscan_eps {
            cfg.dbscan_eps = Some(v);
        }
    }
}

#[derive(Args)]
struct FitArgs {
    /// Algorithm: lsf, pratt, taubin, ransac, irls, hyperls, mestimator,
    /// lmeds, tls, edcircle.
    #[arg(long)]
    algo: String,
    /// Edge-point file.
    #[arg(long)]
    input: PathBuf,
    /// Input format.
    #[arg(long, default_value = "csv")]
    format: String,
    #[command(flatten)]
    fit: FitFlags,
}

#[derive(Args)]
struct FilterArgs {
    /// Method: zscore, mad, dbscan, lof, percentile, none, pcod.
    #[arg(long)]
    method: String,
    /// Edge-point file.
    #[arg(long)]
    input: PathBuf,
    /// Input format.
    #[arg(long, default_value = "csv")]
    format: String,
    /// Write surviving points here as CSV (stdout when omitted).
    #[arg(long)]
    out: Option<PathBuf>,
    #[command(flatten)]
    filter: FilterFlags,
}

#[derive(Args)]
struct SynthArgs {
    /// Number of parts, reference included.
    #[arg(long)]
    parts: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    /// Directory for per-part CSV files and the manifest.
    #[arg(long)]
    out_dir: PathBuf,
}

#[derive(Args)]
struct BenchArgs {
    /// Number of parts, reference included.
    #[arg(long)]
    parts: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    /// Output format: csv, markdown, json.
    #[arg(long)]
    emit: Option<String>,
    /// Output path (stdout when omitted).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Worker threads for the benchmark grid; 0 uses all cores.
    #[arg(long)]
    threads: Option<usize>,
    /// Calibrate once per filter row (least-squares fitter) instead of
    /// once per (filter, fitter) cell.
    #[arg(long)]
    cal_per_filter_only: bool,
    /// Include the reference part in the error statistics.
    #[arg(long)]
    include_reference: bool,
    #[command(flatten)]
    fit: FitFlags,
    #[command(flatten)]
    filter: FilterFlags,
}

#[derive(Args)]
struct CalibrateArgs {
    /// Reference diameter measured in pixels.
    #[arg(long)]
    ref_px: f64,
    /// Reference diameter in millimeters.
    #[arg(long)]
    ref_mm: f64,
}

fn exit_code_for(err: &Error) -> u8 {
    match err {
        Error::Io(_) | Error::Parse { .. } | Error::NonFiniteValue { .. } => 3,
        Error::UnknownAlgorithm(_)
        | Error::UnknownMethod(_)
        | Error::InvalidConfig(_)
        | Error::BadCount(_)
        | Error::NonPositiveInput => 2,
        Error::Pipeline { source, .. } => exit_code_for(source),
        _ => 4,
    }
}

fn load_points(input: &Path, format: &str) -> Result<PointSet64> {
    let format = format.parse()?;
    io::parse_points_file(input, format)
}

fn cmd_fit(cfgfile: &ConfigFile, args: &FitArgs) -> Result<()> {
    let mut cfg = config::fit_config_from(&cfgfile.fit);
    args.fit.apply(&mut cfg);
    cfg.validate()?;
    let ps = load_points(&args.input, &args.format)?;
    let result = fit_named(&args.algo, &ps, &cfg)?;
    println!(
        "a={:.9} b={:.9} r={:.9} diameter={:.9}",
        result.circle.a,
        result.circle.b,
        result.circle.r,
        result.circle.diameter()
    );
    println!(
        "iterations={} converged={} inliers={}",
        result.iterations, result.converged, result.inlier_count
    );
    Ok(())
}

fn cmd_filter(cfgfile: &ConfigFile, args: &FilterArgs) -> Result<()> {
    let mut cfg = config::filter_config_from(&cfgfile.filter);
    args.filter.apply(&mut cfg);
    cfg.validate()?;
    let ps = load_points(&args.input, &args.format)?;
    let report = apply_filter_named(&args.method, &ps, &cfg)?;
    let csv = io::points_to_csv(&report.kept);
    match &args.out {
        Some(path) => std::fs::write(path, csv)?,
        None => print!("{csv}"),
    }
    eprintln!(
        "{}: removed {} of {} points{}",
        report.method,
        report.removed_indices.len(),
        ps.len(),
        if report.removed_indices.is_empty() {
            String::new()
        } else {
            format!(" (indices {:?})", report.removed_indices)
        }
    );
    Ok(())
}

fn cmd_synth(cfgfile: &ConfigFile, args: &SynthArgs) -> Result<()> {
    let parts = args.parts.or(cfgfile.bench.parts).unwrap_or(45);
    let seed = args.seed.or(cfgfile.bench.seed).unwrap_or(2024);
    let dataset = make_washer_dataset::<f64>(parts, seed)?;
    std::fs::create_dir_all(&args.out_dir)?;

    let mut manifest_parts = Vec::with_capacity(dataset.len());
    for (i, part) in dataset.iter().enumerate() {
        let filename = format!("part_{i:03}.csv");
        std::fs::write(args.out_dir.join(&filename), io::points_to_csv(&part.points))?;
        manifest_parts.push(serde_json::json!({
            "file": filename,
            "true_diameter_mm": part.true_diameter_mm,
            "truth_px": { "a": part.truth.a, "b": part.truth.b, "r": part.truth.r },
            "outlier_indices": part.outlier_indices,
            "contamination": part.contamination,
            "part_seed": part.seed,
        }));
    }
    let manifest = serde_json::json!({
        "seed": seed,
        "parts": parts,
        "px_per_mm": circlefit::synth::PX_PER_MM,
        "points_per_part": circlefit::synth::POINTS_PER_PART,
        "note": "synthetic dataset; contamination mixture is a stand-in, not calibrated to physical measurements",
        "reference_part": 0,
        "workpieces": manifest_parts,
    });
    std::fs::write(
        args.out_dir.join("manifest.json"),
        serde_json::to_string_pretty(&manifest).expect("manifest serializes") + "\n",
    )?;
    eprintln!("wrote {} parts to {}", parts, args.out_dir.display());
    Ok(())
}

fn cmd_bench(cfgfile: &ConfigFile, args: &BenchArgs) -> Result<()> {
    let parts = args.parts.or(cfgfile.bench.parts).unwrap_or(45);
    let seed = args.seed.or(cfgfile.bench.seed).unwrap_or(2024);
    let emit = args
        .emit
        .clone()
        .or_else(|| cfgfile.bench.emit.clone())
        .unwrap_or_else(|| "csv".to_string());
    let format: TableFormat = emit.parse()?;
    let threads = args.threads.or(cfgfile.bench.threads).unwrap_or(0);

    let mut fcfg = config::filter_config_from(&cfgfile.filter);
    args.filter.apply(&mut fcfg);
    fcfg.validate()?;
    let mut ccfg = config::fit_config_from(&cfgfile.fit);
    args.fit.apply(&mut ccfg);
    ccfg.validate()?;

    let opts = BenchmarkOptions {
        cal_per_filter_only: args.cal_per_filter_only
            || cfgfile.bench.cal_per_filter_only.unwrap_or(false),
        include_reference: args.include_reference
            || cfgfile.bench.include_reference.unwrap_or(false),
        seed,
    };

    let dataset = make_washer_dataset::<f64>(parts, seed)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Error::InvalidConfig(format!("thread pool: {e}")))?;
    let table = pool.install(|| run_benchmark(&dataset, &fcfg, &ccfg, &opts))?;

    let text = render_table(&table, format, &fcfg, &ccfg);
    match &args.out {
        Some(path) => std::fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn cmd_calibrate(args: &CalibrateArgs) -> Result<()> {
    let cal = calibrate(
        args.ref_px,
        args.ref_mm,
        circlefit::FilterMethod::None,
        circlefit::FitAlgorithm::Lsf,
    )?;
    println!("mm_per_px={}", cal.mm_per_px);
    Ok(())
}

fn run() -> Result<()> {
    let cli = Cli::parse();
    let cfgfile = match &cli.config {
        Some(path) => ConfigFile::load(path)?,
        None => ConfigFile::default(),
    };
    match &cli.command {
        Command::Fit(args) => cmd_fit(&cfgfile, args),
        Command::Filter(args) => cmd_filter(&cfgfile, args),
        Command::Synth(args) => cmd_synth(&cfgfile, args),
        Command::Bench(args) => cmd_bench(&cfgfile, args),
        Command::Calibrate(args) => cmd_calibrate(args),
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(exit_code_for(&err))
        }
    }
}
