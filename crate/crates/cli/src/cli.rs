//! Command-line front end.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use flatreach_core::bound::{build_construction, optimize_c, DEFAULT_TOL};
use flatreach_core::flatnorm::{
    extract_boundary, minimize_l1tv_with, L1tvOptions, Stencil, DEFAULT_SMOOTHING_PASSES,
};
use flatreach_core::geometry::resample_arclength;
use flatreach_core::reach::{
    reach_bruteforce_with, reach_federer_components, BruteforceOptions, FedererOptions,
    ReachEstimate, ReachKind, DEFAULT_SEPARATION_FACTOR,
};
use flatreach_core::ClosedCurve;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::error::{CliError, Result, EXIT_FAIL, EXIT_INPUT, EXIT_OK};
use crate::io::{self, InputKind, Shape};
use crate::pipeline::{run_verify, write_file, PipelineConfig, ReachChoice, MIN_WINDOW_PIXELS};
use crate::report::Overall;
use crate::svg;

/// Environment variable capping the number of worker threads.
pub const THREADS_ENV: &str = "FLATREACH_THREADS";

/// Samples per bounding-box diagonal when a polygon is resampled for reach.
const POLYGON_SAMPLES: f64 = 1024.0;

#[derive(Debug, Parser)]
#[command(
    name = "flatreach",
    version,
    about = "Flat norm minimizers and the reach of their boundaries"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum StencilArg {
    #[value(name = "4")]
    Four,
    #[value(name = "8")]
    Eight,
    #[value(name = "16")]
    Sixteen,
}

impl From<StencilArg> for Stencil {
    fn from(s: StencilArg) -> Self {
        match s {
            StencilArg::Four => Stencil::Four,
            StencilArg::Eight => Stencil::Eight,
            StencilArg::Sixteen => Stencil::Sixteen,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum MethodArg {
    Federer,
    Bruteforce,
    Both,
}

impl From<MethodArg> for ReachChoice {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Federer => ReachChoice::Federer,
            MethodArg::Bruteforce => ReachChoice::Bruteforce,
            MethodArg::Both => ReachChoice::Both,
        }
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Optimize the constant Ĉ and print the reach threshold Ĉ/λ.
    Bound {
        #[arg(long, default_value_t = 1.0)]
        lambda: f64,
        /// Golden-section tolerance on θ.
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
        /// Write the comparison construction at the optimal angle as SVG.
        #[arg(long)]
        plot: Option<PathBuf>,
        /// Half-separation of the two track lines in the plot (default 0.1/λ).
        #[arg(long)]
        rho: Option<f64>,
    },
    /// Compute an L1TV minimizer and write it as a PGM mask.
    Minimize {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        lambda: f64,
        #[arg(long, value_enum, default_value = "16")]
        stencil: StencilArg,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        raster_spacing: Option<f64>,
    },
    /// Estimate the reach of a polygon or of the boundary of a mask.
    Reach {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum, default_value = "federer")]
        method: MethodArg,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Resampling step for polygons (default: diagonal / 1024).
        #[arg(long)]
        step: Option<f64>,
    },
    /// Minimize, measure every boundary component and write a report.
    Verify {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        lambda: f64,
        #[arg(long)]
        report: PathBuf,
        #[arg(long)]
        svg: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value = "16")]
        stencil: StencilArg,
        #[arg(long, value_enum, default_value = "federer")]
        method: MethodArg,
        #[arg(long, default_value_t = DEFAULT_SMOOTHING_PASSES)]
        smoothing: usize,
        #[arg(long, default_value_t = 1.1)]
        curvature_factor: f64,
        #[arg(long, default_value_t = 0.9)]
        reach_factor: f64,
        #[arg(long)]
        raster_spacing: Option<f64>,
    },
}

/// Runs the command line `args` (program name first) and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(text.as_bytes())
            } else {
                out.write_all(text.as_bytes())
            };
            return code;
        }
    };
    if let Err(e) = configure_threads() {
        let _ = writeln!(err, "error: {e}");
        return e.exit_code();
    }
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn configure_threads() -> Result<()> {
    let Ok(value) = std::env::var(THREADS_ENV) else {
        return Ok(());
    };
    let n: usize = value
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| {
            CliError::Usage(format!(
                "{THREADS_ENV} must be a positive integer, got {value:?}"
            ))
        })?;
    // a pool may already exist when running in-process more than once
    let _ = rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global();
    Ok(())
}

fn positive(name: &str, v: f64) -> Result<f64> {
    if v > 0.0 && v.is_finite() {
        Ok(v)
    } else {
        Err(CliError::Usage(format!(
            "--{name} must be positive, got {v}"
        )))
    }
}

fn internal(e: std::io::Error) -> CliError {
    CliError::Internal(format!("cannot write to stdout: {e}"))
}

fn dispatch(command: Command, out: &mut dyn Write) -> Result<i32> {
    match command {
        Command::Bound {
            lambda,
            tol,
            plot,
            rho,
        } => {
            let lambda = positive("lambda", lambda)?;
            let opt = optimize_c(positive("tol", tol)?)?;
            writeln!(out, "c_hat = {:.10}", opt.c_hat).map_err(internal)?;
            writeln!(out, "theta_star = {:.10}", opt.theta_star).map_err(internal)?;
            writeln!(out, "threshold = {:.10}", opt.c_hat / lambda).map_err(internal)?;
            if let Some(path) = plot {
                let rho = rho.unwrap_or(0.1 / lambda);
                let c = build_construction(lambda, rho, opt.x_star(lambda))?;
                write_file(&path, svg::bound_plot(&c).as_bytes())?;
            }
            Ok(EXIT_OK)
        }
        Command::Minimize {
            input,
            lambda,
            stencil,
            out: target,
            raster_spacing,
        } => {
            let lambda = positive("lambda", lambda)?;
            let kind = InputKind::from_path(&input)?;
            let mask = io::load_shape(&input, kind)?
                .into_mask(raster_spacing)?
                .with_margin(1);
            let result = minimize_l1tv_with(
                &mask,
                lambda,
                L1tvOptions {
                    stencil: stencil.into(),
                    ..L1tvOptions::default()
                },
            )?;
            io::save_pgm(&result.sigma, &target)?;
            writeln!(
                out,
                "energy = {:.10}\nperimeter = {:.10}\nsymdiff_area = {:.10}\ncomponents = {}",
                result.energy,
                result.perimeter,
                result.symdiff_area,
                extract_boundary(&result.sigma, 0).len()
            )
            .map_err(internal)?;
            Ok(EXIT_OK)
        }
        Command::Reach {
            input,
            method,
            seed,
            step,
        } => {
            let kind = InputKind::from_path(&input)?;
            // `feature` is the shortest arc over which the input carries real
            // geometry: a few polygon edges, or the pixel-staircase scale
            let (curves, h, feature) = match io::load_shape(&input, kind)? {
                Shape::Curve(c) => {
                    let h = match step {
                        Some(s) => positive("step", s)?,
                        None => c.diameter_bound() / POLYGON_SAMPLES,
                    };
                    c.validate_simple()?;
                    let longest = c.segments().map(|(a, b)| a.distance(b)).fold(0.0, f64::max);
                    (vec![resample_arclength(&c, h)?], h, 16.0 * longest.max(h))
                }
                Shape::Mask(m) => {
                    let h = m.spacing();
                    let curves = extract_boundary(&m, DEFAULT_SMOOTHING_PASSES)
                        .iter()
                        .map(|c| resample_arclength(c, h.min(c.perimeter() / 16.0)))
                        .collect::<flatreach_core::Result<Vec<ClosedCurve>>>()?;
                    (curves, h, MIN_WINDOW_PIXELS * h)
                }
            };
            if curves.is_empty() {
                writeln!(out, "empty shape: reach is infinite").map_err(internal)?;
                return Ok(EXIT_OK);
            }
            let shortest = curves
                .iter()
                .map(ClosedCurve::perimeter)
                .fold(f64::INFINITY, f64::min);
            let window = feature.max(6.0 * h).min(0.45 * shortest);
            let separation_factor = (window / h).max(DEFAULT_SEPARATION_FACTOR);
            let method: ReachChoice = method.into();
            if matches!(method, ReachChoice::Federer | ReachChoice::Both) {
                let options = FedererOptions {
                    curvature_window: Some(window),
                    separation_factor,
                    tangent_window: Some(window),
                };
                for (i, e) in reach_federer_components(&curves, &options)?
                    .iter()
                    .enumerate()
                {
                    writeln!(out, "federer component {i}: {}", describe(e)).map_err(internal)?;
                }
            }
            if matches!(method, ReachChoice::Bruteforce | ReachChoice::Both) {
                let mut rng = StdRng::seed_from_u64(seed);
                let mut options = BruteforceOptions::new(h);
                options.jitter = (rng.gen_range(0.0..1.0), rng.gen_range(0.0..1.0));
                options.separation_factor = separation_factor;
                let e = reach_bruteforce_with(&curves, &options)?;
                writeln!(out, "bruteforce union: {}", describe(&e)).map_err(internal)?;
            }
            Ok(EXIT_OK)
        }
        Command::Verify {
            input,
            lambda,
            report,
            svg,
            seed,
            stencil,
            method,
            smoothing,
            curvature_factor,
            reach_factor,
            raster_spacing,
        } => {
            let mut config = PipelineConfig::new(input, positive("lambda", lambda)?, report)?;
            config.stencil = stencil.into();
            config.raster_spacing = raster_spacing
                .map(|s| positive("raster-spacing", s))
                .transpose()?;
            config.output_svg = svg;
            config.measure.seed = seed;
            config.measure.reach_method = method.into();
            config.measure.smoothing_passes = smoothing;
            config.measure.curvature_factor = positive("curvature-factor", curvature_factor)?;
            config.measure.reach_factor = positive("reach-factor", reach_factor)?;
            let outcome = run_verify(&config)?;
            let r = &outcome.report;
            writeln!(
                out,
                "overall = {}\ncomponents = {}\nthreshold = {:.10}",
                match r.overall {
                    Overall::Pass => "pass",
                    Overall::Fail => "fail",
                    Overall::Vacuous => "vacuous",
                },
                r.components.len(),
                r.threshold
            )
            .map_err(internal)?;
            Ok(match r.overall {
                Overall::Pass | Overall::Vacuous => EXIT_OK,
                Overall::Fail => EXIT_FAIL,
            })
        }
    }
}

fn describe(e: &ReachEstimate) -> String {
    let kind = match e.kind {
        ReachKind::Bottleneck => "bottleneck",
        ReachKind::Focal => "focal",
    };
    match e.witness {
        Some((a, b)) => format!(
            "reach = {:.10} ({kind}, witness ({:.6}, {:.6}) - ({:.6}, {:.6}))",
            e.value, a.x, a.y, b.x, b.y
        ),
        None => format!("reach = {:.10} ({kind})", e.value),
    }
}
