//! `seampaste` command-line front end.
//!
//! Every successful command prints exactly one JSON line on stdout;
//! diagnostics go to stderr. Exit codes: 0 success, 1 I/O, 2 validation,
//! 3 solver non-convergence, 4 augmentation produced no samples.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use seampaste::image::BinaryMask;
use seampaste::io::{load_dataset, load_image, load_manifest, load_mask, save_image, DirectorySink};
use seampaste::pipeline::{
    augment_dataset, extract_roi, paste, seam_score, AugmentConfig, BlendMode, OverlapPolicy,
    Placement,
};
use seampaste::solver::{harmonic_fill, SolveReport, SolverParams};
use seampaste::Error;

const EXIT_IO: u8 = 1;
const EXIT_VALIDATION: u8 = 2;
const EXIT_NOT_CONVERGED: u8 = 3;
const EXIT_EMPTY_RUN: u8 = 4;

#[derive(Parser)]
#[command(name = "seampaste", version, about = "Copy-paste augmentation with Poisson blending for grayscale ultrasound images")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Paste a masked source region into a target image
    Blend(BlendArgs),
    /// Fill a masked region with the smoothest interpolant of its boundary
    Fill(FillArgs),
    /// Generate augmented samples from a dataset manifest
    Augment(AugmentArgs),
    /// Measure the mean intensity jump across a region boundary
    Seam(SeamArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Seamless,
    Direct,
}

impl From<ModeArg> for BlendMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Seamless => BlendMode::Seamless,
            ModeArg::Direct => BlendMode::Direct,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum OverlapArg {
    Reject,
    Occlude,
}

impl From<OverlapArg> for OverlapPolicy {
    fn from(o: OverlapArg) -> Self {
        match o {
            OverlapArg::Reject => OverlapPolicy::Reject,
            OverlapArg::Occlude => OverlapPolicy::Occlude,
        }
    }
}

#[derive(Args)]
struct SolverArgs {
    /// Relative residual at which the solver stops
    #[arg(long, default_value_t = 1e-6, value_parser = parse_positive)]
    tol: f64,
    /// Iteration cap [default: 10 × region pixels, at most 100000]
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    max_iter: Option<u64>,
}

impl SolverArgs {
    fn params(&self) -> SolverParams {
        SolverParams {
            tol: self.tol,
            max_iter: self.max_iter.map(|n| n as usize),
        }
    }
}

#[derive(Args)]
struct BlendArgs {
    /// Source image (8-bit grayscale PNG or PGM)
    #[arg(long)]
    source: PathBuf,
    /// Mask selecting the region of the source to paste
    #[arg(long)]
    source_mask: PathBuf,
    /// Background image receiving the paste
    #[arg(long)]
    target: PathBuf,
    /// Translation DX,DY from source to target coordinates
    #[arg(long, default_value = "0,0", value_parser = parse_offset, allow_hyphen_values = true)]
    offset: (i64, i64),
    /// Blend mode
    #[arg(long, value_enum, default_value = "seamless")]
    mode: ModeArg,
    #[command(flatten)]
    solver: SolverArgs,
    /// Output image path
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct FillArgs {
    /// Image whose masked region is replaced
    #[arg(long)]
    target: PathBuf,
    /// Region to fill; must not touch the image border
    #[arg(long)]
    mask: PathBuf,
    #[command(flatten)]
    solver: SolverArgs,
    /// Output image path
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct AugmentArgs {
    /// Input dataset manifest (JSON)
    #[arg(long)]
    manifest: PathBuf,
    /// Directory for images/, masks/ and manifest.json
    #[arg(long)]
    out_dir: PathBuf,
    /// Number of samples to attempt
    #[arg(long, default_value_t = 1)]
    count: usize,
    /// Master seed; sample i uses a stream derived from (seed, i)
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Scale range LO,HI
    #[arg(long, default_value = "0.8,1.25", value_parser = parse_scale)]
    scale: (f64, f64),
    /// Rotation drawn from [-DEG, +DEG]
    #[arg(long, default_value_t = 25.0, value_parser = parse_angle)]
    rotate: f64,
    /// Probability of a horizontal flip
    #[arg(long, default_value_t = 0.5, value_parser = parse_probability)]
    flip_prob: f64,
    /// Blend mode
    #[arg(long, value_enum, default_value = "seamless")]
    mode: ModeArg,
    /// What to do when the pasted lesion meets an existing instance
    #[arg(long, value_enum, default_value = "reject")]
    overlap: OverlapArg,
    /// Placement attempts per sample before it is skipped
    #[arg(long, default_value_t = 64, value_parser = clap::value_parser!(u64).range(1..))]
    retries: u64,
    #[command(flatten)]
    solver: SolverArgs,
}

#[derive(Args)]
struct SeamArgs {
    /// Image to measure
    #[arg(long)]
    image: PathBuf,
    /// Region whose boundary is measured
    #[arg(long)]
    mask: PathBuf,
}

fn parse_positive(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(v) if v > 0.0 && v.is_finite() => Ok(v),
        _ => Err(format!("expected a positive number, got `{s}`")),
    }
}

fn parse_angle(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(v) if v >= 0.0 && v.is_finite() => Ok(v),
        _ => Err(format!("expected a non-negative angle in degrees, got `{s}`")),
    }
}

fn parse_probability(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(v) if (0.0..=1.0).contains(&v) => Ok(v),
        _ => Err(format!("expected a probability in [0, 1], got `{s}`")),
    }
}

fn parse_pair<T: std::str::FromStr>(s: &str) -> Option<(T, T)> {
    let (a, b) = s.split_once(',')?;
    Some((a.trim().parse().ok()?, b.trim().parse().ok()?))
}

fn parse_offset(s: &str) -> Result<(i64, i64), String> {
    parse_pair(s).ok_or_else(|| format!("expected DX,DY integers, got `{s}`"))
}

fn parse_scale(s: &str) -> Result<(f64, f64), String> {
    match parse_pair::<f64>(s) {
        Some((lo, hi)) if lo > 0.0 && lo <= hi && hi.is_finite() => Ok((lo, hi)),
        _ => Err(format!("expected LO,HI with 0 < LO <= HI, got `{s}`")),
    }
}

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Io(_) => EXIT_IO,
            Error::NotConverged(_) => EXIT_NOT_CONVERGED,
            _ => EXIT_VALIDATION,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

/// A successful command's JSON line plus its exit code.
struct Outcome {
    line: Value,
    code: u8,
}

fn report_json(report: Option<SolveReport>) -> Value {
    match report {
        Some(r) => json!({
            "iterations": r.iterations,
            "relative_residual": r.relative_residual,
            "converged": r.converged,
        }),
        None => Value::Null,
    }
}

fn convergence_code(report: Option<SolveReport>) -> u8 {
    match report {
        Some(r) if !r.converged => {
            eprintln!(
                "warning: solver stopped after {} iterations at relative residual {:.3e}; wrote best iterate",
                r.iterations, r.relative_residual
            );
            EXIT_NOT_CONVERGED
        }
        _ => 0,
    }
}

fn run_blend(args: &BlendArgs) -> Result<Outcome, Failure> {
    let source = load_image(&args.source)?;
    let mask = load_mask(&args.source_mask, source.dims())?;
    let target = load_image(&args.target)?;
    let patch = extract_roi(&source, &mask)?;
    let (ox, oy) = patch.origin();
    let placement = Placement {
        dx: ox + args.offset.0,
        dy: oy + args.offset.1,
    };
    let sample = paste(
        &target,
        &[],
        &patch,
        placement,
        args.mode.into(),
        OverlapPolicy::Occlude,
        &args.solver.params(),
    )?;
    let seam = seam_score(&sample.image, sample.pasted_mask())?;
    save_image(&sample.image, &args.out)?;
    eprintln!("wrote {}", args.out.display());
    Ok(Outcome {
        code: convergence_code(sample.solve),
        line: json!({
            "command": "blend",
            "mode": BlendMode::from(args.mode),
            "region_pixels": sample.pasted_mask().count(),
            "solve": report_json(sample.solve),
            "seam_score": seam,
            "out": args.out,
        }),
    })
}

fn run_fill(args: &FillArgs) -> Result<Outcome, Failure> {
    let target = load_image(&args.target)?;
    let mask = load_mask(&args.mask, target.dims())?;
    let filled = harmonic_fill(&target, &mask, &args.solver.params())?;
    let seam = seam_score(&filled.value, &mask)?;
    save_image(&filled.value, &args.out)?;
    eprintln!("wrote {}", args.out.display());
    Ok(Outcome {
        code: convergence_code(Some(filled.report)),
        line: json!({
            "command": "fill",
            "region_pixels": mask.count(),
            "solve": report_json(Some(filled.report)),
            "seam_score": seam,
            "out": args.out,
        }),
    })
}

fn run_augment(args: &AugmentArgs) -> Result<Outcome, Failure> {
    let config = AugmentConfig {
        scale: [args.scale.0, args.scale.1],
        rotation_deg: args.rotate,
        flip_prob: args.flip_prob,
        mode: args.mode.into(),
        overlap: args.overlap.into(),
        retries: args.retries as usize,
        solver: args.solver.params(),
        seed: args.seed,
        count: args.count,
    };
    config.validate()?;
    let manifest = load_manifest(&args.manifest)?;
    let dataset = load_dataset(&manifest)?;
    let mut sink = DirectorySink::create(&args.out_dir)?;
    let summary = augment_dataset(&dataset, &config, &mut sink)?;
    eprintln!(
        "{} of {} samples written to {}",
        summary.written,
        summary.requested,
        args.out_dir.display()
    );
    let skips: serde_json::Map<String, Value> = summary
        .skips_by_reason
        .iter()
        .map(|(reason, n)| (reason.as_str().to_string(), json!(n)))
        .collect();
    let code = if summary.written == 0 {
        eprintln!("error: no samples were written");
        EXIT_EMPTY_RUN
    } else {
        0
    };
    Ok(Outcome {
        code,
        line: json!({
            "command": "augment",
            "requested": summary.requested,
            "written": summary.written,
            "skipped": summary.skipped,
            "skips": skips,
            "unconverged": summary.unconverged,
            "mean_seam_score": summary.mean_seam_score,
            "manifest": sink.manifest_path(),
        }),
    })
}

fn run_seam(args: &SeamArgs) -> Result<Outcome, Failure> {
    let image = load_image(&args.image)?;
    let mask: BinaryMask = load_mask(&args.mask, image.dims())?;
    let score = seam_score(&image, &mask)?;
    Ok(Outcome {
        code: 0,
        line: json!({
            "command": "seam",
            "seam_score": score,
            "region_pixels": mask.count(),
            "image": args.image,
        }),
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Blend(a) => run_blend(a),
        Command::Fill(a) => run_fill(a),
        Command::Augment(a) => run_augment(a),
        Command::Seam(a) => run_seam(a),
    };
    match result {
        Ok(outcome) => {
            println!("{}", outcome.line);
            ExitCode::from(outcome.code)
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
