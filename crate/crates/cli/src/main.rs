mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use bayerkit::{BayerPattern, DenoiserSpec};
use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(
    name = "bayerkit",
    version,
    about = "Bayer pattern unification and augmentation for raw mosaics"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Convert a mosaic to another Bayer pattern
    Unify(UnifyArgs),
    /// Remove the padding recorded in the sidecar and restore the original pattern
    Disunify(DisunifyArgs),
    /// Apply Bayer-preserving flips, transposition and patch cropping
    Augment(AugmentArgs),
    /// Check that packing to four planes and back is lossless
    PackRoundtrip(PackRoundtripArgs),
    /// Render a synthetic scene as a (optionally noisy) mosaic
    Simulate(SimulateArgs),
    /// Denoise through the pad/pack/filter/unpack/crop pipeline
    Denoise(DenoiseArgs),
    /// Bilinear demosaic to a 16-bit PPM
    Demosaic(DemosaicArgs),
    /// Compare a mosaic against a reference (MSE, PSNR, SSIM)
    Metrics(MetricsArgs),
    /// Measure correct vs. naive packed-domain transforms on synthetic scenes
    BaselineDemo(BaselineDemoArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum UnifyMode {
    Crop,
    Pad,
}

#[derive(Args)]
struct UnifyArgs {
    #[arg(long, value_parser = parse_pattern)]
    target: BayerPattern,
    #[arg(long, value_enum)]
    mode: UnifyMode,
    input: PathBuf,
    #[arg(short = 'o', long = "output")]
    output: PathBuf,
}

#[derive(Args)]
struct DisunifyArgs {
    input: PathBuf,
    #[arg(short = 'o', long = "output")]
    output: PathBuf,
}

#[derive(Args)]
struct AugmentArgs {
    #[arg(long, conflicts_with_all = ["seed", "plan"])]
    hflip: bool,
    #[arg(long, conflicts_with_all = ["seed", "plan"])]
    vflip: bool,
    #[arg(long, conflicts_with_all = ["seed", "plan"])]
    transpose: bool,
    /// Patch as TOP,LEFT,HEIGHT,WIDTH (all even)
    #[arg(long, value_parser = parse_patch, conflicts_with_all = ["seed", "plan"])]
    patch: Option<[usize; 4]>,
    /// Sample a random plan from this seed
    #[arg(long, requires = "patch_size", conflicts_with = "plan")]
    seed: Option<u64>,
    #[arg(long, requires = "seed")]
    patch_size: Option<usize>,
    /// JSON plan file
    #[arg(long)]
    plan: Option<PathBuf>,
    input: PathBuf,
    #[arg(short = 'o', long = "output")]
    output: PathBuf,
}

#[derive(Args)]
struct PackRoundtripArgs {
    input: PathBuf,
}

#[derive(Args)]
struct SimulateArgs {
    #[arg(long, value_parser = parse_pattern)]
    pattern: BayerPattern,
    /// HEIGHTxWIDTH
    #[arg(long, value_parser = parse_size)]
    size: (usize, usize),
    #[arg(long)]
    seed: u64,
    /// READ,SHOT noise standard deviations (normalized units)
    #[arg(long, value_parser = parse_noise)]
    noise: Option<(f64, f64)>,
    /// Seed for the noise generator (defaults to --seed)
    #[arg(long, requires = "noise")]
    noise_seed: Option<u64>,
    #[arg(short = 'o', long = "output")]
    output: PathBuf,
    /// Also write the noise-free mosaic here
    #[arg(long)]
    clean: Option<PathBuf>,
}

#[derive(Args)]
struct DenoiseArgs {
    /// identity, gaussian:<sigma> or median:<radius>
    #[arg(long, value_parser = parse_filter)]
    filter: DenoiserSpec,
    #[arg(long, value_parser = parse_pattern)]
    work_pattern: BayerPattern,
    input: PathBuf,
    #[arg(short = 'o', long = "output")]
    output: PathBuf,
}

#[derive(Args)]
struct DemosaicArgs {
    input: PathBuf,
    #[arg(short = 'o', long = "output")]
    output: PathBuf,
}

#[derive(Args)]
struct MetricsArgs {
    #[arg(long = "ref")]
    reference: PathBuf,
    input: PathBuf,
}

#[derive(Args)]
struct BaselineDemoArgs {
    /// First scene seed
    #[arg(long)]
    seed: u64,
    /// Number of consecutive seeds
    #[arg(long, default_value_t = 20)]
    count: u64,
    /// Scene side length (even, >= 8)
    #[arg(long, default_value_t = 128)]
    size: usize,
}

fn parse_pattern(s: &str) -> Result<BayerPattern, String> {
    s.parse().map_err(|e: bayerkit::Error| e.to_string())
}

fn parse_filter(s: &str) -> Result<DenoiserSpec, String> {
    s.parse().map_err(|e: bayerkit::Error| e.to_string())
}

fn parse_size(s: &str) -> Result<(usize, usize), String> {
    let (h, w) = s
        .split_once(['x', 'X'])
        .ok_or_else(|| format!("expected HEIGHTxWIDTH, got {s:?}"))?;
    let num = |v: &str| {
        v.parse::<usize>()
            .map_err(|_| format!("bad dimension {v:?}"))
    };
    Ok((num(h)?, num(w)?))
}

fn parse_patch(s: &str) -> Result<[usize; 4], String> {
    let parts: Vec<usize> = s
        .split(',')
        .map(|v| {
            v.trim()
                .parse::<usize>()
                .map_err(|_| format!("bad patch value {v:?}"))
        })
        .collect::<Result<_, _>>()?;
    parts
        .try_into()
        .map_err(|_| format!("expected TOP,LEFT,HEIGHT,WIDTH, got {s:?}"))
}

fn parse_noise(s: &str) -> Result<(f64, f64), String> {
    let (a, b) = s
        .split_once(',')
        .ok_or_else(|| format!("expected READ,SHOT, got {s:?}"))?;
    let num = |v: &str| {
        v.trim()
            .parse::<f64>()
            .map_err(|_| format!("bad noise value {v:?}"))
    };
    Ok((num(a)?, num(b)?))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Unify(a) => commands::unify(a),
        Command::Disunify(a) => commands::disunify(a),
        Command::Augment(a) => commands::augment(a),
        Command::PackRoundtrip(a) => commands::pack_roundtrip(a),
        Command::Simulate(a) => commands::simulate(a),
        Command::Denoise(a) => commands::denoise(a),
        Command::Demosaic(a) => commands::demosaic(a),
        Command::Metrics(a) => commands::metrics(a),
        Command::BaselineDemo(a) => commands::baseline_demo(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let msg = format!("{e:#}").replace('\n', " ");
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
