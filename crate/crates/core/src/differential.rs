//! Correct vs. naive packed-domain transforms, measured through a
//! bilinear demosaic.
//!
//! For each synthetic scene the mosaic is demosaiced once as a reference.
//! A transformed mosaic is then demosaiced and compared, on its interior,
//! against the reference pixels it claims to show. Geometry-preserving
//! transforms match to rounding; the packed-domain shortcuts do not.

use serde::Serialize;

use crate::augment::{flip_bayer, Axis};
use crate::error::Result;
use crate::image::RawImage;
use crate::packing::baselines::{naive_flip, naive_unify};
use crate::packing::{pack, unpack};
use crate::pattern::{BayerPattern, ColorChannel};
use crate::simulate::{demosaic_bilinear, gen_scene, mosaic, RgbImage};
use crate::unify::{unify_crop, unify_offsets};

pub const UNIFY_TARGET: BayerPattern = BayerPattern::Bggr;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PathError {
    pub path: &'static str,
    pub naive: bool,
    /// Mean over cases of the per-case interior RMSE, normalized units.
    pub mean_rmse: f64,
    /// Same, in 16-bit quantization steps.
    pub mean_rmse_steps: f64,
    pub cases: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BaselineReport {
    pub seeds: Vec<u64>,
    pub size: usize,
    pub unify_target: BayerPattern,
    pub paths: Vec<PathError>,
    /// naive / correct, `None` when the correct path is exact up to
    /// floating-point rounding.
    pub unify_ratio: Option<f64>,
    pub flip_ratio: Option<f64>,
}

impl BaselineReport {
    pub fn path(&self, name: &str) -> &PathError {
        self.paths
            .iter()
            .find(|p| p.path == name)
            .unwrap_or_else(|| panic!("no path named {name}"))
    }
}

const STEP: f64 = 1.0 / 65535.0;

/// RMSE between `out` and `reference` over the interior of `out`, where
/// `out(r, c)` is meant to show `reference(map(r, c))`.
pub fn interior_rmse(
    out: &RgbImage,
    reference: &RgbImage,
    map: impl Fn(usize, usize) -> (usize, usize),
) -> f64 {
    let mut sum = 0.0;
    let mut n = 0usize;
    for r in 1..out.height() - 1 {
        for c in 1..out.width() - 1 {
            let (rr, rc) = map(r, c);
            for ch in [ColorChannel::R, ColorChannel::G, ColorChannel::B] {
                let d = out.get(ch, r, c) - reference.get(ch, rr, rc);
                sum += d * d;
                n += 1;
            }
        }
    }
    (sum / n as f64).sqrt()
}

struct Acc {
    total: f64,
    cases: usize,
}

impl Acc {
    fn new() -> Self {
        Acc {
            total: 0.0,
            cases: 0,
        }
    }

    fn push(&mut self, rmse: f64) {
        self.total += rmse;
        self.cases += 1;
    }

    fn finish(&self, path: &'static str, naive: bool) -> PathError {
        let mean = self.total / self.cases as f64;
        PathError {
            path,
            naive,
            mean_rmse: mean,
            mean_rmse_steps: mean / STEP,
            cases: self.cases,
        }
    }
}

/// Below this the correct path differs only by summation order.
const EXACT_STEPS: f64 = 1e-3;

fn ratio(naive: &PathError, correct: &PathError) -> Option<f64> {
    (correct.mean_rmse_steps > EXACT_STEPS).then(|| naive.mean_rmse / correct.mean_rmse)
}

/// Unify cases: every non-target source pattern to [`UNIFY_TARGET`].
/// Flip cases: every pattern, both axes.
pub fn run_baseline_demo(seeds: &[u64], size: usize) -> Result<BaselineReport> {
    let mut unify_ok = Acc::new();
    let mut unify_naive = Acc::new();
    let mut flip_ok = Acc::new();
    let mut flip_naive = Acc::new();

    for &seed in seeds {
        let scene = gen_scene(seed, size, size)?;
        for src in BayerPattern::ALL {
            let m: RawImage = mosaic(&scene, src);
            let reference = demosaic_bilinear(&m)?;
            let (h, w) = (m.height(), m.width());

            if src != UNIFY_TARGET {
                let (dy, dx) = unify_offsets(src, UNIFY_TARGET);
                let cropped = demosaic_bilinear(&unify_crop(&m, UNIFY_TARGET)?)?;
                unify_ok.push(interior_rmse(&cropped, &reference, |r, c| (r + dy, c + dx)));

                let relabelled = unpack(&naive_unify(&pack(&m), UNIFY_TARGET));
                let naive = demosaic_bilinear(&relabelled)?;
                unify_naive.push(interior_rmse(&naive, &reference, |r, c| (r, c)));
            }

            let packed = pack(&m);
            for axis in [Axis::Horizontal, Axis::Vertical] {
                let map = |r: usize, c: usize| match axis {
                    Axis::Horizontal => (r, w - 2 - c),
                    Axis::Vertical => (h - 2 - r, c),
                };
                let flipped = demosaic_bilinear(&flip_bayer(&m, axis)?)?;
                flip_ok.push(interior_rmse(&flipped, &reference, map));

                // Compared on the same sites as the correct flip: the naive
                // image is two pixels larger along the flip axis.
                let naive = demosaic_bilinear(&unpack(&naive_flip(&packed, axis)))?;
                let naive = match axis {
                    Axis::Horizontal => crop_rgb(&naive, 0, 0, h, w - 2),
                    Axis::Vertical => crop_rgb(&naive, 0, 0, h - 2, w),
                };
                flip_naive.push(interior_rmse(&naive, &reference, map));
            }
        }
    }

    let paths = vec![
        unify_ok.finish("unify_crop", false),
        unify_naive.finish("naive_unify", true),
        flip_ok.finish("flip_bayer", false),
        flip_naive.finish("naive_flip", true),
    ];
    Ok(BaselineReport {
        seeds: seeds.to_vec(),
        size,
        unify_target: UNIFY_TARGET,
        unify_ratio: ratio(&paths[1], &paths[0]),
        flip_ratio: ratio(&paths[3], &paths[2]),
        paths,
    })
}

fn crop_rgb(img: &RgbImage, top: usize, left: usize, height: usize, width: usize) -> RgbImage {
    RgbImage::from_fn(height, width, |ch, r, c| img.get(ch, top + r, left + c))
        .expect("crop of a valid rgb image")
}
