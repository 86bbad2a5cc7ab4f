//! Synthetic test bed: smooth colour scenes, CFA sampling, sensor noise
//! and a bilinear demosaic.

use std::f64::consts::TAU;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::border::reflect101;
use crate::error::{Error, Result};
use crate::image::{RawImage, DEFAULT_BLACK_LEVEL, DEFAULT_WHITE_LEVEL};
use crate::pattern::{BayerPattern, ColorChannel};

/// Three full-resolution colour planes with values in `[0, 1]`.
#[derive(Clone, Debug, PartialEq)]
pub struct RgbImage {
    height: usize,
    width: usize,
    planes: [Vec<f64>; 3],
}

impl RgbImage {
    pub fn new(height: usize, width: usize, planes: [Vec<f64>; 3]) -> Result<Self> {
        if height < 2 || width < 2 || !height.is_multiple_of(2) || !width.is_multiple_of(2) {
            return Err(Error::BadDimensions(format!(
                "rgb image {height}x{width} must have even dimensions >= 2"
            )));
        }
        if planes.iter().any(|p| p.len() != height * width) {
            return Err(Error::BadDimensions(format!(
                "rgb planes do not match {height}x{width}"
            )));
        }
        if planes.iter().flatten().any(|v| !(0.0..=1.0).contains(v)) {
            return Err(Error::BadDimensions("rgb values must lie in [0, 1]".into()));
        }
        Ok(RgbImage {
            height,
            width,
            planes,
        })
    }

    /// Evaluates `f(channel, row, col)` at every site; results are clamped
    /// to `[0, 1]`.
    pub fn from_fn(
        height: usize,
        width: usize,
        mut f: impl FnMut(ColorChannel, usize, usize) -> f64,
    ) -> Result<Self> {
        let planes = [ColorChannel::R, ColorChannel::G, ColorChannel::B].map(|ch| {
            let mut v = Vec::with_capacity(height * width);
            for r in 0..height {
                for c in 0..width {
                    v.push(f(ch, r, c).clamp(0.0, 1.0));
                }
            }
            v
        });
        Self::new(height, width, planes)
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn width(&self) -> usize {
        self.width
    }

    #[inline]
    pub fn get(&self, ch: ColorChannel, row: usize, col: usize) -> f64 {
        self.planes[ch.index()][row * self.width + col]
    }

    pub fn plane(&self, ch: ColorChannel) -> &[f64] {
        &self.planes[ch.index()]
    }

    pub fn mean(&self, ch: ColorChannel) -> f64 {
        let p = self.plane(ch);
        p.iter().sum::<f64>() / p.len() as f64
    }
}

/// Read and shot noise standard deviations in normalized units.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NoiseParams {
    sigma_read: f64,
    sigma_shot: f64,
}

impl NoiseParams {
    pub fn new(sigma_read: f64, sigma_shot: f64) -> Result<Self> {
        for (name, v) in [("sigma_read", sigma_read), ("sigma_shot", sigma_shot)] {
            if !v.is_finite() || v < 0.0 {
                return Err(Error::BadNoiseParam(format!("{name} = {v}")));
            }
        }
        Ok(NoiseParams {
            sigma_read,
            sigma_shot,
        })
    }

    pub fn sigma_read(&self) -> f64 {
        self.sigma_read
    }

    pub fn sigma_shot(&self) -> f64 {
        self.sigma_shot
    }

    /// Noise standard deviation at normalized intensity `x`.
    pub fn std_at(&self, x: f64) -> f64 {
        (self.sigma_read * self.sigma_read + self.sigma_shot * self.sigma_shot * x.max(0.0)).sqrt()
    }

    fn is_zero(&self) -> bool {
        self.sigma_read == 0.0 && self.sigma_shot == 0.0
    }
}

const SCENE_BASES: [f64; 3] = [0.3, 0.5, 0.7];
const SCENE_WAVES: usize = 3;

/// Smooth, strongly coloured scene.
///
/// Each channel is a base level (a seeded permutation of 0.3/0.5/0.7 with
/// ±0.03 jitter) plus three plane waves of 0.03-0.08 amplitude and 0.5-2.5
/// cycles across the image, each channel with its own phases.
pub fn gen_scene(seed: u64, height: usize, width: usize) -> Result<RgbImage> {
    if height < 8 || width < 8 || !height.is_multiple_of(2) || !width.is_multiple_of(2) {
        return Err(Error::BadDimensions(format!(
            "scene {height}x{width} must have even dimensions >= 8"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut bases = SCENE_BASES;
    bases.shuffle(&mut rng);

    struct Wave {
        amp: f64,
        fy: f64,
        fx: f64,
        phase: f64,
    }
    let mut channels = Vec::with_capacity(3);
    for base in bases {
        let base = base + rng.random_range(-0.03..0.03);
        let waves: Vec<Wave> = (0..SCENE_WAVES)
            .map(|_| {
                let mut freq = || {
                    let f: f64 = rng.random_range(0.5..2.5);
                    if rng.random_bool(0.5) {
                        f
                    } else {
                        -f
                    }
                };
                let (fy, fx) = (freq(), freq());
                Wave {
                    amp: rng.random_range(0.03..0.08),
                    fy,
                    fx,
                    phase: rng.random_range(0.0..TAU),
                }
            })
            .collect();
        channels.push((base, waves));
    }

    let (h, w) = (height as f64, width as f64);
    RgbImage::from_fn(height, width, |ch, r, c| {
        let (base, waves) = &channels[ch.index()];
        base + waves
            .iter()
            .map(|wv| {
                wv.amp * (TAU * (wv.fy * r as f64 / h + wv.fx * c as f64 / w) + wv.phase).sin()
            })
            .sum::<f64>()
    })
}

/// Samples `rgb` through the colour filter array with full 16-bit levels.
pub fn mosaic(rgb: &RgbImage, pattern: BayerPattern) -> RawImage {
    mosaic_with_levels(rgb, pattern, DEFAULT_BLACK_LEVEL, DEFAULT_WHITE_LEVEL)
        .expect("default levels are ordered")
}

/// `out(r, c) = round(rgb[channel](r, c) * (white - black)) + black`,
/// rounding half away from zero.
pub fn mosaic_with_levels(
    rgb: &RgbImage,
    pattern: BayerPattern,
    black_level: u16,
    white_level: u16,
) -> Result<RawImage> {
    if black_level >= white_level {
        return Err(Error::BadLevels {
            black: black_level,
            white: white_level,
        });
    }
    let range = f64::from(white_level) - f64::from(black_level);
    let mut samples = Vec::with_capacity(rgb.height * rgb.width);
    for r in 0..rgb.height {
        for c in 0..rgb.width {
            let v = rgb.get(pattern.channel_at(r, c), r, c);
            samples.push(quantize(v, range, black_level, white_level));
        }
    }
    RawImage::with_levels(
        rgb.height,
        rgb.width,
        samples,
        pattern,
        black_level,
        white_level,
    )
}

#[inline]
fn quantize(norm: f64, range: f64, black: u16, white: u16) -> u16 {
    let v = (norm * range).round() + f64::from(black);
    v.clamp(f64::from(black), f64::from(white)) as u16
}

/// Heteroscedastic Gaussian noise with variance
/// `sigma_read^2 + sigma_shot^2 * x`, `x` the normalized clean value.
/// Output is rounded and clipped to the sensor levels.
pub fn add_noise(img: &RawImage, params: NoiseParams, seed: u64) -> RawImage {
    if params.is_zero() {
        return img.clone();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let range = img.range();
    let (black, white) = (img.black_level(), img.white_level());
    let samples = img
        .samples()
        .iter()
        .map(|&s| {
            let x = (f64::from(s) - f64::from(black)) / range;
            let z: f64 = rng.sample(StandardNormal);
            quantize(x + params.std_at(x) * z, range, black, white)
        })
        .collect();
    img.derive(img.height(), img.width(), samples, img.pattern())
}

/// Bilinear demosaic.
///
/// Known colours pass through. A missing colour is the mean of the
/// axial neighbours carrying it (2 or 4 of them), or of the diagonal
/// neighbours when no axial one does. Borders use reflect-101 indexing.
pub fn demosaic_bilinear(img: &RawImage) -> Result<RgbImage> {
    let (h, w) = (img.height(), img.width());
    if h < 4 || w < 4 {
        return Err(Error::ImageTooSmall(format!(
            "demosaic needs at least 4x4, got {h}x{w}"
        )));
    }
    let norm: Vec<f64> = (0..h)
        .flat_map(|r| (0..w).map(move |c| (r, c)))
        .map(|(r, c)| img.normalized(r, c).clamp(0.0, 1.0))
        .collect();
    let pattern = img.pattern();

    const AXIAL: [(isize, isize); 4] = [(-1, 0), (0, -1), (0, 1), (1, 0)];
    const DIAGONAL: [(isize, isize); 4] = [(-1, -1), (-1, 1), (1, -1), (1, 1)];

    let mut planes = [vec![0.0; h * w], vec![0.0; h * w], vec![0.0; h * w]];
    for r in 0..h {
        for c in 0..w {
            let own = pattern.channel_at(r, c);
            for ch in [ColorChannel::R, ColorChannel::G, ColorChannel::B] {
                let v = if ch == own {
                    norm[r * w + c]
                } else {
                    let mean_of = |offsets: &[(isize, isize)]| {
                        let mut sum = 0.0;
                        let mut n = 0usize;
                        for &(dr, dc) in offsets {
                            let rr = reflect101(r as isize + dr, h);
                            let cc = reflect101(c as isize + dc, w);
                            if pattern.channel_at(rr, cc) == ch {
                                sum += norm[rr * w + cc];
                                n += 1;
                            }
                        }
                        (n > 0).then(|| sum / n as f64)
                    };
                    mean_of(&AXIAL)
                        .or_else(|| mean_of(&DIAGONAL))
                        .expect("every Bayer site has a neighbour of each colour")
                };
                planes[ch.index()][r * w + c] = v;
            }
        }
    }
    RgbImage::new(h, w, planes)
}
