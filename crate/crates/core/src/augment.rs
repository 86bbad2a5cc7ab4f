//! Bayer-preserving augmentation.
//!
//! A flip moves the pattern origin by one column (or row), so every flip
//! here is fused with a crop of the first and last column (row) that moves
//! it back. Transposition only preserves patterns whose greens lie on the
//! anti-diagonal. Patches are cut at even offsets.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::image::RawImage;
use crate::pattern::BayerPattern;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Axis {
    Horizontal,
    Vertical,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "lowercase")]
pub enum AugStep {
    HFlip,
    VFlip,
    Transpose,
    Patch {
        top: usize,
        left: usize,
        height: usize,
        width: usize,
    },
}

/// An ordered list of augmentation steps. `seed` records where a sampled
/// plan came from; hand-written plans use 0.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct AugPlan {
    #[serde(default)]
    pub seed: u64,
    pub steps: Vec<AugStep>,
}

impl AugPlan {
    pub fn new(steps: Vec<AugStep>) -> Self {
        AugPlan { seed: 0, steps }
    }

    /// Rejects patch steps with odd geometry. Bounds and transpose legality
    /// depend on the image and are checked by [`apply_plan`].
    pub fn validate(&self) -> Result<()> {
        for (i, step) in self.steps.iter().enumerate() {
            if let AugStep::Patch {
                top,
                left,
                height,
                width,
            } = *step
            {
                check_even(top, left, height, width).map_err(|e| e.at_step(i))?;
            }
        }
        Ok(())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("plan serialization is infallible")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let plan: AugPlan = serde_json::from_str(text)
            .map_err(|e| Error::Parse(format!("augmentation plan: {e}")))?;
        plan.validate()?;
        Ok(plan)
    }
}

/// Flips `img` and drops the first and last column (row) so the pattern
/// is unchanged. Horizontal: `out(r, c) = img(r, W - 2 - c)`.
pub fn flip_bayer(img: &RawImage, axis: Axis) -> Result<RawImage> {
    let (h, w) = (img.height(), img.width());
    match axis {
        Axis::Horizontal => {
            if w < 4 {
                return Err(Error::ImageTooSmall(format!(
                    "horizontal flip needs width >= 4, got {w}"
                )));
            }
            let mut samples = Vec::with_capacity(h * (w - 2));
            for r in 0..h {
                samples.extend(img.row(r)[1..w - 1].iter().rev());
            }
            Ok(img.derive(h, w - 2, samples, img.pattern()))
        }
        Axis::Vertical => {
            if h < 4 {
                return Err(Error::ImageTooSmall(format!(
                    "vertical flip needs height >= 4, got {h}"
                )));
            }
            let mut samples = Vec::with_capacity((h - 2) * w);
            for r in (1..h - 1).rev() {
                samples.extend_from_slice(img.row(r));
            }
            Ok(img.derive(h - 2, w, samples, img.pattern()))
        }
    }
}

/// `out(r, c) = img(c, r)`. Only legal for RGGB and BGGR.
pub fn transpose_bayer(img: &RawImage) -> Result<RawImage> {
    if !img.pattern().transpose_safe() {
        return Err(Error::IllegalTranspose(img.pattern()));
    }
    let (h, w) = (img.height(), img.width());
    let mut samples = Vec::with_capacity(h * w);
    for c in 0..w {
        samples.extend((0..h).map(|r| img.get(r, c)));
    }
    Ok(img.derive(w, h, samples, img.pattern()))
}

fn check_even(top: usize, left: usize, height: usize, width: usize) -> Result<()> {
    if [top, left, height, width].iter().any(|v| v % 2 != 0) {
        return Err(Error::OddOffset {
            top,
            left,
            height,
            width,
        });
    }
    Ok(())
}

/// Cuts a patch at an even offset with even size.
pub fn crop_patch(
    img: &RawImage,
    top: usize,
    left: usize,
    height: usize,
    width: usize,
) -> Result<RawImage> {
    check_even(top, left, height, width)?;
    if height < 2 || width < 2 || top + height > img.height() || left + width > img.width() {
        return Err(Error::OutOfBounds {
            top,
            left,
            height,
            width,
            image_height: img.height(),
            image_width: img.width(),
        });
    }
    Ok(img.window(top, left, height, width, img.pattern()))
}

/// Draws a plan from `seed` with a ChaCha8 generator.
///
/// Order is fixed: HFlip, VFlip, Transpose (only offered for RGGB/BGGR),
/// then a `patch_size` square patch at an even offset chosen uniformly
/// among those that fit after the earlier steps.
pub fn sample_plan(
    seed: u64,
    patch_size: usize,
    img_height: usize,
    img_width: usize,
    pattern: BayerPattern,
) -> Result<AugPlan> {
    let max = img_height.min(img_width).saturating_sub(4);
    if !patch_size.is_multiple_of(2) {
        return Err(Error::OddOffset {
            top: 0,
            left: 0,
            height: patch_size,
            width: patch_size,
        });
    }
    if patch_size < 2 || patch_size > max {
        return Err(Error::PatchTooLarge {
            patch: patch_size,
            height: img_height,
            width: img_width,
            max,
        });
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut steps = Vec::with_capacity(4);
    let (mut h, mut w) = (img_height, img_width);
    if rng.random_bool(0.5) {
        steps.push(AugStep::HFlip);
        w -= 2;
    }
    if rng.random_bool(0.5) {
        steps.push(AugStep::VFlip);
        h -= 2;
    }
    if pattern.transpose_safe() && rng.random_bool(0.5) {
        steps.push(AugStep::Transpose);
        std::mem::swap(&mut h, &mut w);
    }
    let top = 2 * rng.random_range(0..=(h - patch_size) / 2);
    let left = 2 * rng.random_range(0..=(w - patch_size) / 2);
    steps.push(AugStep::Patch {
        top,
        left,
        height: patch_size,
        width: patch_size,
    });
    Ok(AugPlan { seed, steps })
}

pub fn apply_step(img: &RawImage, step: &AugStep) -> Result<RawImage> {
    match *step {
        AugStep::HFlip => flip_bayer(img, Axis::Horizontal),
        AugStep::VFlip => flip_bayer(img, Axis::Vertical),
        AugStep::Transpose => transpose_bayer(img),
        AugStep::Patch {
            top,
            left,
            height,
            width,
        } => crop_patch(img, top, left, height, width),
    }
}

pub fn apply_plan(img: &RawImage, plan: &AugPlan) -> Result<RawImage> {
    let mut cur = img.clone();
    for (i, step) in plan.steps.iter().enumerate() {
        cur = apply_step(&cur, step).map_err(|e| e.at_step(i))?;
    }
    Ok(cur)
}
