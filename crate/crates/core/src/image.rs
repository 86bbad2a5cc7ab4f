use crate::error::{Error, Result};
use crate::pattern::{BayerPattern, ColorChannel};

pub const DEFAULT_BLACK_LEVEL: u16 = 0;
pub const DEFAULT_WHITE_LEVEL: u16 = u16::MAX;

/// A single-plane Bayer mosaic with its sensor metadata.
///
/// Dimensions are always even and at least 2x2, and `black_level <
/// white_level`. Sample values are not clipped to the level range.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawImage {
    height: usize,
    width: usize,
    samples: Vec<u16>,
    pattern: BayerPattern,
    black_level: u16,
    white_level: u16,
}

impl RawImage {
    pub fn new(
        height: usize,
        width: usize,
        samples: Vec<u16>,
        pattern: BayerPattern,
    ) -> Result<Self> {
        Self::with_levels(
            height,
            width,
            samples,
            pattern,
            DEFAULT_BLACK_LEVEL,
            DEFAULT_WHITE_LEVEL,
        )
    }

    pub fn with_levels(
        height: usize,
        width: usize,
        samples: Vec<u16>,
        pattern: BayerPattern,
        black_level: u16,
        white_level: u16,
    ) -> Result<Self> {
        check_dims(height, width)?;
        if samples.len() != height * width {
            return Err(Error::BadDimensions(format!(
                "{} samples for a {height}x{width} image",
                samples.len()
            )));
        }
        if black_level >= white_level {
            return Err(Error::BadLevels {
                black: black_level,
                white: white_level,
            });
        }
        Ok(RawImage {
            height,
            width,
            samples,
            pattern,
            black_level,
            white_level,
        })
    }

    /// Builds an image by evaluating `f(row, col)` at every site.
    pub fn from_fn(
        height: usize,
        width: usize,
        pattern: BayerPattern,
        mut f: impl FnMut(usize, usize) -> u16,
    ) -> Result<Self> {
        check_dims(height, width)?;
        let mut samples = Vec::with_capacity(height * width);
        for r in 0..height {
            for c in 0..width {
                samples.push(f(r, c));
            }
        }
        Self::new(height, width, samples, pattern)
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn pattern(&self) -> BayerPattern {
        self.pattern
    }

    pub fn black_level(&self) -> u16 {
        self.black_level
    }

    pub fn white_level(&self) -> u16 {
        self.white_level
    }

    pub fn samples(&self) -> &[u16] {
        &self.samples
    }

    pub fn into_samples(self) -> Vec<u16> {
        self.samples
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> u16 {
        self.samples[row * self.width + col]
    }

    pub fn row(&self, row: usize) -> &[u16] {
        &self.samples[row * self.width..(row + 1) * self.width]
    }

    pub fn channel_at(&self, row: usize, col: usize) -> ColorChannel {
        self.pattern.channel_at(row, col)
    }

    /// `white_level - black_level` as a float.
    pub fn range(&self) -> f64 {
        f64::from(self.white_level) - f64::from(self.black_level)
    }

    /// Sample at `(row, col)` mapped to `[0, 1]` by the sensor levels
    /// (values outside the level range map outside `[0, 1]`).
    pub fn normalized(&self, row: usize, col: usize) -> f64 {
        (f64::from(self.get(row, col)) - f64::from(self.black_level)) / self.range()
    }

    /// Same metadata, new geometry and samples. Callers guarantee the
    /// new dimensions are valid.
    pub(crate) fn derive(
        &self,
        height: usize,
        width: usize,
        samples: Vec<u16>,
        pattern: BayerPattern,
    ) -> Self {
        debug_assert_eq!(samples.len(), height * width);
        debug_assert!(
            height >= 2 && width >= 2 && height.is_multiple_of(2) && width.is_multiple_of(2)
        );
        RawImage {
            height,
            width,
            samples,
            pattern,
            black_level: self.black_level,
            white_level: self.white_level,
        }
    }

    /// Copies the window `[top, top+height) x [left, left+width)` and tags
    /// it with `pattern`.
    pub(crate) fn window(
        &self,
        top: usize,
        left: usize,
        height: usize,
        width: usize,
        pattern: BayerPattern,
    ) -> Self {
        let mut samples = Vec::with_capacity(height * width);
        for r in top..top + height {
            samples.extend_from_slice(&self.row(r)[left..left + width]);
        }
        self.derive(height, width, samples, pattern)
    }
}

fn check_dims(height: usize, width: usize) -> Result<()> {
    if height < 2 || width < 2 || !height.is_multiple_of(2) || !width.is_multiple_of(2) {
        return Err(Error::BadDimensions(format!(
            "{height}x{width} (both dimensions must be even and at least 2)"
        )));
    }
    Ok(())
}
