//! Space-to-depth packing of a mosaic into four half-resolution planes.
//!
//! Planes are positional: plane `k` holds the sites with
//! `(row % 2, col % 2) == (k / 2, k % 2)`. The pattern travels as metadata.

use crate::augment::Axis;
use crate::image::RawImage;
use crate::pattern::BayerPattern;

/// A row-major grid of samples, one quarter of a mosaic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Plane {
    pub height: usize,
    pub width: usize,
    pub data: Vec<u16>,
}

impl Plane {
    pub fn new(height: usize, width: usize, data: Vec<u16>) -> Self {
        assert_eq!(data.len(), height * width, "plane data length");
        Plane {
            height,
            width,
            data,
        }
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> u16 {
        self.data[row * self.width + col]
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PackedImage {
    planes: [Plane; 4],
    pattern: BayerPattern,
    black_level: u16,
    white_level: u16,
}

impl PackedImage {
    /// Panics if the planes disagree in size or are empty.
    pub fn new(
        planes: [Plane; 4],
        pattern: BayerPattern,
        black_level: u16,
        white_level: u16,
    ) -> Self {
        let (h, w) = (planes[0].height, planes[0].width);
        assert!(h >= 1 && w >= 1, "packed planes must be non-empty");
        assert!(
            planes.iter().all(|p| p.height == h && p.width == w),
            "packed planes must share dimensions"
        );
        assert!(
            black_level < white_level,
            "black level must be below white level"
        );
        PackedImage {
            planes,
            pattern,
            black_level,
            white_level,
        }
    }

    pub fn planes(&self) -> &[Plane; 4] {
        &self.planes
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

    /// Plane height and width.
    pub fn plane_dims(&self) -> (usize, usize) {
        (self.planes[0].height, self.planes[0].width)
    }

    /// Same metadata, new planes.
    pub fn with_planes(&self, planes: [Plane; 4]) -> Self {
        PackedImage::new(planes, self.pattern, self.black_level, self.white_level)
    }
}

/// `planes[2a + b](r, c) = img(2r + a, 2c + b)`.
pub fn pack(img: &RawImage) -> PackedImage {
    let (ph, pw) = (img.height() / 2, img.width() / 2);
    let planes = std::array::from_fn(|k| {
        let (a, b) = (k / 2, k % 2);
        let mut data = Vec::with_capacity(ph * pw);
        for r in 0..ph {
            let row = img.row(2 * r + a);
            data.extend((0..pw).map(|c| row[2 * c + b]));
        }
        Plane::new(ph, pw, data)
    });
    PackedImage::new(planes, img.pattern(), img.black_level(), img.white_level())
}

/// Exact inverse of [`pack`].
pub fn unpack(p: &PackedImage) -> RawImage {
    let (ph, pw) = p.plane_dims();
    let (h, w) = (2 * ph, 2 * pw);
    let mut samples = vec![0u16; h * w];
    for (k, plane) in p.planes.iter().enumerate() {
        let (a, b) = (k / 2, k % 2);
        for r in 0..ph {
            for c in 0..pw {
                samples[(2 * r + a) * w + 2 * c + b] = plane.get(r, c);
            }
        }
    }
    RawImage::with_levels(h, w, samples, p.pattern, p.black_level, p.white_level)
        .expect("packed planes always unpack to a valid mosaic")
}

/// Incorrect packed-domain transforms, kept to demonstrate how they damage
/// the mosaic. Not used by any pipeline.
pub mod baselines {
    use super::*;
    use crate::pattern::ColorChannel;

    /// Relabels planes so the channel sequence reads as `target`, without
    /// moving any pixel. R and B go to their slots; greens are assigned in
    /// scan order.
    pub fn naive_unify(p: &PackedImage, target: BayerPattern) -> PackedImage {
        let src = p.pattern().sequence();
        let mut greens = (0..4).filter(|&k| src[k] == ColorChannel::G);
        let order: [usize; 4] = target.sequence().map(|ch| match ch {
            ColorChannel::G => greens.next().expect("two greens"),
            other => src
                .iter()
                .position(|&c| c == other)
                .expect("one R and one B"),
        });
        let planes = order.map(|k| p.planes()[k].clone());
        PackedImage::new(planes, target, p.black_level(), p.white_level())
    }

    /// Mirrors every plane in place, keeping plane order and pattern tag.
    pub fn naive_flip(p: &PackedImage, axis: Axis) -> PackedImage {
        let planes = p.planes().clone().map(|plane| {
            let (h, w) = (plane.height, plane.width);
            let mut data = Vec::with_capacity(h * w);
            for r in 0..h {
                for c in 0..w {
                    data.push(match axis {
                        Axis::Horizontal => plane.get(r, w - 1 - c),
                        Axis::Vertical => plane.get(h - 1 - r, c),
                    });
                }
            }
            Plane::new(h, w, data)
        });
        p.with_planes(planes)
    }
}
