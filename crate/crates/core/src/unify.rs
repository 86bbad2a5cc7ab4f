//! Bayer pattern unification.
//!
//! Any pattern reaches any other by moving the image origin by one row,
//! one column, or both. Cropping the first and last row/column does that
//! while discarding pixels; reflect-101 padding does it losslessly and is
//! undone by [`disunify_crop`].

use serde::{Deserialize, Serialize};

use crate::border::reflect101;
use crate::error::{Error, Result};
use crate::image::RawImage;
use crate::pattern::BayerPattern;

/// Pixels added on each side by [`unify_pad`], plus the pattern the image
/// had before padding.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PadSpec {
    pub top: usize,
    pub bottom: usize,
    pub left: usize,
    pub right: usize,
    pub original_pattern: BayerPattern,
}

impl PadSpec {
    pub fn symmetric(rows: usize, cols: usize, original_pattern: BayerPattern) -> Self {
        PadSpec {
            top: rows,
            bottom: rows,
            left: cols,
            right: cols,
            original_pattern,
        }
    }

    pub fn is_noop(&self) -> bool {
        self.top == 0 && self.left == 0
    }

    /// Checks symmetry and the one-pixel bound.
    pub fn validate(&self) -> Result<()> {
        if self.top != self.bottom || self.left != self.right {
            return Err(Error::InconsistentSpec(format!(
                "padding must be symmetric, got top={} bottom={} left={} right={}",
                self.top, self.bottom, self.left, self.right
            )));
        }
        if self.top > 1 || self.left > 1 {
            return Err(Error::InconsistentSpec(format!(
                "padding is at most one pixel per side, got top={} left={}",
                self.top, self.left
            )));
        }
        Ok(())
    }

    /// Pattern an image carries after this padding is applied.
    pub fn padded_pattern(&self) -> BayerPattern {
        self.original_pattern.at_offset(self.top, self.left)
    }
}

/// The unique origin shift `(dy, dx)` that turns `src` into `target`.
pub fn unify_offsets(src: BayerPattern, target: BayerPattern) -> (usize, usize) {
    [(0, 0), (0, 1), (1, 0), (1, 1)]
        .into_iter()
        .find(|&(dy, dx)| src.at_offset(dy, dx) == target)
        .expect("the four origin shifts reach every pattern")
}

/// Converts `img` to `target` by removing the first and last row and/or
/// column. `out(r, c) = img(r + dy, c + dx)`.
pub fn unify_crop(img: &RawImage, target: BayerPattern) -> Result<RawImage> {
    let (dy, dx) = unify_offsets(img.pattern(), target);
    if (dy == 1 && img.height() < 4) || (dx == 1 && img.width() < 4) {
        return Err(Error::ImageTooSmall(format!(
            "cropping {}x{} {} to {target} needs at least 4 rows/cols on the cropped axis",
            img.height(),
            img.width(),
            img.pattern()
        )));
    }
    Ok(img.window(dy, dx, img.height() - 2 * dy, img.width() - 2 * dx, target))
}

/// Converts `img` to `target` by reflect-101 padding one row top and
/// bottom and/or one column left and right. Every input pixel lands
/// unchanged at `(r + dy, c + dx)`.
pub fn unify_pad(img: &RawImage, target: BayerPattern) -> Result<(RawImage, PadSpec)> {
    let (dy, dx) = unify_offsets(img.pattern(), target);
    let (h, w) = (img.height(), img.width());
    if h < 2 || w < 2 {
        return Err(Error::ImageTooSmall(format!(
            "reflect padding needs at least 2x2, got {h}x{w}"
        )));
    }
    let spec = PadSpec::symmetric(dy, dx, img.pattern());
    if spec.is_noop() {
        return Ok((img.clone(), spec));
    }

    let (out_h, out_w) = (h + 2 * dy, w + 2 * dx);
    let cols: Vec<usize> = (0..out_w)
        .map(|c| reflect101(c as isize - dx as isize, w))
        .collect();
    let mut samples = Vec::with_capacity(out_h * out_w);
    for r in 0..out_h {
        let src = img.row(reflect101(r as isize - dy as isize, h));
        samples.extend(cols.iter().map(|&c| src[c]));
    }
    Ok((img.derive(out_h, out_w, samples, target), spec))
}

/// Removes the border added by [`unify_pad`] and restores the original
/// pattern.
pub fn disunify_crop(img: &RawImage, spec: &PadSpec) -> Result<RawImage> {
    spec.validate()?;
    if img.height() <= 2 * spec.top || img.width() <= 2 * spec.left {
        return Err(Error::InconsistentSpec(format!(
            "cannot remove {} rows and {} cols per side from a {}x{} image",
            spec.top,
            spec.left,
            img.height(),
            img.width()
        )));
    }
    if spec.padded_pattern() != img.pattern() {
        return Err(Error::InconsistentSpec(format!(
            "image is {} but padding {} by ({}, {}) gives {}",
            img.pattern(),
            spec.original_pattern,
            spec.top,
            spec.left,
            spec.padded_pattern()
        )));
    }
    Ok(img.window(
        spec.top,
        spec.left,
        img.height() - 2 * spec.top,
        img.width() - 2 * spec.left,
        spec.original_pattern,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pattern::channel_at;
    use BayerPattern::*;

    fn ramp(h: usize, w: usize, p: BayerPattern) -> RawImage {
        RawImage::from_fn(h, w, p, |r, c| (10 * r + c) as u16).unwrap()
    }

    /// Brute-force offset search through the channel lookup alone.
    fn oracle_offsets(src: BayerPattern, target: BayerPattern) -> (usize, usize) {
        let mut found = None;
        for dy in 0..2 {
            for dx in 0..2 {
                let ok = (0..2).all(|r| {
                    (0..2).all(|c| channel_at(target, r, c) == channel_at(src, r + dy, c + dx))
                });
                if ok {
                    assert!(found.is_none());
                    found = Some((dy, dx));
                }
            }
        }
        found.unwrap()
    }

    #[test]
    fn offsets_examples() {
        assert_eq!(unify_offsets(Grbg, Bggr), (1, 0));
        assert_eq!(unify_offsets(Bggr, Bggr), (0, 0));
        assert_eq!(unify_offsets(Rggb, Grbg), (0, 1));
        for s in BayerPattern::ALL {
            for t in BayerPattern::ALL {
                assert_eq!(unify_offsets(s, t), oracle_offsets(s, t));
            }
        }
    }

    #[test]
    fn crop_grbg_to_bggr() {
        let out = unify_crop(&ramp(4, 4, Grbg), Bggr).unwrap();
        assert_eq!((out.height(), out.width(), out.pattern()), (2, 4, Bggr));
        assert_eq!(out.row(0), &[10, 11, 12, 13]);
        assert_eq!(out.row(1), &[20, 21, 22, 23]);
    }

    #[test]
    fn crop_rggb_to_bggr_removes_both_borders() {
        let img = ramp(6, 6, Rggb);
        let out = unify_crop(&img, Bggr).unwrap();
        assert_eq!((out.height(), out.width()), (4, 4));
        for r in 0..4 {
            for c in 0..4 {
                assert_eq!(out.get(r, c), img.get(r + 1, c + 1));
                assert_eq!(out.channel_at(r, c), img.channel_at(r + 1, c + 1));
            }
        }
    }

    #[test]
    fn crop_to_same_pattern_is_identity() {
        let img = ramp(4, 6, Gbrg);
        assert_eq!(unify_crop(&img, Gbrg).unwrap(), img);
    }

    #[test]
    fn crop_rejects_two_row_image_when_rows_must_go() {
        let img = ramp(2, 8, Grbg);
        assert!(matches!(
            unify_crop(&img, Bggr),
            Err(Error::ImageTooSmall(_))
        ));
        // column-only shift is fine on a 2-row image
        assert_eq!(unify_crop(&img, Rggb).unwrap().height(), 2);
    }

    #[test]
    fn pad_grbg_to_bggr() {
        let img = RawImage::new(2, 2, vec![5, 7, 9, 3], Grbg).unwrap();
        let (out, spec) = unify_pad(&img, Bggr).unwrap();
        assert_eq!((out.height(), out.width(), out.pattern()), (4, 2, Bggr));
        assert_eq!(out.samples(), &[9, 3, 5, 7, 9, 3, 5, 7]);
        assert_eq!(spec, PadSpec::symmetric(1, 0, Grbg));
    }

    #[test]
    fn pad_corner_reflects_in_both_axes() {
        let img = ramp(4, 4, Rggb);
        let (out, spec) = unify_pad(&img, Bggr).unwrap();
        assert_eq!((out.height(), out.width()), (6, 6));
        assert_eq!(out.get(0, 0), img.get(1, 1));
        assert_eq!(out.get(5, 5), img.get(2, 2));
        assert_eq!(out.get(0, 5), img.get(1, 2));
        assert_eq!(spec, PadSpec::symmetric(1, 1, Rggb));
    }

    #[test]
    fn padded_sites_keep_their_channel() {
        for s in BayerPattern::ALL {
            for t in BayerPattern::ALL {
                let img = ramp(4, 6, s);
                let (out, spec) = unify_pad(&img, t).unwrap();
                for r in 0..out.height() {
                    for c in 0..out.width() {
                        let sr = reflect101(r as isize - spec.top as isize, img.height());
                        let sc = reflect101(c as isize - spec.left as isize, img.width());
                        assert_eq!(out.get(r, c), img.get(sr, sc));
                        assert_eq!(
                            channel_at(t, r, c),
                            channel_at(s, sr, sc),
                            "{s}->{t} ({r},{c})"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn pad_to_same_pattern_is_identity() {
        let img = ramp(2, 2, Rggb);
        let (out, spec) = unify_pad(&img, Rggb).unwrap();
        assert_eq!(out, img);
        assert_eq!(spec, PadSpec::symmetric(0, 0, Rggb));
    }

    #[test]
    fn disunify_restores_padded_example() {
        let img = RawImage::new(2, 2, vec![5, 7, 9, 3], Grbg).unwrap();
        let (padded, spec) = unify_pad(&img, Bggr).unwrap();
        assert_eq!(disunify_crop(&padded, &spec).unwrap(), img);
    }

    #[test]
    fn disunify_noop_spec() {
        let img = ramp(4, 4, Bggr);
        assert_eq!(
            disunify_crop(&img, &PadSpec::symmetric(0, 0, Bggr)).unwrap(),
            img
        );
    }

    #[test]
    fn disunify_rejects_pattern_mismatch() {
        let img = ramp(4, 4, Rggb);
        let spec = PadSpec::symmetric(1, 0, Grbg); // GRBG padded by a row is BGGR
        assert!(matches!(
            disunify_crop(&img, &spec),
            Err(Error::InconsistentSpec(_))
        ));
    }

    #[test]
    fn disunify_rejects_underflow() {
        let img = ramp(2, 2, Bggr);
        let spec = PadSpec::symmetric(1, 0, Grbg);
        assert!(matches!(
            disunify_crop(&img, &spec),
            Err(Error::InconsistentSpec(_))
        ));
    }

    #[test]
    fn disunify_rejects_asymmetric_spec() {
        let img = ramp(4, 4, Bggr);
        let spec = PadSpec {
            top: 1,
            bottom: 0,
            left: 0,
            right: 0,
            original_pattern: Grbg,
        };
        assert!(matches!(
            disunify_crop(&img, &spec),
            Err(Error::InconsistentSpec(_))
        ));
    }

    #[test]
    fn pad_spec_json_shape() {
        let json = serde_json::to_string(&PadSpec::symmetric(1, 0, Grbg)).unwrap();
        assert_eq!(
            json,
            r#"{"top":1,"bottom":1,"left":0,"right":0,"original_pattern":"GRBG"}"#
        );
    }
}
