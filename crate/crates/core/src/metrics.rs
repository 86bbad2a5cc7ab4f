//! PSNR and SSIM on level-normalized mosaics.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::image::RawImage;

/// Reported PSNR when two images are identical.
pub const PSNR_CAP_DB: f64 = 99.0;

pub const SSIM_WINDOW: usize = 11;
pub const SSIM_SIGMA: f64 = 1.5;
pub const SSIM_K1: f64 = 0.01;
pub const SSIM_K2: f64 = 0.03;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct MetricReport {
    pub mse: f64,
    pub psnr_db: f64,
    pub ssim: f64,
}

impl MetricReport {
    /// Single-line JSON with six decimals per field.
    pub fn to_json_line(&self) -> String {
        format!(
            "{{\"mse\":{:.6},\"psnr_db\":{:.6},\"ssim\":{:.6}}}",
            self.mse, self.psnr_db, self.ssim
        )
    }
}

fn check_same_shape(a: &RawImage, b: &RawImage) -> Result<()> {
    if a.height() != b.height() || a.width() != b.width() {
        return Err(Error::ShapeMismatch(format!(
            "{}x{} vs {}x{}",
            a.height(),
            a.width(),
            b.height(),
            b.width()
        )));
    }
    if a.black_level() != b.black_level() || a.white_level() != b.white_level() {
        return Err(Error::ShapeMismatch(format!(
            "levels [{}, {}] vs [{}, {}]",
            a.black_level(),
            a.white_level(),
            b.black_level(),
            b.white_level()
        )));
    }
    Ok(())
}

fn normalized(img: &RawImage) -> Vec<f64> {
    let black = f64::from(img.black_level());
    let range = img.range();
    img.samples()
        .iter()
        .map(|&s| (f64::from(s) - black) / range)
        .collect()
}

/// Mean squared error of the normalized samples.
pub fn mse(a: &RawImage, b: &RawImage) -> Result<f64> {
    check_same_shape(a, b)?;
    let (na, nb) = (normalized(a), normalized(b));
    let sum: f64 = na.iter().zip(&nb).map(|(x, y)| (x - y) * (x - y)).sum();
    Ok(sum / na.len() as f64)
}

fn psnr_from_mse(mse: f64) -> f64 {
    if mse == 0.0 {
        PSNR_CAP_DB
    } else {
        10.0 * (1.0 / mse).log10()
    }
}

/// Peak 1 after normalization; identical images report [`PSNR_CAP_DB`].
pub fn psnr(a: &RawImage, b: &RawImage) -> Result<f64> {
    if a.pattern() != b.pattern() {
        return Err(Error::ShapeMismatch(format!(
            "patterns {} vs {}",
            a.pattern(),
            b.pattern()
        )));
    }
    mse(a, b).map(psnr_from_mse)
}

fn ssim_kernel() -> Vec<f64> {
    let half = (SSIM_WINDOW / 2) as f64;
    let raw: Vec<f64> = (0..SSIM_WINDOW)
        .map(|i| {
            let d = i as f64 - half;
            (-(d * d) / (2.0 * SSIM_SIGMA * SSIM_SIGMA)).exp()
        })
        .collect();
    let sum: f64 = raw.iter().sum();
    raw.into_iter().map(|v| v / sum).collect()
}

/// Separable Gaussian filter keeping only windows fully inside the image.
fn filter_valid(src: &[f64], h: usize, w: usize, kernel: &[f64]) -> Vec<f64> {
    let k = kernel.len();
    let (oh, ow) = (h - k + 1, w - k + 1);
    let mut tmp = vec![0.0; h * ow];
    for r in 0..h {
        let row = &src[r * w..(r + 1) * w];
        for c in 0..ow {
            tmp[r * ow + c] = kernel.iter().zip(&row[c..c + k]).map(|(a, b)| a * b).sum();
        }
    }
    let mut out = vec![0.0; oh * ow];
    for r in 0..oh {
        for c in 0..ow {
            out[r * ow + c] = kernel
                .iter()
                .enumerate()
                .map(|(i, wt)| wt * tmp[(r + i) * ow + c])
                .sum();
        }
    }
    out
}

/// Mean local SSIM over the mosaic as one grayscale plane: 11x11 Gaussian
/// window (sigma 1.5), K1 = 0.01, K2 = 0.03, dynamic range 1, no padding.
pub fn ssim(a: &RawImage, b: &RawImage) -> Result<f64> {
    check_same_shape(a, b)?;
    let (h, w) = (a.height(), a.width());
    if h < SSIM_WINDOW || w < SSIM_WINDOW {
        return Err(Error::TooSmall(format!(
            "ssim needs at least {SSIM_WINDOW}x{SSIM_WINDOW}, got {h}x{w}"
        )));
    }
    let (x, y) = (normalized(a), normalized(b));
    let xx: Vec<f64> = x.iter().map(|v| v * v).collect();
    let yy: Vec<f64> = y.iter().map(|v| v * v).collect();
    let xy: Vec<f64> = x.iter().zip(&y).map(|(p, q)| p * q).collect();

    let kernel = ssim_kernel();
    let [mu_x, mu_y, e_xx, e_yy, e_xy] =
        [&x, &y, &xx, &yy, &xy].map(|s| filter_valid(s, h, w, &kernel));

    let c1 = (SSIM_K1 * 1.0).powi(2);
    let c2 = (SSIM_K2 * 1.0).powi(2);
    let n = mu_x.len();
    let total: f64 = (0..n)
        .map(|i| {
            let (mx, my) = (mu_x[i], mu_y[i]);
            let var_x = e_xx[i] - mx * mx;
            let var_y = e_yy[i] - my * my;
            let cov = e_xy[i] - mx * my;
            let num = (2.0 * mx * my + c1) * (2.0 * cov + c2);
            let den = (mx * mx + my * my + c1) * (var_x + var_y + c2);
            num / den
        })
        .sum();
    Ok(total / n as f64)
}

/// All three metrics of `test` against `reference`.
pub fn report(reference: &RawImage, test: &RawImage) -> Result<MetricReport> {
    let mse = mse(reference, test)?;
    psnr(reference, test)?;
    Ok(MetricReport {
        mse,
        psnr_db: psnr_from_mse(mse),
        ssim: ssim(reference, test)?,
    })
}
