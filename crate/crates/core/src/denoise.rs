//! Pattern-unified denoising: pad to a working pattern, pack, filter each
//! plane, unpack, crop back.
//!
//! Plane filters extend their input by edge replication. Reflect-101 padding
//! of the mosaic by one pixel duplicates the edge row/column of the affected
//! planes, so replicated plane borders make the result independent of the
//! working pattern.

use std::fmt;
use std::str::FromStr;

use crate::border::clamp;
use crate::error::{Error, Result};
use crate::image::RawImage;
use crate::packing::{pack, unpack, PackedImage, Plane};
use crate::pattern::BayerPattern;
use crate::unify::{disunify_crop, unify_pad};

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum DenoiserSpec {
    Identity,
    /// Separable Gaussian, truncated at `ceil(3 * sigma)`.
    Gaussian {
        sigma: f64,
    },
    /// Square window of side `2 * radius + 1`.
    Median {
        radius: usize,
    },
}

impl DenoiserSpec {
    pub fn validate(&self) -> Result<()> {
        match *self {
            DenoiserSpec::Identity => Ok(()),
            DenoiserSpec::Gaussian { sigma } if sigma.is_finite() && sigma > 0.0 => Ok(()),
            DenoiserSpec::Gaussian { sigma } => Err(Error::BadFilterParam(format!(
                "gaussian sigma must be positive and finite, got {sigma}"
            ))),
            DenoiserSpec::Median { radius: 1 | 2 } => Ok(()),
            DenoiserSpec::Median { radius } => Err(Error::BadFilterParam(format!(
                "median radius must be 1 or 2, got {radius}"
            ))),
        }
    }
}

impl FromStr for DenoiserSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let spec = match s.split_once(':') {
            None if s == "identity" => DenoiserSpec::Identity,
            Some(("gaussian", v)) => DenoiserSpec::Gaussian {
                sigma: v
                    .parse()
                    .map_err(|_| Error::BadFilterParam(format!("bad gaussian sigma {v:?}")))?,
            },
            Some(("median", v)) => DenoiserSpec::Median {
                radius: v
                    .parse()
                    .map_err(|_| Error::BadFilterParam(format!("bad median radius {v:?}")))?,
            },
            _ => {
                return Err(Error::BadFilterParam(format!(
                    "unknown filter {s:?} (expected identity, gaussian:<sigma> or median:<radius>)"
                )))
            }
        };
        spec.validate()?;
        Ok(spec)
    }
}

impl fmt::Display for DenoiserSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DenoiserSpec::Identity => f.write_str("identity"),
            DenoiserSpec::Gaussian { sigma } => write!(f, "gaussian:{sigma}"),
            DenoiserSpec::Median { radius } => write!(f, "median:{radius}"),
        }
    }
}

fn gaussian_kernel(sigma: f64) -> Vec<f64> {
    let radius = (3.0 * sigma).ceil().max(1.0) as isize;
    let raw: Vec<f64> = (-radius..=radius)
        .map(|i| (-((i * i) as f64) / (2.0 * sigma * sigma)).exp())
        .collect();
    let sum: f64 = raw.iter().sum();
    raw.into_iter().map(|v| v / sum).collect()
}

fn to_sample(v: f64) -> u16 {
    v.round().clamp(0.0, f64::from(u16::MAX)) as u16
}

fn gaussian_plane(plane: &Plane, kernel: &[f64]) -> Plane {
    let (h, w) = (plane.height, plane.width);
    let radius = (kernel.len() / 2) as isize;
    let mut horiz = vec![0.0; h * w];
    for r in 0..h {
        for c in 0..w {
            horiz[r * w + c] = kernel
                .iter()
                .enumerate()
                .map(|(k, wt)| {
                    wt * f64::from(plane.get(r, clamp(c as isize + k as isize - radius, w)))
                })
                .sum();
        }
    }
    let mut data = Vec::with_capacity(h * w);
    for r in 0..h {
        for c in 0..w {
            let v: f64 = kernel
                .iter()
                .enumerate()
                .map(|(k, wt)| wt * horiz[clamp(r as isize + k as isize - radius, h) * w + c])
                .sum();
            data.push(to_sample(v));
        }
    }
    Plane::new(h, w, data)
}

fn median_plane(plane: &Plane, radius: usize) -> Plane {
    let (h, w) = (plane.height, plane.width);
    let radius = radius as isize;
    let mut window = Vec::with_capacity(((2 * radius + 1) * (2 * radius + 1)) as usize);
    let mut data = Vec::with_capacity(h * w);
    for r in 0..h as isize {
        for c in 0..w as isize {
            window.clear();
            for dr in -radius..=radius {
                for dc in -radius..=radius {
                    window.push(plane.get(clamp(r + dr, h), clamp(c + dc, w)));
                }
            }
            let mid = window.len() / 2;
            data.push(*window.select_nth_unstable(mid).1);
        }
    }
    Plane::new(h, w, data)
}

/// Filters each packed plane independently.
pub fn denoise_packed(p: &PackedImage, spec: &DenoiserSpec) -> Result<PackedImage> {
    spec.validate()?;
    let planes = match *spec {
        DenoiserSpec::Identity => return Ok(p.clone()),
        DenoiserSpec::Gaussian { sigma } => {
            let kernel = gaussian_kernel(sigma);
            p.planes().clone().map(|pl| gaussian_plane(&pl, &kernel))
        }
        DenoiserSpec::Median { radius } => p.planes().clone().map(|pl| median_plane(&pl, radius)),
    };
    Ok(p.with_planes(planes))
}

/// Pads `img` to `work_pattern`, denoises in the packed domain and crops
/// back. Output geometry and pattern equal the input's.
pub fn denoise_pipeline(
    img: &RawImage,
    work_pattern: BayerPattern,
    spec: &DenoiserSpec,
) -> Result<RawImage> {
    let (unified, pad) = unify_pad(img, work_pattern).map_err(|e| e.in_stage("unify"))?;
    let denoised = denoise_packed(&pack(&unified), spec).map_err(|e| e.in_stage("denoise"))?;
    disunify_crop(&unpack(&denoised), &pad).map_err(|e| e.in_stage("disunify"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use BayerPattern::*;

    fn packed_const(h: usize, w: usize, v: u16) -> PackedImage {
        pack(&RawImage::from_fn(h, w, Rggb, |_, _| v).unwrap())
    }

    #[test]
    fn parses_cli_syntax() {
        assert_eq!(
            "identity".parse::<DenoiserSpec>().unwrap(),
            DenoiserSpec::Identity
        );
        assert_eq!(
            "gaussian:1.5".parse::<DenoiserSpec>().unwrap(),
            DenoiserSpec::Gaussian { sigma: 1.5 }
        );
        assert_eq!(
            "median:2".parse::<DenoiserSpec>().unwrap(),
            DenoiserSpec::Median { radius: 2 }
        );
        for bad in [
            "gaussian:0",
            "gaussian:-1",
            "gaussian:nan",
            "median:3",
            "median:x",
            "box:1",
            "identity:1",
        ] {
            assert!(
                matches!(bad.parse::<DenoiserSpec>(), Err(Error::BadFilterParam(_))),
                "{bad}"
            );
        }
        assert_eq!(
            DenoiserSpec::Gaussian { sigma: 1.5 }.to_string(),
            "gaussian:1.5"
        );
    }

    #[test]
    fn kernel_is_normalized_and_symmetric() {
        let k = gaussian_kernel(1.0);
        assert_eq!(k.len(), 7);
        assert!((k.iter().sum::<f64>() - 1.0).abs() < 1e-12);
        for i in 0..3 {
            assert_eq!(k[i], k[6 - i]);
        }
    }

    #[test]
    fn identity_is_bit_exact() {
        let img = RawImage::from_fn(6, 8, Gbrg, |r, c| (r * 1000 + c * 7) as u16).unwrap();
        let p = pack(&img);
        assert_eq!(denoise_packed(&p, &DenoiserSpec::Identity).unwrap(), p);
    }

    #[test]
    fn gaussian_keeps_constants() {
        for v in [0, 1, 12345, 65535] {
            let p = packed_const(10, 12, v);
            assert_eq!(
                denoise_packed(&p, &DenoiserSpec::Gaussian { sigma: 1.3 }).unwrap(),
                p
            );
        }
    }

    #[test]
    fn median_removes_impulse() {
        let mut data = vec![500u16; 25];
        data[12] = 60000;
        let p = PackedImage::new(
            std::array::from_fn(|_| Plane::new(5, 5, data.clone())),
            Rggb,
            0,
            65535,
        );
        let out = denoise_packed(&p, &DenoiserSpec::Median { radius: 1 }).unwrap();
        for pl in out.planes() {
            assert!(pl.data.iter().all(|&v| v == 500));
        }
    }

    #[test]
    fn bad_params_rejected_at_filter_time() {
        let p = packed_const(4, 4, 1);
        assert!(matches!(
            denoise_packed(&p, &DenoiserSpec::Median { radius: 0 }),
            Err(Error::BadFilterParam(_))
        ));
    }

    #[test]
    fn pipeline_identity_all_pairs() {
        for p in BayerPattern::ALL {
            let img = RawImage::from_fn(6, 10, p, |r, c| (r * 97 + c * 13) as u16).unwrap();
            for wp in BayerPattern::ALL {
                assert_eq!(
                    denoise_pipeline(&img, wp, &DenoiserSpec::Identity).unwrap(),
                    img
                );
            }
        }
    }

    #[test]
    fn pipeline_is_independent_of_work_pattern() {
        let img = RawImage::from_fn(12, 14, Grbg, |r, c| {
            ((r * 7919 + c * 104729) % 65536) as u16
        })
        .unwrap();
        for spec in [
            DenoiserSpec::Gaussian { sigma: 1.0 },
            DenoiserSpec::Median { radius: 2 },
        ] {
            let reference = denoise_pipeline(&img, Grbg, &spec).unwrap();
            for wp in BayerPattern::ALL {
                assert_eq!(
                    denoise_pipeline(&img, wp, &spec).unwrap(),
                    reference,
                    "{spec} {wp}"
                );
            }
        }
    }

    #[test]
    fn pipeline_errors_name_the_stage() {
        let img = RawImage::from_fn(4, 4, Rggb, |_, _| 0).unwrap();
        let err =
            denoise_pipeline(&img, Bggr, &DenoiserSpec::Gaussian { sigma: -1.0 }).unwrap_err();
        assert!(matches!(
            err,
            Error::Stage {
                stage: "denoise",
                ..
            }
        ));
    }
}
