//! Bayer pattern unification and Bayer-preserving augmentation for camera
//! raw mosaics, with a synthetic test bed, a packed-domain denoising
//! pipeline and image-quality metrics.
//!
//! Every geometric operation here keeps the pixel-to-colour assignment of
//! the mosaic physically valid. [`pattern::channel_at`] is the ground
//! truth all of them are tested against.

pub mod augment;
pub mod border;
pub mod denoise;
pub mod differential;
pub mod error;
pub mod image;
pub mod io;
pub mod metrics;
pub mod packing;
pub mod pattern;
pub mod simulate;
pub mod unify;

pub use augment::{
    apply_plan, crop_patch, flip_bayer, sample_plan, transpose_bayer, AugPlan, AugStep, Axis,
};
pub use denoise::{denoise_packed, denoise_pipeline, DenoiserSpec};
pub use error::{Error, Result};
pub use image::RawImage;
pub use io::{load_raw, save_raw, RawFilePair};
pub use metrics::{psnr, ssim, MetricReport};
pub use packing::{pack, unpack, PackedImage, Plane};
pub use pattern::{
    channel_at, pattern_at_offset, pattern_transform, BayerPattern, ColorChannel, TransformKind,
};
pub use simulate::{add_noise, demosaic_bilinear, gen_scene, mosaic, NoiseParams, RgbImage};
pub use unify::{disunify_crop, unify_crop, unify_offsets, unify_pad, PadSpec};
