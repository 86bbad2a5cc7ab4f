use std::path::PathBuf;

use crate::pattern::BayerPattern;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("image too small: {0}")]
    ImageTooSmall(String),

    #[error("invalid image dimensions: {0}")]
    BadDimensions(String),

    #[error("black level {black} must be below white level {white}")]
    BadLevels { black: u16, white: u16 },

    #[error("pad spec inconsistent with image: {0}")]
    InconsistentSpec(String),

    #[error("transpose is not pattern-preserving for {0}")]
    IllegalTranspose(BayerPattern),

    #[error(
        "patch arguments must be even, got top={top} left={left} height={height} width={width}"
    )]
    OddOffset {
        top: usize,
        left: usize,
        height: usize,
        width: usize,
    },

    #[error("patch {height}x{width} at ({top},{left}) exceeds {image_height}x{image_width} image")]
    OutOfBounds {
        top: usize,
        left: usize,
        height: usize,
        width: usize,
        image_height: usize,
        image_width: usize,
    },

    #[error(
        "patch size {patch} does not fit a {height}x{width} image (needs even size in [2, {max}])"
    )]
    PatchTooLarge {
        patch: usize,
        height: usize,
        width: usize,
        max: usize,
    },

    #[error("augmentation step {index}")]
    PlanStep {
        index: usize,
        #[source]
        source: Box<Error>,
    },

    #[error("{stage} stage")]
    Stage {
        stage: &'static str,
        #[source]
        source: Box<Error>,
    },

    #[error("bad filter parameter: {0}")]
    BadFilterParam(String),

    #[error("bad noise parameter: {0}")]
    BadNoiseParam(String),

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("image too small for metric: {0}")]
    TooSmall(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("unknown Bayer pattern {0:?}")]
    UnknownPattern(String),

    #[error("missing sidecar {}", .0.display())]
    MissingSidecar(PathBuf),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn at_step(self, index: usize) -> Self {
        Error::PlanStep {
            index,
            source: Box::new(self),
        }
    }

    pub(crate) fn in_stage(self, stage: &'static str) -> Self {
        Error::Stage {
            stage,
            source: Box::new(self),
        }
    }
}
