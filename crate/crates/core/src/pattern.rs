//! Bayer pattern algebra.
//!
//! A pattern is named by the colours of its 2x2 block in scan order:
//! top-left, top-right, bottom-left, bottom-right. The two greens are
//! not distinguished, so there are exactly four patterns.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;

#[derive(Clone, Copy, Debug, Eq, PartialEq, Hash)]
pub enum ColorChannel {
    R,
    G,
    B,
}

impl ColorChannel {
    /// Plane index in R, G, B order.
    pub fn index(self) -> usize {
        match self {
            ColorChannel::R => 0,
            ColorChannel::G => 1,
            ColorChannel::B => 2,
        }
    }
}

#[derive(Clone, Copy, Debug, Eq, PartialEq, Hash)]
pub enum BayerPattern {
    Rggb,
    Bggr,
    Grbg,
    Gbrg,
}

/// Geometric primitives that act on a pattern.
#[derive(Clone, Copy, Debug, Eq, PartialEq, Hash)]
pub enum TransformKind {
    HFlip,
    VFlip,
    Transpose,
}

impl BayerPattern {
    pub const ALL: [BayerPattern; 4] = [
        BayerPattern::Rggb,
        BayerPattern::Bggr,
        BayerPattern::Grbg,
        BayerPattern::Gbrg,
    ];

    /// The 2x2 block, indexed `[row][col]`.
    pub fn cells(self) -> [[ColorChannel; 2]; 2] {
        use ColorChannel::*;
        match self {
            BayerPattern::Rggb => [[R, G], [G, B]],
            BayerPattern::Bggr => [[B, G], [G, R]],
            BayerPattern::Grbg => [[G, R], [B, G]],
            BayerPattern::Gbrg => [[G, B], [R, G]],
        }
    }

    /// Recovers a pattern from a 2x2 block, if the block is a Bayer block.
    pub fn from_cells(cells: [[ColorChannel; 2]; 2]) -> Option<Self> {
        Self::ALL.into_iter().find(|p| p.cells() == cells)
    }

    /// Channel sequence in scan order (TL, TR, BL, BR).
    pub fn sequence(self) -> [ColorChannel; 4] {
        let c = self.cells();
        [c[0][0], c[0][1], c[1][0], c[1][1]]
    }

    /// Colour of the sensor site at `(row, col)`, extending the block
    /// periodically over the whole mosaic.
    pub fn channel_at(self, row: usize, col: usize) -> ColorChannel {
        self.cells()[row % 2][col % 2]
    }

    /// The pattern seen by an image whose origin is moved by `(dy, dx)`
    /// (each taken mod 2).
    pub fn at_offset(self, dy: usize, dx: usize) -> Self {
        let c = self.cells();
        let (dy, dx) = (dy % 2, dx % 2);
        let shifted = [
            [c[dy][dx], c[dy][(1 + dx) % 2]],
            [c[(1 + dy) % 2][dx], c[(1 + dy) % 2][(1 + dx) % 2]],
        ];
        Self::from_cells(shifted).expect("shifting a Bayer block yields a Bayer block")
    }

    /// Effect of a geometric transform on the pattern. Flips assume
    /// even image dimensions.
    pub fn transformed(self, kind: TransformKind) -> Self {
        let [c1, c2, c3, c4] = self.sequence();
        let cells = match kind {
            TransformKind::HFlip => [[c2, c1], [c4, c3]],
            TransformKind::VFlip => [[c3, c4], [c1, c2]],
            TransformKind::Transpose => [[c1, c3], [c2, c4]],
        };
        Self::from_cells(cells).expect("flips and transposes map Bayer blocks to Bayer blocks")
    }

    /// True when the greens sit on the anti-diagonal, i.e. transposition
    /// leaves the pattern unchanged.
    pub fn transpose_safe(self) -> bool {
        let c = self.cells();
        c[0][1] == ColorChannel::G && c[1][0] == ColorChannel::G
    }

    pub fn as_str(self) -> &'static str {
        match self {
            BayerPattern::Rggb => "RGGB",
            BayerPattern::Bggr => "BGGR",
            BayerPattern::Grbg => "GRBG",
            BayerPattern::Gbrg => "GBRG",
        }
    }
}

/// Free-function form of [`BayerPattern::channel_at`].
pub fn channel_at(pattern: BayerPattern, row: usize, col: usize) -> ColorChannel {
    pattern.channel_at(row, col)
}

pub fn pattern_at_offset(pattern: BayerPattern, dy: usize, dx: usize) -> BayerPattern {
    pattern.at_offset(dy, dx)
}

pub fn pattern_transform(pattern: BayerPattern, kind: TransformKind) -> BayerPattern {
    pattern.transformed(kind)
}

impl fmt::Display for BayerPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for BayerPattern {
    type Err = Error;

    /// Case-sensitive: only the uppercase names are accepted.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "RGGB" => Ok(BayerPattern::Rggb),
            "BGGR" => Ok(BayerPattern::Bggr),
            "GRBG" => Ok(BayerPattern::Grbg),
            "GBRG" => Ok(BayerPattern::Gbrg),
            other => Err(Error::UnknownPattern(other.to_string())),
        }
    }
}

impl Serialize for BayerPattern {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(self.as_str())
    }
}

impl<'de> Deserialize<'de> for BayerPattern {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
