//! 16-bit binary PGM mosaics with a JSON metadata sidecar, and 16-bit PPM
//! output for demosaiced images.
//!
//! The PGM header is written as `P5\n<width> <height>\n65535\n` followed
//! by big-endian samples in row-major order. The sidecar lives next to the
//! PGM with a `.json` extension.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::image::{RawImage, DEFAULT_BLACK_LEVEL, DEFAULT_WHITE_LEVEL};
use crate::pattern::{BayerPattern, ColorChannel};
use crate::simulate::RgbImage;
use crate::unify::PadSpec;

const MAXVAL: u32 = 65535;

/// A mosaic file and its metadata sidecar.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawFilePair {
    pub pgm_path: PathBuf,
    pub sidecar_path: PathBuf,
}

impl RawFilePair {
    pub fn new(pgm_path: impl Into<PathBuf>) -> Self {
        let pgm_path = pgm_path.into();
        let sidecar_path = pgm_path.with_extension("json");
        RawFilePair {
            pgm_path,
            sidecar_path,
        }
    }
}

#[derive(Serialize)]
struct SidecarOut<'a> {
    bayer_pattern: BayerPattern,
    black_level: u16,
    white_level: u16,
    #[serde(skip_serializing_if = "Option::is_none")]
    pad: Option<&'a PadSpec>,
}

#[derive(Deserialize)]
struct SidecarIn {
    bayer_pattern: String,
    #[serde(default = "default_black")]
    black_level: u16,
    #[serde(default = "default_white")]
    white_level: u16,
    #[serde(default)]
    pad: Option<PadSpecIn>,
}

#[derive(Deserialize)]
struct PadSpecIn {
    top: usize,
    bottom: usize,
    left: usize,
    right: usize,
    original_pattern: String,
}

fn default_black() -> u16 {
    DEFAULT_BLACK_LEVEL
}

fn default_white() -> u16 {
    DEFAULT_WHITE_LEVEL
}

/// Serializes a mosaic as binary PGM.
pub fn encode_pgm(img: &RawImage) -> Vec<u8> {
    let header = format!("P5\n{} {}\n{MAXVAL}\n", img.width(), img.height());
    let mut out = Vec::with_capacity(header.len() + 2 * img.samples().len());
    out.extend_from_slice(header.as_bytes());
    for &s in img.samples() {
        out.extend_from_slice(&s.to_be_bytes());
    }
    out
}

struct Header {
    width: usize,
    height: usize,
    data_offset: usize,
}

fn parse_header(bytes: &[u8], magic: &[u8; 2]) -> Result<Header> {
    let err = |msg: &str| Error::Parse(format!("{}: {msg}", String::from_utf8_lossy(magic)));
    if bytes.len() < 2 || &bytes[..2] != magic {
        return Err(err("bad magic number"));
    }
    let mut pos = 2;
    let mut fields = [0u32; 3];
    for field in fields.iter_mut() {
        // whitespace and comments before each token
        loop {
            match bytes.get(pos) {
                Some(b) if b.is_ascii_whitespace() => pos += 1,
                Some(b'#') => {
                    while !matches!(bytes.get(pos), None | Some(b'\n')) {
                        pos += 1;
                    }
                }
                Some(_) => break,
                None => return Err(err("truncated header")),
            }
        }
        let start = pos;
        while bytes.get(pos).is_some_and(u8::is_ascii_digit) {
            pos += 1;
        }
        if start == pos {
            return Err(err("expected a decimal number in header"));
        }
        *field = std::str::from_utf8(&bytes[start..pos])
            .expect("ascii digits")
            .parse()
            .map_err(|_| err("header number out of range"))?;
    }
    // exactly one whitespace byte separates maxval from the raster
    match bytes.get(pos) {
        Some(b) if b.is_ascii_whitespace() => pos += 1,
        _ => return Err(err("missing whitespace after maxval")),
    }
    let [width, height, maxval] = fields;
    if maxval != MAXVAL {
        return Err(err(&format!("maxval must be {MAXVAL}, got {maxval}")));
    }
    Ok(Header {
        width: width as usize,
        height: height as usize,
        data_offset: pos,
    })
}

/// Decodes a 16-bit PGM raster. Dimensions must be even.
pub fn decode_pgm(bytes: &[u8]) -> Result<(usize, usize, Vec<u16>)> {
    let hdr = parse_header(bytes, b"P5")?;
    if hdr.width < 2 || hdr.height < 2 || hdr.width % 2 != 0 || hdr.height % 2 != 0 {
        return Err(Error::Parse(format!(
            "P5: dimensions {}x{} must be even and at least 2",
            hdr.width, hdr.height
        )));
    }
    let expected = hdr.width * hdr.height * 2;
    let payload = &bytes[hdr.data_offset..];
    if payload.len() != expected {
        return Err(Error::Parse(format!(
            "P5: expected {expected} payload bytes, found {}",
            payload.len()
        )));
    }
    let samples = payload
        .chunks_exact(2)
        .map(|b| u16::from_be_bytes([b[0], b[1]]))
        .collect();
    Ok((hdr.height, hdr.width, samples))
}

pub fn encode_sidecar(img: &RawImage, pad: Option<&PadSpec>) -> String {
    let sidecar = SidecarOut {
        bayer_pattern: img.pattern(),
        black_level: img.black_level(),
        white_level: img.white_level(),
        pad,
    };
    let mut s =
        serde_json::to_string_pretty(&sidecar).expect("sidecar serialization is infallible");
    s.push('\n');
    s
}

/// Parses sidecar JSON into (pattern, black, white, pad).
pub fn decode_sidecar(text: &str) -> Result<(BayerPattern, u16, u16, Option<PadSpec>)> {
    let raw: SidecarIn =
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("sidecar: {e}")))?;
    let pattern: BayerPattern = raw.bayer_pattern.parse()?;
    let pad = match raw.pad {
        None => None,
        Some(p) => {
            let spec = PadSpec {
                top: p.top,
                bottom: p.bottom,
                left: p.left,
                right: p.right,
                original_pattern: p.original_pattern.parse()?,
            };
            spec.validate()?;
            Some(spec)
        }
    };
    Ok((pattern, raw.black_level, raw.white_level, pad))
}

pub fn load_raw(pair: &RawFilePair) -> Result<(RawImage, Option<PadSpec>)> {
    let bytes = fs::read(&pair.pgm_path)?;
    let (height, width, samples) = decode_pgm(&bytes)?;
    let text = match fs::read_to_string(&pair.sidecar_path) {
        Ok(t) => t,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => {
            return Err(Error::MissingSidecar(pair.sidecar_path.clone()))
        }
        Err(e) => return Err(e.into()),
    };
    let (pattern, black, white, pad) = decode_sidecar(&text)?;
    let img = RawImage::with_levels(height, width, samples, pattern, black, white)?;
    Ok((img, pad))
}

/// Writes `bytes` to `path` through a temporary file in the same directory.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(bytes)?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| Error::Io(e.error))?;
    Ok(())
}

pub fn save_raw(img: &RawImage, pad: Option<&PadSpec>, pair: &RawFilePair) -> Result<()> {
    write_atomic(&pair.pgm_path, &encode_pgm(img))?;
    write_atomic(&pair.sidecar_path, encode_sidecar(img, pad).as_bytes())
}

/// Binary PPM, maxval 65535, big-endian, values `round(v * 65535)`.
pub fn encode_ppm(rgb: &RgbImage) -> Vec<u8> {
    let header = format!("P6\n{} {}\n{MAXVAL}\n", rgb.width(), rgb.height());
    let mut out = Vec::with_capacity(header.len() + 6 * rgb.width() * rgb.height());
    out.extend_from_slice(header.as_bytes());
    for r in 0..rgb.height() {
        for c in 0..rgb.width() {
            for ch in [ColorChannel::R, ColorChannel::G, ColorChannel::B] {
                let v = (rgb.get(ch, r, c) * f64::from(MAXVAL)).round() as u16;
                out.extend_from_slice(&v.to_be_bytes());
            }
        }
    }
    out
}

/// Decodes a 16-bit P6 file back to normalized planes.
pub fn decode_ppm(bytes: &[u8]) -> Result<RgbImage> {
    let hdr = parse_header(bytes, b"P6")?;
    let expected = hdr.width * hdr.height * 6;
    let payload = &bytes[hdr.data_offset..];
    if payload.len() != expected {
        return Err(Error::Parse(format!(
            "P6: expected {expected} payload bytes, found {}",
            payload.len()
        )));
    }
    let mut planes = [
        Vec::with_capacity(hdr.width * hdr.height),
        Vec::with_capacity(hdr.width * hdr.height),
        Vec::with_capacity(hdr.width * hdr.height),
    ];
    for (i, b) in payload.chunks_exact(2).enumerate() {
        planes[i % 3].push(f64::from(u16::from_be_bytes([b[0], b[1]])) / f64::from(MAXVAL));
    }
    RgbImage::new(hdr.height, hdr.width, planes)
}

pub fn save_ppm(rgb: &RgbImage, path: &Path) -> Result<()> {
    write_atomic(path, &encode_ppm(rgb))
}
