//! Image file I/O: PGM/PPM (ASCII and binary) and 8-bit PNG.
//!
//! Decoding converts samples to real values in `[0, 255]`; PNM rasters
//! with a maxval above 255 are rescaled by `255 / maxval`. Encoding rounds
//! half-away-from-zero and clamps to `[0, 255]` -- in-memory samples are
//! never touched.

use std::fs;
use std::io::Write as _;
use std::path::Path;

use crate::error::{Error, Result};
use crate::raster::RasterImage;

/// Loads a PGM (P2/P5), PPM (P3/P6) or 8-bit PNG image.
///
/// The format is sniffed from the file's magic bytes, not its extension.
/// Images smaller than 2x2 are rejected.
pub fn load_image(path: impl AsRef<Path>) -> Result<RasterImage> {
    let path = path.as_ref();
    let bytes = fs::read(path).map_err(|e| Error::read(path, e))?;
    let img = match bytes.as_slice() {
        [b'P', b'2', ..] | [b'P', b'3', ..] | [b'P', b'5', ..] | [b'P', b'6', ..] => {
            decode_pnm(&bytes).map_err(|reason| Error::format(path, reason))?
        }
        [0x89, b'P', b'N', b'G', ..] => {
            decode_png(&bytes).map_err(|reason| Error::format(path, reason))?
        }
        _ => {
            return Err(Error::format(
                path,
                "unrecognized magic bytes (expected PGM, PPM or PNG)",
            ))
        }
    };
    if img.width() < 2 || img.height() < 2 {
        return Err(Error::format(
            path,
            format!("image is {}x{}, need at least 2x2", img.width(), img.height()),
        ));
    }
    Ok(img)
}

/// Saves an image, choosing the container from the file extension:
/// `.pgm` (binary P5, gray only), `.ppm` (binary P6, RGB only),
/// `.pnm` (P5 or P6 by channel count) or `.png`.
pub fn save_image(img: &RasterImage, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let ext = path
        .extension()
        .and_then(|e| e.to_str())
        .map(|e| e.to_ascii_lowercase())
        .unwrap_or_default();
    match ext.as_str() {
        "pgm" => {
            if img.channels() != 1 {
                return Err(Error::write(path, "PGM holds a single channel"));
            }
            save_pnm(img, path, false)
        }
        "ppm" => {
            if img.channels() != 3 {
                return Err(Error::write(path, "PPM holds three channels"));
            }
            save_pnm(img, path, false)
        }
        "pnm" => save_pnm(img, path, false),
        "png" => save_png(img, path),
        other => Err(Error::write(
            path,
            format!("unsupported output extension `{other}`"),
        )),
    }
}

/// Writes a PGM/PPM file; `ascii` selects P2/P3 over the binary P5/P6.
pub fn save_pnm(img: &RasterImage, path: impl AsRef<Path>, ascii: bool) -> Result<()> {
    let path = path.as_ref();
    let mut out: Vec<u8> = Vec::new();
    let magic = match (img.channels(), ascii) {
        (1, false) => "P5",
        (1, true) => "P2",
        (3, false) => "P6",
        (3, true) => "P3",
        (ch, _) => return Err(Error::write(path, format!("cannot write {ch} channels"))),
    };
    let _ = writeln!(out, "{magic}");
    let _ = writeln!(out, "{} {}", img.width(), img.height());
    let _ = writeln!(out, "255");
    if ascii {
        let mut col = 0usize;
        for &s in img.samples() {
            let v = encode_u8(s);
            if col > 0 {
                out.push(if col % 16 == 0 { b'\n' } else { b' ' });
            }
            let _ = write!(out, "{v}");
            col += 1;
        }
        out.push(b'\n');
    } else {
        out.extend(img.samples().iter().map(|&s| encode_u8(s)));
    }
    fs::write(path, out).map_err(|e| Error::write(path, e))
}

fn save_png(img: &RasterImage, path: &Path) -> Result<()> {
    let w = img.width() as u32;
    let h = img.height() as u32;
    let pixels: Vec<u8> = img.samples().iter().map(|&s| encode_u8(s)).collect();
    let dyn_img = match img.channels() {
        1 => image::DynamicImage::ImageLuma8(
            image::GrayImage::from_raw(w, h, pixels)
                .ok_or_else(|| Error::write(path, "buffer size mismatch"))?,
        ),
        3 => image::DynamicImage::ImageRgb8(
            image::RgbImage::from_raw(w, h, pixels)
                .ok_or_else(|| Error::write(path, "buffer size mismatch"))?,
        ),
        ch => return Err(Error::write(path, format!("cannot write {ch} channels"))),
    };
    dyn_img
        .save_with_format(path, image::ImageFormat::Png)
        .map_err(|e| Error::write(path, e))
}

/// Rounds half-away-from-zero, then clamps to `[0, 255]`.
#[inline]
pub fn encode_u8(sample: f64) -> u8 {
    sample.round().clamp(0.0, 255.0) as u8
}

fn decode_png(bytes: &[u8]) -> std::result::Result<RasterImage, String> {
    let dyn_img = image::load_from_memory_with_format(bytes, image::ImageFormat::Png)
        .map_err(|e| format!("PNG decode failed: {e}"))?;
    let (w, h) = (dyn_img.width() as usize, dyn_img.height() as usize);
    let (channels, raw): (usize, Vec<u8>) = match dyn_img {
        image::DynamicImage::ImageLuma8(b) => (1, b.into_raw()),
        image::DynamicImage::ImageRgb8(b) => (3, b.into_raw()),
        // Alpha is not part of the pipeline; drop it.
        image::DynamicImage::ImageLumaA8(b) => (
            1,
            b.into_raw().chunks_exact(2).map(|px| px[0]).collect(),
        ),
        image::DynamicImage::ImageRgba8(b) => (
            3,
            b.into_raw()
                .chunks_exact(4)
                .flat_map(|px| [px[0], px[1], px[2]])
                .collect(),
        ),
        other => {
            return Err(format!(
                "unsupported PNG bit depth/color type {:?} (only 8-bit is handled)",
                other.color()
            ))
        }
    };
    RasterImage::new(w, h, channels, raw.into_iter().map(f64::from).collect())
        .map_err(|e| e.to_string())
}

fn decode_pnm(bytes: &[u8]) -> std::result::Result<RasterImage, String> {
    let magic = &bytes[..2];
    let (channels, ascii) = match magic {
        b"P2" => (1, true),
        b"P3" => (3, true),
        b"P5" => (1, false),
        b"P6" => (3, false),
        _ => unreachable!("caller sniffed the magic"),
    };
    let mut cursor = 2usize;
    let width = read_header_int(bytes, &mut cursor)? as usize;
    let height = read_header_int(bytes, &mut cursor)? as usize;
    let maxval = read_header_int(bytes, &mut cursor)?;
    if maxval == 0 || maxval > 65535 {
        return Err(format!("maxval {maxval} out of range 1..=65535"));
    }
    if width == 0 || height == 0 {
        return Err(format!("degenerate dimensions {width}x{height}"));
    }
    let count = width * height * channels;
    // Values at or below 255 are transcribed directly; wider rasters are
    // rescaled so 16-bit input lands back on the [0, 255] scale.
    let scale = if maxval <= 255 {
        1.0
    } else {
        255.0 / maxval as f64
    };

    let mut samples = Vec::with_capacity(count);
    if ascii {
        for _ in 0..count {
            let v = read_header_int(bytes, &mut cursor)?;
            if v > maxval {
                return Err(format!("sample {v} exceeds maxval {maxval}"));
            }
            samples.push(v as f64 * scale);
        }
    } else {
        // Binary rasters start after exactly one whitespace byte past maxval.
        let bytes_per = if maxval > 255 { 2 } else { 1 };
        let need = count * bytes_per;
        let raster = bytes
            .get(cursor..cursor + need)
            .ok_or_else(|| format!("truncated raster: need {need} bytes"))?;
        if bytes_per == 1 {
            samples.extend(raster.iter().map(|&b| b as f64 * scale));
        } else {
            for pair in raster.chunks_exact(2) {
                let v = u16::from_be_bytes([pair[0], pair[1]]);
                if v as u32 > maxval {
                    return Err(format!("sample {v} exceeds maxval {maxval}"));
                }
                samples.push(v as f64 * scale);
            }
        }
    }
    RasterImage::new(width, height, channels, samples).map_err(|e| e.to_string())
}

/// Reads the next unsigned integer token, skipping whitespace and
/// `#`-to-end-of-line comments. Advances the cursor one byte past the
/// token's final whitespace terminator when present.
fn read_header_int(bytes: &[u8], cursor: &mut usize) -> std::result::Result<u32, String> {
    let mut i = *cursor;
    loop {
        match bytes.get(i) {
            Some(b' ' | b'\t' | b'\r' | b'\n') => i += 1,
            Some(b'#') => {
                while let Some(&b) = bytes.get(i) {
                    i += 1;
                    if b == b'\n' {
                        break;
                    }
                }
            }
            Some(b) if b.is_ascii_digit() => break,
            Some(b) => return Err(format!("unexpected byte 0x{b:02x} in header")),
            None => return Err("truncated header".into()),
        }
    }
    let mut value: u64 = 0;
    while let Some(&b) = bytes.get(i) {
        if !b.is_ascii_digit() {
            break;
        }
        value = value * 10 + (b - b'0') as u64;
        if value > u32::MAX as u64 {
            return Err("header value overflow".into());
        }
        i += 1;
    }
    // Consume the single terminator so a binary raster can follow directly.
    if matches!(bytes.get(i), Some(b' ' | b'\t' | b'\r' | b'\n')) {
        i += 1;
    }
    *cursor = i;
    Ok(value as u32)
}
