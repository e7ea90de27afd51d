//! Image data model: real-valued raster planes and the dyadic downsampler.
//!
//! Samples are stored as `f64` in row-major, channel-interleaved order.
//! File decoding produces values in `[0, 255]`; interpolation passes may
//! overshoot that range and the overshoot is kept until encode time, so
//! metrics never see double-rounded data.

use crate::error::{Error, Result};

/// A real-valued raster image, 1 (gray) or 3 (RGB) channels.
#[derive(Debug, Clone, PartialEq)]
pub struct RasterImage {
    width: usize,
    height: usize,
    channels: usize,
    samples: Vec<f64>,
}

/// Axis-aligned rectangle in 1-indexed image coordinates.
///
/// `x0` is the column and `y0` the row of the top-left pixel; both start
/// at 1 so that public coordinates match the dyadic sampling convention
/// `low(i, j) = high(2i - 1, 2j - 1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PixelRect {
    pub x0: usize,
    pub y0: usize,
    pub w: usize,
    pub h: usize,
}

impl RasterImage {
    /// Builds an image from raw samples.
    ///
    /// Dimensions must be positive, channels 1 or 3, the sample count must
    /// equal `width * height * channels` and every sample must be finite.
    pub fn new(width: usize, height: usize, channels: usize, samples: Vec<f64>) -> Result<Self> {
        if width == 0 || height == 0 {
            return Err(Error::InvalidImage(format!(
                "dimensions must be positive, got {width}x{height}"
            )));
        }
        if channels != 1 && channels != 3 {
            return Err(Error::InvalidImage(format!(
                "channel count must be 1 or 3, got {channels}"
            )));
        }
        if samples.len() != width * height * channels {
            return Err(Error::InvalidImage(format!(
                "expected {} samples for {width}x{height}x{channels}, got {}",
                width * height * channels,
                samples.len()
            )));
        }
        if let Some(bad) = samples.iter().find(|s| !s.is_finite()) {
            return Err(Error::InvalidImage(format!("non-finite sample {bad}")));
        }
        Ok(RasterImage {
            width,
            height,
            channels,
            samples,
        })
    }

    /// Single-channel image filled with one value.
    pub fn constant(width: usize, height: usize, value: f64) -> Result<Self> {
        Self::new(width, height, 1, vec![value; width * height])
    }

    /// Single-channel image from a closure over 0-indexed (row, col).
    pub fn from_fn(width: usize, height: usize, f: impl Fn(usize, usize) -> f64) -> Result<Self> {
        let mut samples = Vec::with_capacity(width * height);
        for r in 0..height {
            for c in 0..width {
                samples.push(f(r, c));
            }
        }
        Self::new(width, height, 1, samples)
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn channels(&self) -> usize {
        self.channels
    }

    pub fn samples(&self) -> &[f64] {
        &self.samples
    }

    /// Sample at 0-indexed (row, col, channel).
    #[inline]
    pub fn sample(&self, row: usize, col: usize, ch: usize) -> f64 {
        debug_assert!(row < self.height && col < self.width && ch < self.channels);
        self.samples[(row * self.width + col) * self.channels + ch]
    }

    /// Single-channel sample at 0-indexed (row, col).
    #[inline]
    pub fn gray(&self, row: usize, col: usize) -> f64 {
        debug_assert_eq!(self.channels, 1);
        self.samples[row * self.width + col]
    }

    /// Single-channel sample with replicate padding for out-of-range indices.
    #[inline]
    pub fn gray_clamped(&self, row: isize, col: isize) -> f64 {
        let r = row.clamp(0, self.height as isize - 1) as usize;
        let c = col.clamp(0, self.width as isize - 1) as usize;
        self.gray(r, c)
    }

    #[inline]
    pub(crate) fn set_sample(&mut self, row: usize, col: usize, ch: usize, value: f64) {
        self.samples[(row * self.width + col) * self.channels + ch] = value;
    }

    /// Smallest and largest sample over all channels.
    pub fn min_max(&self) -> (f64, f64) {
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for &s in &self.samples {
            lo = lo.min(s);
            hi = hi.max(s);
        }
        (lo, hi)
    }

    /// Collapses to one channel.
    ///
    /// RGB uses the BT.601 weighting `Y = 0.299 R + 0.587 G + 0.114 B`;
    /// gray input is copied unchanged.
    pub fn to_luminance(&self) -> RasterImage {
        if self.channels == 1 {
            return self.clone();
        }
        let mut samples = Vec::with_capacity(self.width * self.height);
        for px in self.samples.chunks_exact(3) {
            samples.push(0.299 * px[0] + 0.587 * px[1] + 0.114 * px[2]);
        }
        RasterImage {
            width: self.width,
            height: self.height,
            channels: 1,
            samples,
        }
    }

    /// Splits a 3-channel image into its planes. Gray input yields one plane.
    pub fn split_channels(&self) -> Vec<RasterImage> {
        (0..self.channels)
            .map(|ch| {
                let samples = (0..self.height * self.width)
                    .map(|i| self.samples[i * self.channels + ch])
                    .collect();
                RasterImage {
                    width: self.width,
                    height: self.height,
                    channels: 1,
                    samples,
                }
            })
            .collect()
    }

    /// Interleaves three equally sized planes back into an RGB image.
    pub fn merge_channels(planes: &[RasterImage]) -> Result<RasterImage> {
        if planes.len() != 3 {
            return Err(Error::InvalidImage(format!(
                "merge_channels expects 3 planes, got {}",
                planes.len()
            )));
        }
        let (w, h) = (planes[0].width, planes[0].height);
        for p in planes {
            if p.channels != 1 {
                return Err(Error::NotSingleChannel(p.channels));
            }
            if p.width != w || p.height != h {
                return Err(Error::DimensionMismatch {
                    a_width: w,
                    a_height: h,
                    b_width: p.width,
                    b_height: p.height,
                });
            }
        }
        let mut samples = Vec::with_capacity(w * h * 3);
        for i in 0..w * h {
            samples.push(planes[0].samples[i]);
            samples.push(planes[1].samples[i]);
            samples.push(planes[2].samples[i]);
        }
        RasterImage::new(w, h, 3, samples)
    }

    /// Dyadic decimation: `out(i, j) = in(2i - 1, 2j - 1)` in 1-indexed
    /// coordinates, i.e. every odd row and column is kept verbatim.
    ///
    /// No filtering or averaging is applied. Output size is
    /// `ceil(height / 2) x ceil(width / 2)`.
    pub fn downsample_dyadic(&self) -> Result<RasterImage> {
        if self.width < 4 || self.height < 4 {
            return Err(Error::TooSmall {
                width: self.width,
                height: self.height,
                min_width: 4,
                min_height: 4,
            });
        }
        let out_w = self.width.div_ceil(2);
        let out_h = self.height.div_ceil(2);
        let mut samples = Vec::with_capacity(out_w * out_h * self.channels);
        for r in 0..out_h {
            for c in 0..out_w {
                for ch in 0..self.channels {
                    samples.push(self.sample(2 * r, 2 * c, ch));
                }
            }
        }
        RasterImage::new(out_w, out_h, self.channels, samples)
    }

    /// Exact sub-image copy. The rectangle is 1-indexed and must lie fully
    /// inside the image.
    pub fn crop(&self, roi: &PixelRect) -> Result<RasterImage> {
        if roi.x0 == 0
            || roi.y0 == 0
            || roi.w == 0
            || roi.h == 0
            || roi.x0 + roi.w - 1 > self.width
            || roi.y0 + roi.h - 1 > self.height
        {
            return Err(Error::RoiOutOfBounds {
                x0: roi.x0,
                y0: roi.y0,
                w: roi.w,
                h: roi.h,
                width: self.width,
                height: self.height,
            });
        }
        let mut samples = Vec::with_capacity(roi.w * roi.h * self.channels);
        for r in 0..roi.h {
            for c in 0..roi.w {
                for ch in 0..self.channels {
                    samples.push(self.sample(roi.y0 - 1 + r, roi.x0 - 1 + c, ch));
                }
            }
        }
        RasterImage::new(roi.w, roi.h, self.channels, samples)
    }
}
