//! The six 2x upscalers.
//!
//! Every method fills the same high-resolution lattice in three steps:
//! low-resolution pixels land on even/even sites, sites with two odd
//! coordinates are interpolated from their four diagonal neighbors, and
//! the remaining sites are filled from their horizontal/vertical neighbors
//! by the same rule rotated 45 degrees. The methods differ only in how the
//! neighbor weights are chosen.
//!
//! A single pass maps an `H x W` input to the natural `(2H-1) x (2W-1)`
//! lattice, which is then extended to `2H x 2W` by replicating the last
//! row and column. The low-resolution pixels survive bit-exactly at
//! positions `(2i-1, 2j-1)` (1-indexed), so dyadic decimation inverts any
//! number of passes.

mod bicubic;
mod bilinear;
mod dcci;
mod egii;
mod icbi;
mod nedi;

pub use bicubic::bicubic_pass;
pub use bilinear::bilinear_pass;
pub use dcci::dcci_pass;
pub use egii::egii_pass;
pub use icbi::{icbi_pass, icbi_pass_traced};
pub use nedi::nedi_pass;

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use crate::error::{Error, Result};
use crate::raster::RasterImage;

/// Identifier of one of the six interpolation methods.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MethodId {
    Bilinear,
    Bicubic,
    Nedi,
    Egii,
    Icbi,
    Dcci,
}

impl MethodId {
    /// Every method, in report order.
    pub const ALL: [MethodId; 6] = [
        MethodId::Bilinear,
        MethodId::Bicubic,
        MethodId::Nedi,
        MethodId::Egii,
        MethodId::Icbi,
        MethodId::Dcci,
    ];

    /// Stable lowercase name used in CLI arguments and reports.
    pub fn name(&self) -> &'static str {
        match self {
            MethodId::Bilinear => "bilinear",
            MethodId::Bicubic => "bicubic",
            MethodId::Nedi => "nedi",
            MethodId::Egii => "egii",
            MethodId::Icbi => "icbi",
            MethodId::Dcci => "dcci",
        }
    }
}

impl fmt::Display for MethodId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for MethodId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "bilinear" => Ok(MethodId::Bilinear),
            "bicubic" => Ok(MethodId::Bicubic),
            "nedi" => Ok(MethodId::Nedi),
            "egii" => Ok(MethodId::Egii),
            "icbi" => Ok(MethodId::Icbi),
            "dcci" => Ok(MethodId::Dcci),
            other => Err(Error::UnknownMethod(other.to_string())),
        }
    }
}

/// Tuning knobs for the edge-directed methods.
#[derive(Debug, Clone, PartialEq)]
pub struct InterpConfig {
    /// Side length of the low-resolution training window for the
    /// covariance solve (even, cell-centered).
    pub nedi_window: usize,
    /// Local variance below which the covariance solve is skipped in
    /// favor of the bilinear rule (intensity squared).
    pub nedi_variance_threshold: f64,
    /// Condition-number cap for the 4x4 normal equations; beyond it the
    /// bilinear fallback fires.
    pub nedi_condition_limit: f64,
    /// Maximum greedy refinement sweeps.
    pub icbi_max_iters: usize,
    /// Sweep-to-sweep change (intensity) below which refinement stops.
    pub icbi_stop_delta: f64,
    /// Directional-strength ratio above which one diagonal wins outright.
    pub dcci_threshold: f64,
    /// Exponent of the gradient-inverse blend weights.
    pub dcci_exponent: u32,
    /// Side length of the window for directional variance estimates
    /// (odd, pixel-centered).
    pub egii_stats_window: usize,
}

impl Default for InterpConfig {
    fn default() -> Self {
        InterpConfig {
            nedi_window: 8,
            nedi_variance_threshold: 8.0,
            nedi_condition_limit: 1e8,
            icbi_max_iters: 20,
            icbi_stop_delta: 0.2,
            dcci_threshold: 1.15,
            dcci_exponent: 5,
            egii_stats_window: 7,
        }
    }
}

impl InterpConfig {
    pub fn validate(&self) -> Result<()> {
        if self.nedi_window < 4 || self.nedi_window % 2 != 0 {
            return Err(Error::InvalidConfig(format!(
                "nedi_window must be even and at least 4, got {}",
                self.nedi_window
            )));
        }
        if !(self.nedi_variance_threshold > 0.0) {
            return Err(Error::InvalidConfig(
                "nedi_variance_threshold must be positive".into(),
            ));
        }
        if !(self.nedi_condition_limit > 0.0) {
            return Err(Error::InvalidConfig(
                "nedi_condition_limit must be positive".into(),
            ));
        }
        if !(self.icbi_stop_delta > 0.0) {
            return Err(Error::InvalidConfig(
                "icbi_stop_delta must be positive".into(),
            ));
        }
        if !(self.dcci_threshold > 0.0) {
            return Err(Error::InvalidConfig(
                "dcci_threshold must be positive".into(),
            ));
        }
        if self.dcci_exponent == 0 {
            return Err(Error::InvalidConfig(
                "dcci_exponent must be at least 1".into(),
            ));
        }
        if self.egii_stats_window < 3 || self.egii_stats_window % 2 == 0 {
            return Err(Error::InvalidConfig(format!(
                "egii_stats_window must be odd and at least 3, got {}",
                self.egii_stats_window
            )));
        }
        Ok(())
    }
}

/// An upscaled image together with the wall-clock cost of producing it.
#[derive(Debug, Clone)]
pub struct UpscaleResult {
    pub image: RasterImage,
    /// Wall-clock seconds spent inside the interpolation passes only.
    pub elapsed_seconds: f64,
}

/// Applies `n` 2x passes of `method` to a single-channel image.
pub fn upscale(
    lr: &RasterImage,
    method: MethodId,
    n: u32,
    cfg: &InterpConfig,
) -> Result<UpscaleResult> {
    if lr.channels() != 1 {
        return Err(Error::NotSingleChannel(lr.channels()));
    }
    if lr.width() < 4 || lr.height() < 4 {
        return Err(Error::TooSmall {
            width: lr.width(),
            height: lr.height(),
            min_width: 4,
            min_height: 4,
        });
    }
    if n < 1 {
        return Err(Error::InvalidConfig(format!(
            "factor exponent must be at least 1, got {n}"
        )));
    }
    cfg.validate()?;

    let start = Instant::now();
    let mut current = single_pass(lr, method, cfg);
    for _ in 1..n {
        current = single_pass(&current, method, cfg);
    }
    Ok(UpscaleResult {
        image: current,
        elapsed_seconds: start.elapsed().as_secs_f64(),
    })
}

/// Runs `upscale` three times back to back and reports the median
/// wall-clock time. Meant to run with no concurrent interference.
pub fn time_upscale(
    lr: &RasterImage,
    method: MethodId,
    n: u32,
    cfg: &InterpConfig,
) -> Result<UpscaleResult> {
    let mut times = Vec::with_capacity(3);
    let mut image = None;
    for _ in 0..3 {
        let run = upscale(lr, method, n, cfg)?;
        times.push(run.elapsed_seconds);
        image = Some(run.image);
    }
    times.sort_by(|a, b| a.total_cmp(b));
    Ok(UpscaleResult {
        image: image.expect("three runs completed"),
        elapsed_seconds: times[1],
    })
}

/// Per-channel upscaling for visual montages: RGB images are split,
/// upscaled independently and re-interleaved.
pub fn upscale_per_channel(
    img: &RasterImage,
    method: MethodId,
    n: u32,
    cfg: &InterpConfig,
) -> Result<RasterImage> {
    if img.channels() == 1 {
        return Ok(upscale(img, method, n, cfg)?.image);
    }
    let planes = img
        .split_channels()
        .iter()
        .map(|p| Ok(upscale(p, method, n, cfg)?.image))
        .collect::<Result<Vec<_>>>()?;
    RasterImage::merge_channels(&planes)
}

fn single_pass(lr: &RasterImage, method: MethodId, cfg: &InterpConfig) -> RasterImage {
    match method {
        MethodId::Bilinear => bilinear::fill(lr),
        MethodId::Bicubic => bicubic::fill(lr),
        MethodId::Nedi => nedi::fill(lr, cfg),
        MethodId::Egii => egii::fill(lr, cfg),
        MethodId::Icbi => icbi::fill(lr, cfg).0,
        MethodId::Dcci => dcci::fill(lr, cfg),
    }
    .into_extended()
}

/// Half-sample cubic convolution weights (kernel parameter a = -1/2)
/// for taps at distances 1.5, 0.5, 0.5, 1.5 from the midpoint.
pub(crate) const CUBIC_HALF: [f64; 4] = [-1.0 / 16.0, 9.0 / 16.0, 9.0 / 16.0, -1.0 / 16.0];

#[inline]
pub(crate) fn tap4(v: [f64; 4]) -> f64 {
    CUBIC_HALF[0] * v[0] + CUBIC_HALF[1] * v[1] + CUBIC_HALF[2] * v[2] + CUBIC_HALF[3] * v[3]
}

/// LR points along the 45-degree diagonal (direction (+1, +1)) through
/// the cell anchored at (i, j), in tap order.
#[inline]
pub(crate) fn diag45_taps(lr: &RasterImage, i: isize, j: isize) -> [f64; 4] {
    [
        lr.gray_clamped(i - 1, j - 1),
        lr.gray_clamped(i, j),
        lr.gray_clamped(i + 1, j + 1),
        lr.gray_clamped(i + 2, j + 2),
    ]
}

/// LR points along the 135-degree diagonal (direction (+1, -1)) through
/// the cell anchored at (i, j), in tap order.
#[inline]
pub(crate) fn diag135_taps(lr: &RasterImage, i: isize, j: isize) -> [f64; 4] {
    [
        lr.gray_clamped(i - 1, j + 2),
        lr.gray_clamped(i, j + 1),
        lr.gray_clamped(i + 1, j),
        lr.gray_clamped(i + 2, j - 1),
    ]
}

/// Natural `(2H-1) x (2W-1)` lattice under construction.
pub(crate) struct Lattice {
    pub hh: usize,
    pub ww: usize,
    pub data: Vec<f64>,
}

impl Lattice {
    /// Places every LR pixel on its even/even site; other sites start at 0.
    pub fn seed(lr: &RasterImage) -> Lattice {
        let hh = 2 * lr.height() - 1;
        let ww = 2 * lr.width() - 1;
        let mut data = vec![0.0; hh * ww];
        for i in 0..lr.height() {
            for j in 0..lr.width() {
                data[(2 * i) * ww + 2 * j] = lr.gray(i, j);
            }
        }
        Lattice { hh, ww, data }
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> f64 {
        self.data[r * self.ww + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: f64) {
        self.data[r * self.ww + c] = v;
    }

    /// Read with replicate padding that preserves the index parity, so
    /// out-of-range taps stay on the same sub-lattice as the requested
    /// point.
    #[inline]
    pub fn get_parity_clamped(&self, r: isize, c: isize) -> f64 {
        let r = clamp_parity(r, self.hh);
        let c = clamp_parity(c, self.ww);
        self.get(r, c)
    }

    /// Taps along the row through (r, c) at offsets -3, -1, +1, +3.
    #[inline]
    pub fn row_taps(&self, r: usize, c: usize) -> [f64; 4] {
        let (r, c) = (r as isize, c as isize);
        [
            self.get_parity_clamped(r, c - 3),
            self.get_parity_clamped(r, c - 1),
            self.get_parity_clamped(r, c + 1),
            self.get_parity_clamped(r, c + 3),
        ]
    }

    /// Taps along the column through (r, c) at offsets -3, -1, +1, +3.
    #[inline]
    pub fn col_taps(&self, r: usize, c: usize) -> [f64; 4] {
        let (r, c) = (r as isize, c as isize);
        [
            self.get_parity_clamped(r - 3, c),
            self.get_parity_clamped(r - 1, c),
            self.get_parity_clamped(r + 1, c),
            self.get_parity_clamped(r + 3, c),
        ]
    }

    /// Extends to `(hh+1) x (ww+1)` by replicating the last row and column.
    pub fn into_extended(self) -> RasterImage {
        let out_h = self.hh + 1;
        let out_w = self.ww + 1;
        let mut samples = Vec::with_capacity(out_h * out_w);
        for r in 0..out_h {
            let rr = r.min(self.hh - 1);
            for c in 0..out_w {
                let cc = c.min(self.ww - 1);
                samples.push(self.get(rr, cc));
            }
        }
        RasterImage::new(out_w, out_h, 1, samples).expect("lattice dimensions are valid")
    }
}

/// Clamp an index into `[0, len)` while keeping its parity, assuming
/// `len >= 3`.
#[inline]
pub(crate) fn clamp_parity(x: isize, len: usize) -> usize {
    let max = len as isize - 1;
    if x < 0 {
        x.rem_euclid(2) as usize
    } else if x > max {
        if (x - max) % 2 == 0 {
            max as usize
        } else {
            (max - 1) as usize
        }
    } else {
        x as usize
    }
}
