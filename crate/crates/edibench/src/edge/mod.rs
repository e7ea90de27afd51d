//! Canny edge extraction and edge-preservation ratios.

mod canny;
mod epr;

pub use canny::canny;
pub use epr::{epr_accuracy, epr_robustness};

use crate::error::{Error, Result};
use crate::raster::RasterImage;

/// Binary edge mask produced by the detector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeMap {
    width: usize,
    height: usize,
    mask: Vec<bool>,
}

impl EdgeMap {
    pub fn new(width: usize, height: usize, mask: Vec<bool>) -> Result<Self> {
        if mask.len() != width * height {
            return Err(Error::InvalidImage(format!(
                "edge mask has {} entries for {width}x{height}",
                mask.len()
            )));
        }
        Ok(EdgeMap {
            width,
            height,
            mask,
        })
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    #[inline]
    pub fn at(&self, row: usize, col: usize) -> bool {
        self.mask[row * self.width + col]
    }

    pub fn mask(&self) -> &[bool] {
        &self.mask
    }

    /// Number of edge pixels.
    pub fn count(&self) -> usize {
        self.mask.iter().filter(|&&b| b).count()
    }

    /// 0/255 rendering for visual inspection, writable as PGM.
    pub fn to_image(&self) -> RasterImage {
        RasterImage::new(
            self.width,
            self.height,
            1,
            self.mask
                .iter()
                .map(|&b| if b { 255.0 } else { 0.0 })
                .collect(),
        )
        .expect("mask dimensions are valid")
    }

    /// Grows every edge pixel into its 8-neighborhood; used by the
    /// optional tolerant comparison mode, off by default.
    pub fn dilate8(&self) -> EdgeMap {
        let mut mask = vec![false; self.mask.len()];
        for r in 0..self.height {
            for c in 0..self.width {
                if !self.at(r, c) {
                    continue;
                }
                for dr in -1i64..=1 {
                    for dc in -1i64..=1 {
                        let rr = r as i64 + dr;
                        let cc = c as i64 + dc;
                        if rr >= 0 && cc >= 0 && (rr as usize) < self.height
                            && (cc as usize) < self.width
                        {
                            mask[rr as usize * self.width + cc as usize] = true;
                        }
                    }
                }
            }
        }
        EdgeMap {
            width: self.width,
            height: self.height,
            mask,
        }
    }
}

/// Detector configuration. Thresholds are derived from the image itself:
/// `high` is the smallest magnitude at `high_percentile` of the nonzero
/// gradient-magnitude distribution, `low = low_ratio * high`.
#[derive(Debug, Clone, PartialEq)]
pub struct CannyParams {
    pub sigma: f64,
    pub high_percentile: f64,
    pub low_ratio: f64,
}

impl Default for CannyParams {
    fn default() -> Self {
        CannyParams {
            sigma: std::f64::consts::SQRT_2,
            high_percentile: 0.70,
            low_ratio: 0.40,
        }
    }
}

impl CannyParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.sigma > 0.0) {
            return Err(Error::InvalidConfig("canny sigma must be positive".into()));
        }
        if !(self.high_percentile > 0.0 && self.high_percentile < 1.0) {
            return Err(Error::InvalidConfig(
                "canny high_percentile must lie in (0, 1)".into(),
            ));
        }
        if !(self.low_ratio > 0.0 && self.low_ratio < 1.0) {
            return Err(Error::InvalidConfig(
                "canny low_ratio must lie in (0, 1)".into(),
            ));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counting_and_rendering() {
        let map = EdgeMap::new(3, 2, vec![true, false, false, false, true, true]).unwrap();
        assert_eq!(map.count(), 3);
        let img = map.to_image();
        assert_eq!(img.samples(), &[255.0, 0.0, 0.0, 0.0, 255.0, 255.0]);
    }

    #[test]
    fn dilation_grows_neighborhoods() {
        let mut mask = vec![false; 25];
        mask[12] = true; // center of 5x5
        let map = EdgeMap::new(5, 5, mask).unwrap();
        assert_eq!(map.dilate8().count(), 9);
    }

    #[test]
    fn params_validation() {
        assert!(CannyParams::default().validate().is_ok());
        let bad = CannyParams {
            sigma: 0.0,
            ..CannyParams::default()
        };
        assert!(bad.validate().is_err());
        let bad = CannyParams {
            high_percentile: 1.0,
            ..CannyParams::default()
        };
        assert!(bad.validate().is_err());
    }
}
