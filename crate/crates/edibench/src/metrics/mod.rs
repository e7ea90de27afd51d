//! Full-reference image quality metrics.

mod fidelity;
mod fsim;
mod mi;
mod ssim;

pub use fidelity::{psnr, snr};
pub use fsim::fsim;
pub use mi::{marginal_entropy, mutual_information};
pub use ssim::ssim;

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::interp::MethodId;
use crate::raster::RasterImage;

/// Sentinel decibel value reported when the error signal is exactly zero,
/// keeping averages finite. Rendered as `CAP` in reports.
pub const CAP_DB: f64 = 120.0;

/// The eight per-record measurements, in report column order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MetricKind {
    Snr,
    Psnr,
    Ssim,
    Fsim,
    Mi,
    TimeCost,
    Epra,
    Eprr,
}

impl MetricKind {
    pub const ALL: [MetricKind; 8] = [
        MetricKind::Snr,
        MetricKind::Psnr,
        MetricKind::Ssim,
        MetricKind::Fsim,
        MetricKind::Mi,
        MetricKind::TimeCost,
        MetricKind::Epra,
        MetricKind::Eprr,
    ];

    /// Stable name used for CSV headers, CLI arguments and plot files.
    pub fn name(&self) -> &'static str {
        match self {
            MetricKind::Snr => "snr",
            MetricKind::Psnr => "psnr",
            MetricKind::Ssim => "ssim",
            MetricKind::Fsim => "fsim",
            MetricKind::Mi => "mi",
            MetricKind::TimeCost => "time_cost_s",
            MetricKind::Epra => "epra",
            MetricKind::Eprr => "eprr",
        }
    }

    /// Lower is better only for the timing column.
    pub fn lower_is_better(&self) -> bool {
        matches!(self, MetricKind::TimeCost)
    }
}

impl fmt::Display for MetricKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for MetricKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        MetricKind::ALL
            .into_iter()
            .find(|m| m.name() == s.to_ascii_lowercase())
            .ok_or_else(|| Error::UnknownMetric(s.to_string()))
    }
}

/// One image x one method -> the eight metric values.
///
/// A `None` entry means the value is undefined for this record (metric
/// deselected, precondition unmet, or -- for `epra` -- an empty reference
/// edge map); such cells render as `NA`. Capped SNR/PSNR store [`CAP_DB`].
#[derive(Debug, Clone, PartialEq)]
pub struct MetricRecord {
    pub image_id: String,
    pub method: MethodId,
    pub snr: Option<f64>,
    pub psnr: Option<f64>,
    pub ssim: Option<f64>,
    pub fsim: Option<f64>,
    pub mi: Option<f64>,
    pub time_cost_s: Option<f64>,
    pub epra: Option<f64>,
    pub eprr: Option<f64>,
    /// Degeneracy notes for the run manifest, empty when clean.
    pub notes: Vec<String>,
}

impl MetricRecord {
    pub fn empty(image_id: impl Into<String>, method: MethodId) -> Self {
        MetricRecord {
            image_id: image_id.into(),
            method,
            snr: None,
            psnr: None,
            ssim: None,
            fsim: None,
            mi: None,
            time_cost_s: None,
            epra: None,
            eprr: None,
            notes: Vec::new(),
        }
    }

    pub fn value(&self, kind: MetricKind) -> Option<f64> {
        match kind {
            MetricKind::Snr => self.snr,
            MetricKind::Psnr => self.psnr,
            MetricKind::Ssim => self.ssim,
            MetricKind::Fsim => self.fsim,
            MetricKind::Mi => self.mi,
            MetricKind::TimeCost => self.time_cost_s,
            MetricKind::Epra => self.epra,
            MetricKind::Eprr => self.eprr,
        }
    }

    pub fn set_value(&mut self, kind: MetricKind, value: Option<f64>) {
        let slot = match kind {
            MetricKind::Snr => &mut self.snr,
            MetricKind::Psnr => &mut self.psnr,
            MetricKind::Ssim => &mut self.ssim,
            MetricKind::Fsim => &mut self.fsim,
            MetricKind::Mi => &mut self.mi,
            MetricKind::TimeCost => &mut self.time_cost_s,
            MetricKind::Epra => &mut self.epra,
            MetricKind::Eprr => &mut self.eprr,
        };
        *slot = value;
    }
}

pub(crate) fn check_pair(reference: &RasterImage, test: &RasterImage) -> Result<()> {
    if reference.channels() != 1 {
        return Err(Error::NotSingleChannel(reference.channels()));
    }
    if test.channels() != 1 {
        return Err(Error::NotSingleChannel(test.channels()));
    }
    if reference.width() != test.width() || reference.height() != test.height() {
        return Err(Error::DimensionMismatch {
            a_width: reference.width(),
            a_height: reference.height(),
            b_width: test.width(),
            b_height: test.height(),
        });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn metric_names_roundtrip() {
        for kind in MetricKind::ALL {
            assert_eq!(kind.name().parse::<MetricKind>().unwrap(), kind);
        }
        assert!("vmaf".parse::<MetricKind>().is_err());
        assert!(MetricKind::TimeCost.lower_is_better());
        assert!(!MetricKind::Psnr.lower_is_better());
    }

    #[test]
    fn record_slot_accessors() {
        let mut rec = MetricRecord::empty("img", MethodId::Dcci);
        assert_eq!(rec.value(MetricKind::Mi), None);
        rec.set_value(MetricKind::Mi, Some(2.5));
        assert_eq!(rec.mi, Some(2.5));
        assert_eq!(rec.value(MetricKind::Mi), Some(2.5));
    }
}
