//! Benchmark harness: dataset ingestion, the downsample/upsample/score
//! protocol, aggregation and report emission.

mod config_file;
mod fetch;
mod font;
mod harness;
mod montage;
mod plot;
mod report;

pub use config_file::{load_config_file, ConfigOverrides};
pub use fetch::fetch_dataset;
pub use harness::{run_benchmark, BenchOutput};
pub use montage::render_roi_montage;
pub use plot::render_metric_plot;
pub use report::{parse_csv, render_csv, render_summary_markdown};

use std::path::PathBuf;

use crate::edge::CannyParams;
use crate::error::{Error, Result};
use crate::interp::{InterpConfig, MethodId};
use crate::metrics::{MetricKind, MetricRecord};
use crate::raster::PixelRect;

/// Full configuration of one benchmark run.
#[derive(Debug, Clone)]
pub struct BenchConfig {
    pub input_dir: PathBuf,
    pub methods: Vec<MethodId>,
    /// Enlargement factor exponent: images are downsampled and upscaled
    /// `n` times, i.e. by `2^n`.
    pub factor_exponent: u32,
    pub metrics: Vec<MetricKind>,
    pub canny: CannyParams,
    pub interp: InterpConfig,
    pub output_dir: PathBuf,
    /// Regions of interest for montages, keyed by image id (file stem).
    pub roi_list: Vec<(String, PixelRect)>,
}

impl BenchConfig {
    pub fn new(input_dir: impl Into<PathBuf>, output_dir: impl Into<PathBuf>) -> Self {
        BenchConfig {
            input_dir: input_dir.into(),
            methods: MethodId::ALL.to_vec(),
            factor_exponent: 1,
            metrics: MetricKind::ALL.to_vec(),
            canny: CannyParams::default(),
            interp: InterpConfig::default(),
            output_dir: output_dir.into(),
            roi_list: Vec::new(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.methods.is_empty() {
            return Err(Error::InvalidConfig("no methods selected".into()));
        }
        if self.factor_exponent < 1 || self.factor_exponent > 4 {
            return Err(Error::InvalidConfig(format!(
                "factor exponent must lie in 1..=4, got {}",
                self.factor_exponent
            )));
        }
        if self.metrics.is_empty() {
            return Err(Error::InvalidConfig("no metrics selected".into()));
        }
        self.canny.validate()?;
        self.interp.validate()?;
        Ok(())
    }

    /// Canonical key-value rendering, hashed into the run manifest.
    pub fn canonical_string(&self) -> String {
        let methods: Vec<&str> = self.methods.iter().map(|m| m.name()).collect();
        let metrics: Vec<&str> = self.metrics.iter().map(|m| m.name()).collect();
        let rois: Vec<String> = self
            .roi_list
            .iter()
            .map(|(id, r)| format!("{id}:{},{},{},{}", r.x0, r.y0, r.w, r.h))
            .collect();
        format!(
            "methods={}\nfactor_exp={}\nmetrics={}\n\
             canny_sigma={}\ncanny_high_percentile={}\ncanny_low_ratio={}\n\
             nedi_window={}\nnedi_variance_threshold={}\nnedi_condition_limit={}\n\
             icbi_max_iters={}\nicbi_stop_delta={}\n\
             dcci_threshold={}\ndcci_exponent={}\negii_stats_window={}\nroi={}\n",
            methods.join(","),
            self.factor_exponent,
            metrics.join(","),
            self.canny.sigma,
            self.canny.high_percentile,
            self.canny.low_ratio,
            self.interp.nedi_window,
            self.interp.nedi_variance_threshold,
            self.interp.nedi_condition_limit,
            self.interp.icbi_max_iters,
            self.interp.icbi_stop_delta,
            self.interp.dcci_threshold,
            self.interp.dcci_exponent,
            self.interp.egii_stats_window,
            rois.join(";"),
        )
    }
}

/// Per-method arithmetic means over all scored images, the shape of the
/// summary tables.
#[derive(Debug, Clone, PartialEq)]
pub struct SummaryTable {
    pub methods: Vec<MethodId>,
    /// `means[m][k]` is the mean of metric `MetricKind::ALL[k]` for
    /// `methods[m]`, or None when no record carried a value.
    pub means: Vec<Vec<Option<f64>>>,
    pub images_scored: usize,
}

impl SummaryTable {
    /// Builds the table by averaging record values; undefined entries are
    /// skipped per metric.
    pub fn from_records(records: &[MetricRecord], methods: &[MethodId]) -> SummaryTable {
        let mut means = Vec::with_capacity(methods.len());
        let mut images = std::collections::BTreeSet::new();
        for &method in methods {
            let rows: Vec<&MetricRecord> =
                records.iter().filter(|r| r.method == method).collect();
            let mut method_means = Vec::with_capacity(MetricKind::ALL.len());
            for kind in MetricKind::ALL {
                let vals: Vec<f64> = rows.iter().filter_map(|r| r.value(kind)).collect();
                if vals.is_empty() {
                    method_means.push(None);
                } else {
                    method_means.push(Some(vals.iter().sum::<f64>() / vals.len() as f64));
                }
            }
            means.push(method_means);
            for r in &rows {
                images.insert(r.image_id.clone());
            }
        }
        SummaryTable {
            methods: methods.to_vec(),
            means,
            images_scored: images.len(),
        }
    }

    pub fn mean(&self, method: MethodId, kind: MetricKind) -> Option<f64> {
        let m = self.methods.iter().position(|&x| x == method)?;
        let k = MetricKind::ALL.iter().position(|&x| x == kind)?;
        self.means[m][k]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_validation() {
        let mut cfg = BenchConfig::new("in", "out");
        assert!(cfg.validate().is_ok());
        cfg.factor_exponent = 5;
        assert!(cfg.validate().is_err());
        cfg.factor_exponent = 1;
        cfg.methods.clear();
        assert!(cfg.validate().is_err());
    }

    #[test]
    fn summary_means_and_missing_values() {
        let mut a = MetricRecord::empty("one", MethodId::Bilinear);
        a.psnr = Some(30.0);
        a.mi = Some(2.0);
        let mut b = MetricRecord::empty("two", MethodId::Bilinear);
        b.psnr = Some(34.0);
        let table = SummaryTable::from_records(&[a, b], &[MethodId::Bilinear]);
        assert_eq!(table.mean(MethodId::Bilinear, MetricKind::Psnr), Some(32.0));
        assert_eq!(table.mean(MethodId::Bilinear, MetricKind::Mi), Some(2.0));
        assert_eq!(table.mean(MethodId::Bilinear, MetricKind::Ssim), None);
        assert_eq!(table.images_scored, 2);
    }
}
