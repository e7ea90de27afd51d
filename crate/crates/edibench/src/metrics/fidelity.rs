//! Error-sensitivity metrics: SNR and PSNR in decibels.

use crate::error::Result;
use crate::raster::RasterImage;

use super::{check_pair, CAP_DB};

/// Peak signal-to-noise ratio `10 log10(255^2 / MSE)`.
/// Identical images report the [`CAP_DB`] sentinel.
pub fn psnr(reference: &RasterImage, test: &RasterImage) -> Result<f64> {
    check_pair(reference, test)?;
    let n = reference.samples().len() as f64;
    let sq_err: f64 = reference
        .samples()
        .iter()
        .zip(test.samples())
        .map(|(a, b)| (a - b) * (a - b))
        .sum();
    if sq_err == 0.0 {
        return Ok(CAP_DB);
    }
    Ok(10.0 * (255.0 * 255.0 * n / sq_err).log10())
}

/// Signal-to-noise ratio `10 log10(sum ref^2 / sum (ref - test)^2)`.
/// Identical images report [`CAP_DB`]; an all-zero reference against a
/// nonzero error floors at `-CAP_DB`.
pub fn snr(reference: &RasterImage, test: &RasterImage) -> Result<f64> {
    check_pair(reference, test)?;
    let mut sq_sig = 0.0;
    let mut sq_err = 0.0;
    for (a, b) in reference.samples().iter().zip(test.samples()) {
        sq_sig += a * a;
        sq_err += (a - b) * (a - b);
    }
    if sq_err == 0.0 {
        return Ok(CAP_DB);
    }
    if sq_sig == 0.0 {
        return Ok(-CAP_DB);
    }
    Ok(10.0 * (sq_sig / sq_err).log10())
}
