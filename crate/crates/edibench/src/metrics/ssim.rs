//! Structural similarity (mean SSIM over a Gaussian window).

use crate::error::{Error, Result};
use crate::raster::RasterImage;

use super::check_pair;

const WINDOW: usize = 11;
const SIGMA: f64 = 1.5;
const K1: f64 = 0.01;
const K2: f64 = 0.03;
const L: f64 = 255.0;

/// Mean SSIM with the standard 11x11 Gaussian window (sigma 1.5),
/// K1 = 0.01, K2 = 0.03, L = 255, evaluated where the window fits fully
/// inside both images.
pub fn ssim(reference: &RasterImage, test: &RasterImage) -> Result<f64> {
    check_pair(reference, test)?;
    let (w, h) = (reference.width(), reference.height());
    if w < WINDOW || h < WINDOW {
        return Err(Error::TooSmall {
            width: w,
            height: h,
            min_width: WINDOW,
            min_height: WINDOW,
        });
    }

    let kernel = gaussian_kernel();
    let x = reference.samples();
    let y = test.samples();
    let xx: Vec<f64> = x.iter().map(|a| a * a).collect();
    let yy: Vec<f64> = y.iter().map(|a| a * a).collect();
    let xy: Vec<f64> = x.iter().zip(y).map(|(a, b)| a * b).collect();

    let mu_x = windowed_mean(x, w, h, &kernel);
    let mu_y = windowed_mean(y, w, h, &kernel);
    let e_xx = windowed_mean(&xx, w, h, &kernel);
    let e_yy = windowed_mean(&yy, w, h, &kernel);
    let e_xy = windowed_mean(&xy, w, h, &kernel);

    let c1 = (K1 * L) * (K1 * L);
    let c2 = (K2 * L) * (K2 * L);
    let mut sum = 0.0;
    for i in 0..mu_x.len() {
        let (mx, my) = (mu_x[i], mu_y[i]);
        let var_x = e_xx[i] - mx * mx;
        let var_y = e_yy[i] - my * my;
        let cov = e_xy[i] - mx * my;
        sum += ((2.0 * mx * my + c1) * (2.0 * cov + c2))
            / ((mx * mx + my * my + c1) * (var_x + var_y + c2));
    }
    Ok(sum / mu_x.len() as f64)
}

fn gaussian_kernel() -> [f64; WINDOW] {
    let mut k = [0.0; WINDOW];
    let center = (WINDOW / 2) as f64;
    let mut total = 0.0;
    for (i, v) in k.iter_mut().enumerate() {
        let d = i as f64 - center;
        *v = (-d * d / (2.0 * SIGMA * SIGMA)).exp();
        total += *v;
    }
    for v in k.iter_mut() {
        *v /= total;
    }
    k
}

/// Separable valid-region convolution with the (outer product) Gaussian:
/// returns `(w - 10) * (h - 10)` weighted local means.
fn windowed_mean(data: &[f64], w: usize, h: usize, kernel: &[f64; WINDOW]) -> Vec<f64> {
    let out_w = w - WINDOW + 1;
    let out_h = h - WINDOW + 1;
    let mut rows = vec![0.0; out_w * h];
    for r in 0..h {
        for c in 0..out_w {
            let mut acc = 0.0;
            for (k, wk) in kernel.iter().enumerate() {
                acc += wk * data[r * w + c + k];
            }
            rows[r * out_w + c] = acc;
        }
    }
    let mut out = vec![0.0; out_w * out_h];
    for r in 0..out_h {
        for c in 0..out_w {
            let mut acc = 0.0;
            for (k, wk) in kernel.iter().enumerate() {
                acc += wk * rows[(r + k) * out_w + c];
            }
            out[r * out_w + c] = acc;
        }
    }
    out
}
