//! FSIM: feature similarity from phase congruency and gradient magnitude.
//!
//! Phase congruency comes from a log-Gabor quadrature bank (4 scales at
//! wavelengths 6, 12, 24, 48 with sigmaOnf 0.55; 4 orientations with a
//! Gaussian angular spread), with the usual Rayleigh median noise floor
//! and frequency-spread weighting. The gradient term uses the Scharr
//! operator. Similarity maps are pooled weighted by the pointwise maximum
//! of the two phase congruency maps. Inputs whose smaller side exceeds
//! about 256 pixels are block-averaged down first, following the
//! reference implementation's preprocessing.

use std::f64::consts::PI;
use std::sync::Arc;

use rustfft::num_complex::Complex;
use rustfft::{Fft, FftPlanner};

use crate::error::{Error, Result};
use crate::raster::RasterImage;

use super::check_pair;

const NSCALE: usize = 4;
const NORIENT: usize = 4;
const MIN_WAVELENGTH: f64 = 6.0;
const MULT: f64 = 2.0;
const SIGMA_ONF: f64 = 0.55;
const D_THETA_ON_SIGMA: f64 = 1.2;
const K_NOISE: f64 = 2.0;
const CUTOFF: f64 = 0.5;
const G_SHARP: f64 = 10.0;
const EPS: f64 = 1e-4;
const T1: f64 = 0.85;
const T2: f64 = 160.0;

/// Feature similarity index in `[0, 1]`; 1 only for identical inputs.
pub fn fsim(reference: &RasterImage, test: &RasterImage) -> Result<f64> {
    check_pair(reference, test)?;
    let min_side = reference.width().min(reference.height());
    if min_side < 32 {
        return Err(Error::TooSmall {
            width: reference.width(),
            height: reference.height(),
            min_width: 32,
            min_height: 32,
        });
    }
    let factor = ((min_side as f64 / 256.0).round() as usize).max(1);
    let a = block_downsample(reference, factor);
    let b = block_downsample(test, factor);

    let pc1 = phase_congruency(&a);
    let pc2 = phase_congruency(&b);
    let g1 = scharr_magnitude(&a);
    let g2 = scharr_magnitude(&b);

    let mut num = 0.0;
    let mut den = 0.0;
    let mut sim_sum = 0.0;
    let n = pc1.len();
    for i in 0..n {
        let s_pc = (2.0 * pc1[i] * pc2[i] + T1) / (pc1[i] * pc1[i] + pc2[i] * pc2[i] + T1);
        let s_g = (2.0 * g1[i] * g2[i] + T2) / (g1[i] * g1[i] + g2[i] * g2[i] + T2);
        let pcm = pc1[i].max(pc2[i]);
        let s = s_pc * s_g;
        num += s * pcm;
        den += pcm;
        sim_sum += s;
    }
    // Featureless pair (for instance two constant images): fall back to
    // the unweighted mean similarity.
    if den <= 1e-12 {
        return Ok(sim_sum / n as f64);
    }
    Ok(num / den)
}

fn block_downsample(img: &RasterImage, f: usize) -> RasterImage {
    if f == 1 {
        return img.clone();
    }
    let (w, h) = (img.width(), img.height());
    let out_w = w.div_ceil(f);
    let out_h = h.div_ceil(f);
    let mut samples = Vec::with_capacity(out_w * out_h);
    for br in 0..out_h {
        for bc in 0..out_w {
            let mut acc = 0.0;
            let mut count = 0.0;
            for r in br * f..((br + 1) * f).min(h) {
                for c in bc * f..((bc + 1) * f).min(w) {
                    acc += img.gray(r, c);
                    count += 1.0;
                }
            }
            samples.push(acc / count);
        }
    }
    RasterImage::new(out_w, out_h, 1, samples).expect("block dimensions are valid")
}

fn scharr_magnitude(img: &RasterImage) -> Vec<f64> {
    let (w, h) = (img.width(), img.height());
    let mut out = Vec::with_capacity(w * h);
    for r in 0..h {
        for c in 0..w {
            let at = |dr: isize, dc: isize| img.gray_clamped(r as isize + dr, c as isize + dc);
            let gx = (3.0 * (at(-1, -1) - at(-1, 1))
                + 10.0 * (at(0, -1) - at(0, 1))
                + 3.0 * (at(1, -1) - at(1, 1)))
                / 16.0;
            let gy = (3.0 * (at(-1, -1) - at(1, -1))
                + 10.0 * (at(-1, 0) - at(1, 0))
                + 3.0 * (at(-1, 1) - at(1, 1)))
                / 16.0;
            out.push((gx * gx + gy * gy).sqrt());
        }
    }
    out
}

struct Fft2 {
    w: usize,
    h: usize,
    row_fwd: Arc<dyn Fft<f64>>,
    col_fwd: Arc<dyn Fft<f64>>,
    row_inv: Arc<dyn Fft<f64>>,
    col_inv: Arc<dyn Fft<f64>>,
}

impl Fft2 {
    fn new(w: usize, h: usize) -> Fft2 {
        let mut planner = FftPlanner::new();
        Fft2 {
            w,
            h,
            row_fwd: planner.plan_fft_forward(w),
            col_fwd: planner.plan_fft_forward(h),
            row_inv: planner.plan_fft_inverse(w),
            col_inv: planner.plan_fft_inverse(h),
        }
    }

    fn transpose(&self, buf: &[Complex<f64>]) -> Vec<Complex<f64>> {
        let mut out = vec![Complex::default(); buf.len()];
        for r in 0..self.h {
            for c in 0..self.w {
                out[c * self.h + r] = buf[r * self.w + c];
            }
        }
        out
    }

    fn transpose_back(&self, buf: &[Complex<f64>]) -> Vec<Complex<f64>> {
        let mut out = vec![Complex::default(); buf.len()];
        for c in 0..self.w {
            for r in 0..self.h {
                out[r * self.w + c] = buf[c * self.h + r];
            }
        }
        out
    }

    fn forward(&self, buf: &mut Vec<Complex<f64>>) {
        self.row_fwd.process(buf);
        let mut t = self.transpose(buf);
        self.col_fwd.process(&mut t);
        *buf = self.transpose_back(&t);
    }

    /// Unscaled inverse followed by the 1/(w*h) normalization.
    fn inverse(&self, buf: &mut Vec<Complex<f64>>) {
        self.row_inv.process(buf);
        let mut t = self.transpose(buf);
        self.col_inv.process(&mut t);
        *buf = self.transpose_back(&t);
        let scale = 1.0 / (self.w * self.h) as f64;
        for v in buf.iter_mut() {
            *v *= scale;
        }
    }
}

/// Signed frequency coordinate of FFT bin `i` out of `n`, in cycles per
/// pixel.
#[inline]
fn freq_coord(i: usize, n: usize) -> f64 {
    if i <= n / 2 {
        i as f64 / n as f64
    } else {
        (i as f64 - n as f64) / n as f64
    }
}

/// Phase congruency map, summed over the four orientations.
fn phase_congruency(img: &RasterImage) -> Vec<f64> {
    let (w, h) = (img.width(), img.height());
    let n = w * h;
    let fft2 = Fft2::new(w, h);

    let mut spectrum: Vec<Complex<f64>> =
        img.samples().iter().map(|&s| Complex::new(s, 0.0)).collect();
    fft2.forward(&mut spectrum);

    // Radial and angular frequency-domain grids.
    let mut radius = vec![0.0; n];
    let mut sin_theta = vec![0.0; n];
    let mut cos_theta = vec![0.0; n];
    for r in 0..h {
        let fy = freq_coord(r, h);
        for c in 0..w {
            let fx = freq_coord(c, w);
            let i = r * w + c;
            let rad = (fx * fx + fy * fy).sqrt();
            radius[i] = rad;
            if rad > 0.0 {
                sin_theta[i] = -fy / rad;
                cos_theta[i] = fx / rad;
            } else {
                sin_theta[i] = 0.0;
                cos_theta[i] = 1.0;
            }
        }
    }
    radius[0] = 1.0; // avoid log(0) at DC; the DC gain is zeroed below

    let lowpass: Vec<f64> = radius
        .iter()
        .map(|&r| 1.0 / (1.0 + (r / 0.45).powi(30)))
        .collect();

    let log_sigma = SIGMA_ONF.ln();
    let mut radial = Vec::with_capacity(NSCALE);
    for s in 0..NSCALE {
        let f0 = 1.0 / (MIN_WAVELENGTH * MULT.powi(s as i32));
        let mut g: Vec<f64> = radius
            .iter()
            .zip(&lowpass)
            .map(|(&r, &lp)| {
                let lr = (r / f0).ln();
                (-lr * lr / (2.0 * log_sigma * log_sigma)).exp() * lp
            })
            .collect();
        g[0] = 0.0;
        radial.push(g);
    }

    let theta_sigma = PI / NORIENT as f64 / D_THETA_ON_SIGMA;
    let mut pc = vec![0.0; n];

    for o in 0..NORIENT {
        let angle = o as f64 * PI / NORIENT as f64;
        let (sin_a, cos_a) = angle.sin_cos();
        let spread: Vec<f64> = (0..n)
            .map(|i| {
                let ds = sin_theta[i] * cos_a - cos_theta[i] * sin_a;
                let dc = cos_theta[i] * cos_a + sin_theta[i] * sin_a;
                let dt = ds.atan2(dc).abs();
                (-dt * dt / (2.0 * theta_sigma * theta_sigma)).exp()
            })
            .collect();

        let mut responses: Vec<Vec<Complex<f64>>> = Vec::with_capacity(NSCALE);
        let mut sum_e = vec![0.0; n];
        let mut sum_o = vec![0.0; n];
        let mut sum_an = vec![0.0; n];
        let mut max_an = vec![0.0f64; n];
        for s in 0..NSCALE {
            let mut buf: Vec<Complex<f64>> = (0..n)
                .map(|i| spectrum[i] * (radial[s][i] * spread[i]))
                .collect();
            fft2.inverse(&mut buf);
            for i in 0..n {
                let amp = buf[i].norm();
                sum_e[i] += buf[i].re;
                sum_o[i] += buf[i].im;
                sum_an[i] += amp;
                max_an[i] = max_an[i].max(amp);
            }
            responses.push(buf);
        }

        // Rayleigh noise floor estimated from the smallest-scale
        // amplitude median, scaled by the geometric falloff over scales.
        let mut amps: Vec<f64> = responses[0].iter().map(|v| v.norm()).collect();
        amps.sort_by(|a, b| a.total_cmp(b));
        let median = if n % 2 == 1 {
            amps[n / 2]
        } else {
            0.5 * (amps[n / 2 - 1] + amps[n / 2])
        };
        let tau = median / (4.0f64.ln()).sqrt();
        let total_tau = tau * (1.0 - MULT.powi(-(NSCALE as i32))) / (1.0 - 1.0 / MULT);
        let noise_mean = total_tau * (PI / 2.0).sqrt();
        let noise_sigma = total_tau * ((4.0 - PI) / 2.0).sqrt();
        let threshold = noise_mean + K_NOISE * noise_sigma;

        for i in 0..n {
            let x_energy = (sum_e[i] * sum_e[i] + sum_o[i] * sum_o[i]).sqrt() + EPS;
            let mean_e = sum_e[i] / x_energy;
            let mean_o = sum_o[i] / x_energy;
            let mut energy = 0.0;
            for resp in &responses {
                let e = resp[i].re;
                let od = resp[i].im;
                energy += e * mean_e + od * mean_o - (e * mean_o - od * mean_e).abs();
            }
            energy = (energy - threshold).max(0.0);
            let width = (sum_an[i] / (max_an[i] + EPS) - 1.0) / (NSCALE - 1) as f64;
            let weight = 1.0 / (1.0 + (G_SHARP * (CUTOFF - width)).exp());
            pc[i] += weight * energy / (sum_an[i] + EPS);
        }
    }
    pc
}
