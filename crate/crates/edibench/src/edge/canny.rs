//! Canny detector: Gaussian smoothing, Sobel gradients, direction-quantized
//! non-maximum suppression and percentile-driven hysteresis.

use crate::error::{Error, Result};
use crate::raster::RasterImage;

use super::{CannyParams, EdgeMap};

/// Runs the detector on a single-channel image of at least 8x8 pixels.
///
/// Edges come out one pixel wide: suppression keeps a pixel only when it
/// is not below its backward neighbor and strictly above its forward
/// neighbor along the quantized gradient direction, so plateau ties keep
/// exactly one side. Hysteresis seeds at the automatic high threshold and
/// grows 8-connected through everything at or above the low threshold.
pub fn canny(img: &RasterImage, params: &CannyParams) -> Result<EdgeMap> {
    if img.channels() != 1 {
        return Err(Error::NotSingleChannel(img.channels()));
    }
    if img.width() < 8 || img.height() < 8 {
        return Err(Error::TooSmall {
            width: img.width(),
            height: img.height(),
            min_width: 8,
            min_height: 8,
        });
    }
    params.validate()?;

    let (w, h) = (img.width(), img.height());
    let smoothed = gaussian_smooth(img, params.sigma);

    // Sobel gradients with replicate padding.
    let mut gx = vec![0.0; w * h];
    let mut gy = vec![0.0; w * h];
    let mut magnitude = vec![0.0; w * h];
    for r in 0..h {
        for c in 0..w {
            let at =
                |dr: isize, dc: isize| smoothed.gray_clamped(r as isize + dr, c as isize + dc);
            let dx = (at(-1, 1) + 2.0 * at(0, 1) + at(1, 1))
                - (at(-1, -1) + 2.0 * at(0, -1) + at(1, -1));
            let dy = (at(1, -1) + 2.0 * at(1, 0) + at(1, 1))
                - (at(-1, -1) + 2.0 * at(-1, 0) + at(-1, 1));
            let i = r * w + c;
            gx[i] = dx;
            gy[i] = dy;
            magnitude[i] = dx.hypot(dy);
        }
    }

    // Automatic thresholds from the nonzero magnitude distribution.
    let mut nonzero: Vec<f64> = magnitude.iter().copied().filter(|&m| m > 0.0).collect();
    if nonzero.is_empty() {
        return EdgeMap::new(w, h, vec![false; w * h]);
    }
    nonzero.sort_by(|a, b| a.total_cmp(b));
    let rank = ((params.high_percentile * nonzero.len() as f64).ceil() as usize)
        .clamp(1, nonzero.len());
    let high = nonzero[rank - 1];
    let low = params.low_ratio * high;

    let thinned = non_maximum_suppression(&magnitude, &gx, &gy, w, h);
    Ok(hysteresis(&thinned, w, h, high, low))
}

fn gaussian_smooth(img: &RasterImage, sigma: f64) -> RasterImage {
    let radius = (3.0 * sigma).ceil() as isize;
    let mut kernel = Vec::with_capacity((2 * radius + 1) as usize);
    let mut total = 0.0;
    for k in -radius..=radius {
        let v = (-(k as f64) * (k as f64) / (2.0 * sigma * sigma)).exp();
        kernel.push(v);
        total += v;
    }
    for v in kernel.iter_mut() {
        *v /= total;
    }

    let (w, h) = (img.width(), img.height());
    let mut rows = vec![0.0; w * h];
    for r in 0..h {
        for c in 0..w {
            let mut acc = 0.0;
            for (k, wk) in kernel.iter().enumerate() {
                acc += wk * img.gray_clamped(r as isize, c as isize + k as isize - radius);
            }
            rows[r * w + c] = acc;
        }
    }
    let row_img = RasterImage::new(w, h, 1, rows).expect("dimensions preserved");
    let mut cols = vec![0.0; w * h];
    for r in 0..h {
        for c in 0..w {
            let mut acc = 0.0;
            for (k, wk) in kernel.iter().enumerate() {
                acc += wk * row_img.gray_clamped(r as isize + k as isize - radius, c as isize);
            }
            cols[r * w + c] = acc;
        }
    }
    RasterImage::new(w, h, 1, cols).expect("dimensions preserved")
}

/// Quantizes the gradient into four directions and keeps local maxima.
/// The backward/forward comparison is `>=` / `>`, breaking plateau ties
/// deterministically toward the forward side.
fn non_maximum_suppression(
    magnitude: &[f64],
    gx: &[f64],
    gy: &[f64],
    w: usize,
    h: usize,
) -> Vec<f64> {
    let mut out = vec![0.0; w * h];
    for r in 0..h {
        for c in 0..w {
            let i = r * w + c;
            let m = magnitude[i];
            if m == 0.0 {
                continue;
            }
            let mut angle = gy[i].atan2(gx[i]).to_degrees();
            if angle < 0.0 {
                angle += 180.0;
            }
            // Offsets of the backward/forward neighbors along the
            // gradient direction.
            let (dr, dc) = if !(22.5..157.5).contains(&angle) {
                (0isize, 1isize)
            } else if angle < 67.5 {
                (1, 1)
            } else if angle < 112.5 {
                (1, 0)
            } else {
                (1, -1)
            };
            let sample = |rr: isize, cc: isize| -> f64 {
                if rr < 0 || cc < 0 || rr >= h as isize || cc >= w as isize {
                    0.0
                } else {
                    magnitude[rr as usize * w + cc as usize]
                }
            };
            let backward = sample(r as isize - dr, c as isize - dc);
            let forward = sample(r as isize + dr, c as isize + dc);
            if m >= backward && m > forward {
                out[i] = m;
            }
        }
    }
    out
}

fn hysteresis(thinned: &[f64], w: usize, h: usize, high: f64, low: f64) -> EdgeMap {
    let mut mask = vec![false; w * h];
    let mut stack = Vec::new();
    for i in 0..w * h {
        if thinned[i] >= high && !mask[i] {
            mask[i] = true;
            stack.push(i);
            while let Some(j) = stack.pop() {
                let (r, c) = (j / w, j % w);
                for dr in -1isize..=1 {
                    for dc in -1isize..=1 {
                        if dr == 0 && dc == 0 {
                            continue;
                        }
                        let rr = r as isize + dr;
                        let cc = c as isize + dc;
                        if rr < 0 || cc < 0 || rr >= h as isize || cc >= w as isize {
                            continue;
                        }
                        let k = rr as usize * w + cc as usize;
                        if !mask[k] && thinned[k] >= low {
                            mask[k] = true;
                            stack.push(k);
                        }
                    }
                }
            }
        }
    }
    EdgeMap::new(w, h, mask).expect("mask dimensions are valid")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_image_has_no_edges() {
        let img = RasterImage::constant(16, 16, 99.0).unwrap();
        let map = canny(&img, &CannyParams::default()).unwrap();
        assert_eq!(map.count(), 0);
    }

    #[test]
    fn vertical_step_yields_one_single_pixel_column() {
        let img =
            RasterImage::from_fn(16, 16, |_, c| if c < 8 { 0.0 } else { 255.0 }).unwrap();
        let map = canny(&img, &CannyParams::default()).unwrap();
        let mut cols = std::collections::BTreeSet::new();
        let mut rows = Vec::new();
        for r in 0..16 {
            for c in 0..16 {
                if map.at(r, c) {
                    cols.insert(c);
                    rows.push(r);
                }
            }
        }
        assert_eq!(cols.len(), 1, "expected one column, got {cols:?}");
        let col = *cols.iter().next().unwrap();
        assert!(col == 7 || col == 8, "edge column {col} off the step");
        rows.sort_unstable();
        assert_eq!(rows, (0..16).collect::<Vec<_>>(), "column not contiguous");
    }

    #[test]
    fn weak_isolated_pixels_are_suppressed() {
        // A strong step sets the thresholds; two faint isolated bumps
        // stay below the low threshold and must not appear.
        let img = RasterImage::from_fn(24, 24, |r, c| {
            let base = if c < 12 { 0.0 } else { 255.0 };
            if (r, c) == (4, 4) || (r, c) == (20, 5) {
                base + 2.0
            } else {
                base
            }
        })
        .unwrap();
        let map = canny(&img, &CannyParams::default()).unwrap();
        for r in 0..24 {
            for c in 0..24 {
                if map.at(r, c) {
                    assert!(
                        (10..=13).contains(&c),
                        "edge pixel ({r},{c}) outside the step band"
                    );
                }
            }
        }
    }

    #[test]
    fn thinness_along_the_gradient() {
        // No edge pixel may have edge neighbors on both sides along its
        // own quantized gradient direction.
        let img = RasterImage::from_fn(32, 32, |r, c| {
            200.0 / (1.0 + ((r as f64 - 16.0).powi(2) + (c as f64 - 16.0).powi(2)) / 40.0)
        })
        .unwrap();
        let map = canny(&img, &CannyParams::default()).unwrap();
        assert!(map.count() > 0);
        // Recompute directions the same way the detector quantizes them.
        let smoothed = gaussian_smooth(&img, CannyParams::default().sigma);
        for r in 1..31usize {
            for c in 1..31usize {
                if !map.at(r, c) {
                    continue;
                }
                let at = |dr: isize, dc: isize| {
                    smoothed.gray_clamped(r as isize + dr, c as isize + dc)
                };
                let dx = (at(-1, 1) + 2.0 * at(0, 1) + at(1, 1))
                    - (at(-1, -1) + 2.0 * at(0, -1) + at(1, -1));
                let dy = (at(1, -1) + 2.0 * at(1, 0) + at(1, 1))
                    - (at(-1, -1) + 2.0 * at(-1, 0) + at(-1, 1));
                let mut angle = dy.atan2(dx).to_degrees();
                if angle < 0.0 {
                    angle += 180.0;
                }
                let (dr, dc) = if !(22.5..157.5).contains(&angle) {
                    (0isize, 1isize)
                } else if angle < 67.5 {
                    (1, 1)
                } else if angle < 112.5 {
                    (1, 0)
                } else {
                    (1, -1)
                };
                let back = map.at((r as isize - dr) as usize, (c as isize - dc) as usize);
                let fwd = map.at((r as isize + dr) as usize, (c as isize + dc) as usize);
                assert!(
                    !(back && fwd),
                    "3-pixel run along the gradient at ({r},{c})"
                );
            }
        }
    }

    #[test]
    fn small_images_are_rejected() {
        let img = RasterImage::constant(7, 16, 0.0).unwrap();
        assert!(matches!(
            canny(&img, &CannyParams::default()),
            Err(Error::TooSmall { .. })
        ));
    }
}
