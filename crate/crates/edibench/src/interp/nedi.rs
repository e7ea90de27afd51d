//! NEDI: least-squares neighbor weights from local covariance.
//!
//! For every interpolated site the surrounding low-resolution window is
//! treated as training data: each training pixel is regressed on its own
//! four diagonal (or cardinal, for the rotated second step) neighbors, and
//! by geometric duality the fitted weights transfer to the half-spaced
//! high-resolution neighbors of the site. Flat windows and ill-conditioned
//! normal equations fall back to the bilinear rule.

use crate::linalg::{cond1, solve4, Mat4, Vec4};
use crate::raster::RasterImage;

use super::{InterpConfig, Lattice};

/// One 2x NEDI pass, extended to `2H x 2W`.
pub fn nedi_pass(lr: &RasterImage, cfg: &InterpConfig) -> RasterImage {
    fill(lr, cfg).into_extended()
}

/// Training-neighbor offsets in the low-resolution frame.
const DIAG_OFFSETS: [(isize, isize); 4] = [(-1, -1), (-1, 1), (1, -1), (1, 1)];
const CARD_OFFSETS: [(isize, isize); 4] = [(-1, 0), (0, -1), (0, 1), (1, 0)];

pub(super) fn fill(lr: &RasterImage, cfg: &InterpConfig) -> Lattice {
    let mut lat = Lattice::seed(lr);
    let (h, w) = (lr.height(), lr.width());

    for i in 0..h - 1 {
        for j in 0..w - 1 {
            let corners = [
                lr.gray(i, j),
                lr.gray(i, j + 1),
                lr.gray(i + 1, j),
                lr.gray(i + 1, j + 1),
            ];
            let fallback = 0.25 * corners.iter().sum::<f64>();
            let v = match weights_at(lr, (i, j), &DIAG_OFFSETS, cfg) {
                Some(alpha) => dot4(&alpha, &corners),
                None => fallback,
            };
            lat.set(2 * i + 1, 2 * j + 1, v);
        }
    }

    // Second step: identical rule rotated 45 degrees. The four neighbors
    // of a cardinal site are one step up/left/right/down in the partially
    // filled lattice; training still happens on the LR grid where the
    // cardinal geometry is the half-scale dual.
    for r in 0..lat.hh {
        for c in 0..lat.ww {
            if (r + c) % 2 == 0 {
                continue;
            }
            let anchor = if r % 2 == 0 {
                (r / 2, (c - 1) / 2)
            } else {
                ((r - 1) / 2, c / 2)
            };
            let (ri, ci) = (r as isize, c as isize);
            let neighbors = [
                lat.get_parity_clamped(ri - 1, ci),
                lat.get_parity_clamped(ri, ci - 1),
                lat.get_parity_clamped(ri, ci + 1),
                lat.get_parity_clamped(ri + 1, ci),
            ];
            let fallback = if r % 2 == 0 {
                0.5 * (neighbors[1] + neighbors[2])
            } else {
                0.5 * (neighbors[0] + neighbors[3])
            };
            let v = match weights_at(lr, anchor, &CARD_OFFSETS, cfg) {
                Some(alpha) => dot4(&alpha, &neighbors),
                None => fallback,
            };
            lat.set(r, c, v);
        }
    }
    lat
}

#[inline]
fn dot4(a: &Vec4, b: &[f64; 4]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2] + a[3] * b[3]
}

/// Solves for the four neighbor weights at the window anchored at
/// `anchor`, or `None` when the variance gate or the condition cap says
/// the covariance estimate is not worth trusting.
fn weights_at(
    lr: &RasterImage,
    anchor: (usize, usize),
    offsets: &[(isize, isize); 4],
    cfg: &InterpConfig,
) -> Option<Vec4> {
    let (a, b, variance) = assemble_system(lr, anchor, offsets, cfg.nedi_window);
    if variance < cfg.nedi_variance_threshold {
        return None;
    }
    if cond1(&a) > cfg.nedi_condition_limit {
        return None;
    }
    solve4(&a, &b)
}

/// Accumulates the count-normalized normal equations `A alpha = b` over
/// the training window, along with the window variance used by the gate.
pub(crate) fn assemble_system(
    lr: &RasterImage,
    anchor: (usize, usize),
    offsets: &[(isize, isize); 4],
    window: usize,
) -> (Mat4, Vec4, f64) {
    let half = (window / 2) as isize;
    let (ai, aj) = (anchor.0 as isize, anchor.1 as isize);
    let mut a: Mat4 = [[0.0; 4]; 4];
    let mut b: Vec4 = [0.0; 4];
    let mut sum = 0.0;
    let mut sum_sq = 0.0;
    let count = (window * window) as f64;

    for p in ai - half + 1..=ai + half {
        for q in aj - half + 1..=aj + half {
            let y = lr.gray_clamped(p, q);
            sum += y;
            sum_sq += y * y;
            let mut n = [0.0; 4];
            for (k, (dr, dc)) in offsets.iter().enumerate() {
                n[k] = lr.gray_clamped(p + dr, q + dc);
            }
            for r in 0..4 {
                for c in 0..4 {
                    a[r][c] += n[r] * n[c];
                }
                b[r] += n[r] * y;
            }
        }
    }
    for row in a.iter_mut() {
        for v in row.iter_mut() {
            *v /= count;
        }
    }
    for v in b.iter_mut() {
        *v /= count;
    }
    let mean = sum / count;
    let variance = (sum_sq / count - mean * mean).max(0.0);
    (a, b, variance)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::edge::{canny, CannyParams};
    use crate::interp::InterpConfig;
    use crate::linalg::residual4;

    fn textured16() -> RasterImage {
        RasterImage::from_fn(16, 16, |r, c| {
            let a = ((r * 13 + c * 7) % 31) as f64;
            let b = ((r * 5 + c * 23) % 17) as f64;
            8.0 * a + 3.5 * b
        })
        .unwrap()
    }

    #[test]
    fn flat_region_falls_back_to_bilinear() {
        // A constant image has zero window variance everywhere.
        let lr = RasterImage::constant(8, 8, 100.0).unwrap();
        let up = nedi_pass(&lr, &InterpConfig::default());
        for &s in up.samples() {
            assert!((s - 100.0).abs() < 1e-12);
        }
    }

    #[test]
    fn solver_weights_satisfy_the_normal_equations() {
        let lr = textured16();
        let cfg = InterpConfig::default();
        let mut solved = 0;
        for &anchor in &[(4usize, 4usize), (6, 8), (8, 5), (10, 10), (5, 11)] {
            for offsets in [&DIAG_OFFSETS, &CARD_OFFSETS] {
                let (a, b, variance) =
                    assemble_system(&lr, anchor, offsets, cfg.nedi_window);
                assert!(variance > cfg.nedi_variance_threshold);
                if let Some(x) = solve4(&a, &b) {
                    let r = residual4(&a, &x, &b);
                    for v in r {
                        assert!(v.abs() <= 1e-8, "residual {v} too large at {anchor:?}");
                    }
                    solved += 1;
                }
            }
        }
        assert!(solved >= 6, "expected most systems to be solvable");
    }

    #[test]
    fn step_edge_along_45_degrees_stays_on_the_diagonal() {
        // Step across the main diagonal: bright above, dark below. The
        // upscaled edge map must hug the line r - c = -1 (the doubled
        // midline) with no staircase pixels wandering off it.
        let lr =
            RasterImage::from_fn(24, 24, |r, c| if (r as i64) < (c as i64) { 255.0 } else { 0.0 })
                .unwrap();
        let up = nedi_pass(&lr, &InterpConfig::default());
        let edges = canny(&up, &CannyParams::default()).unwrap();
        let mut count = 0;
        for r in 0..edges.height() {
            for c in 0..edges.width() {
                if edges.at(r, c) {
                    count += 1;
                    let off = r as i64 - c as i64 + 1;
                    assert!(
                        off.abs() <= 3,
                        "edge pixel ({r},{c}) is {off} rows off the diagonal"
                    );
                }
            }
        }
        assert!(count >= 20, "expected a populated diagonal edge, got {count}");
    }

    #[test]
    fn textured_input_respects_the_lattice() {
        let lr = textured16();
        let up = nedi_pass(&lr, &InterpConfig::default());
        for i in 0..16 {
            for j in 0..16 {
                assert_eq!(up.gray(2 * i, 2 * j), lr.gray(i, j));
            }
        }
    }
}
