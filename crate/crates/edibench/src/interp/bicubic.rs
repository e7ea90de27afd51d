//! Bicubic lattice fill: cubic convolution with a = -1/2.

use crate::raster::RasterImage;

use super::{diag135_taps, diag45_taps, tap4, Lattice};

/// One 2x bicubic pass, extended to `2H x 2W`.
///
/// Cardinal sites apply the half-sample 4-tap kernel along their row or
/// column of LR pixels; diagonal sites apply it along both diagonals and
/// average the two estimates. Boundaries replicate.
pub fn bicubic_pass(lr: &RasterImage) -> RasterImage {
    fill(lr).into_extended()
}

pub(super) fn fill(lr: &RasterImage) -> Lattice {
    let mut lat = Lattice::seed(lr);
    let (h, w) = (lr.height(), lr.width());

    for i in 0..h - 1 {
        for j in 0..w - 1 {
            let along45 = tap4(diag45_taps(lr, i as isize, j as isize));
            let along135 = tap4(diag135_taps(lr, i as isize, j as isize));
            lat.set(2 * i + 1, 2 * j + 1, 0.5 * (along45 + along135));
        }
    }
    for i in 0..h {
        for j in 0..w - 1 {
            let (ii, jj) = (i as isize, j as isize);
            let v = tap4([
                lr.gray_clamped(ii, jj - 1),
                lr.gray_clamped(ii, jj),
                lr.gray_clamped(ii, jj + 1),
                lr.gray_clamped(ii, jj + 2),
            ]);
            lat.set(2 * i, 2 * j + 1, v);
        }
    }
    for i in 0..h - 1 {
        for j in 0..w {
            let (ii, jj) = (i as isize, j as isize);
            let v = tap4([
                lr.gray_clamped(ii - 1, jj),
                lr.gray_clamped(ii, jj),
                lr.gray_clamped(ii + 1, jj),
                lr.gray_clamped(ii + 2, jj),
            ]);
            lat.set(2 * i + 1, 2 * j, v);
        }
    }
    lat
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    #[test]
    fn reproduces_linear_ramps_on_interior_sites() {
        // Linear precision of the cubic kernel holds wherever no tap is
        // clamped by the replicate boundary.
        let lr = RasterImage::from_fn(6, 6, |r, c| 10.0 * (r + 1) as f64 + 3.0 * c as f64)
            .unwrap();
        let up = bicubic_pass(&lr);
        for r in 2..2 * lr.height() - 4 {
            for c in 2..2 * lr.width() - 4 {
                let want = 10.0 * (r as f64 / 2.0 + 1.0) + 3.0 * (c as f64 / 2.0);
                assert!(
                    (up.gray(r, c) - want).abs() < 1e-12,
                    "({r},{c}): {} vs {want}",
                    up.gray(r, c)
                );
            }
        }
    }

    #[test]
    fn half_sample_weights_on_a_spike_row() {
        // Rows of [0, 0, 16, 0, 0]; the midpoint between entries 2 and 3
        // sees taps (0, 0, 16, 0) and must evaluate to 16 * 9/16 = 9.
        let lr = RasterImage::from_fn(5, 4, |_, c| if c == 2 { 16.0 } else { 0.0 }).unwrap();
        let up = bicubic_pass(&lr);
        assert!((up.gray(0, 3) - 9.0).abs() < 1e-12);
    }

    /// Kernel-evaluated oracle: weights are derived numerically from the
    /// cubic convolution kernel instead of the hardcoded table, then
    /// applied along the per-site-type point lists.
    mod oracle {
        use crate::raster::RasterImage;

        fn kernel(x: f64) -> f64 {
            const A: f64 = -0.5;
            let x = x.abs();
            if x <= 1.0 {
                (A + 2.0) * x.powi(3) - (A + 3.0) * x.powi(2) + 1.0
            } else if x < 2.0 {
                A * x.powi(3) - 5.0 * A * x.powi(2) + 8.0 * A * x - 4.0 * A
            } else {
                0.0
            }
        }

        fn line4(lr: &RasterImage, start: (isize, isize), step: (isize, isize)) -> f64 {
            // Points at parameters -1, 0, 1, 2; evaluation at 0.5.
            (-1..=2)
                .map(|t| {
                    let w = kernel(t as f64 - 0.5);
                    let r = start.0 + t * step.0;
                    let c = start.1 + t * step.1;
                    w * lr.gray_clamped(r, c)
                })
                .sum()
        }

        pub fn eval(lr: &RasterImage, out_r: usize, out_c: usize) -> f64 {
            let hh = 2 * lr.height() - 2;
            let ww = 2 * lr.width() - 2;
            // The extended border replicates the last natural row/column.
            let r = out_r.min(hh - 1);
            let c = out_c.min(ww - 1);
            match (r % 2, c % 2) {
                (0, 0) => lr.gray(r / 2, c / 2),
                (0, 1) => line4(lr, (r as isize / 2, c as isize / 2), (0, 1)),
                (1, 0) => line4(lr, (r as isize / 2, c as isize / 2), (1, 0)),
                _ => {
                    let i = r as isize / 2;
                    let j = c as isize / 2;
                    0.5 * (line4(lr, (i, j), (1, 1)) + line4(lr, (i, j + 1), (1, -1)))
                }
            }
        }
    }

    #[test]
    fn matches_kernel_oracle_on_random_input() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(23);
        for _ in 0..20 {
            let lr =
                RasterImage::from_fn(6, 6, |_, _| rng.random_range(0.0..255.0)).unwrap();
            let up = bicubic_pass(&lr);
            for r in 0..up.height() {
                for c in 0..up.width() {
                    let want = oracle::eval(&lr, r, c);
                    let got = up.gray(r, c);
                    assert!(
                        (got - want).abs() <= 1e-9,
                        "site ({r},{c}): {got} vs {want}"
                    );
                }
            }
        }
    }
}
