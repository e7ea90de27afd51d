//! Bilinear lattice fill: the plain averaging baseline.

use crate::raster::RasterImage;

use super::Lattice;

/// One 2x bilinear pass, extended to `2H x 2W`.
///
/// Diagonal sites take the mean of their four diagonal neighbors,
/// cardinal sites the mean of their two aligned neighbors.
pub fn bilinear_pass(lr: &RasterImage) -> RasterImage {
    fill(lr).into_extended()
}

pub(super) fn fill(lr: &RasterImage) -> Lattice {
    let mut lat = Lattice::seed(lr);
    let (h, w) = (lr.height(), lr.width());

    for i in 0..h - 1 {
        for j in 0..w - 1 {
            let v = 0.25
                * (lr.gray(i, j) + lr.gray(i, j + 1) + lr.gray(i + 1, j) + lr.gray(i + 1, j + 1));
            lat.set(2 * i + 1, 2 * j + 1, v);
        }
    }
    for i in 0..h {
        for j in 0..w - 1 {
            lat.set(2 * i, 2 * j + 1, 0.5 * (lr.gray(i, j) + lr.gray(i, j + 1)));
        }
    }
    for i in 0..h - 1 {
        for j in 0..w {
            lat.set(2 * i + 1, 2 * j, 0.5 * (lr.gray(i, j) + lr.gray(i + 1, j)));
        }
    }
    lat
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    #[test]
    fn two_by_two_sites() {
        // Padded to 4x4 by replicating the 2x2 block so the pass
        // preconditions hold; the top-left quadrant is unaffected.
        let lr = RasterImage::from_fn(4, 4, |r, c| {
            let vals = [[0.0, 2.0], [4.0, 6.0]];
            vals[r.min(1)][c.min(1)]
        })
        .unwrap();
        let up = bilinear_pass(&lr);
        // 1-indexed site (2,2) is 0-indexed (1,1): mean of 0,2,4,6.
        assert_eq!(up.gray(1, 1), 3.0);
        // 1-indexed site (1,2) is 0-indexed (0,1): mean of 0,2.
        assert_eq!(up.gray(0, 1), 1.0);
    }

    /// Closed-form bilinear kernel evaluated at half-integer positions,
    /// written independently of the site-type fill above.
    fn oracle(lr: &RasterImage, out_r: usize, out_c: usize) -> f64 {
        let y = out_r as f64 / 2.0;
        let x = out_c as f64 / 2.0;
        let y0 = y.floor();
        let x0 = x.floor();
        let fy = y - y0;
        let fx = x - x0;
        let at = |r: f64, c: f64| lr.gray_clamped(r as isize, c as isize);
        (1.0 - fy) * (1.0 - fx) * at(y0, x0)
            + (1.0 - fy) * fx * at(y0, x0 + 1.0)
            + fy * (1.0 - fx) * at(y0 + 1.0, x0)
            + fy * fx * at(y0 + 1.0, x0 + 1.0)
    }

    #[test]
    fn matches_closed_form_kernel_on_random_input() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..20 {
            let lr =
                RasterImage::from_fn(5, 5, |_, _| rng.random_range(0.0..255.0)).unwrap();
            let up = bilinear_pass(&lr);
            for r in 0..up.height() {
                for c in 0..up.width() {
                    let want = oracle(&lr, r, c);
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
