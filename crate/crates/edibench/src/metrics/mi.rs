//! Mutual information over a 256x256 joint intensity histogram.
//!
//! Intensities are rounded to integer bins only inside this module; the
//! rest of the pipeline works on unrounded reals.

use crate::error::Result;
use crate::io::encode_u8;
use crate::raster::RasterImage;

use super::check_pair;

/// `MI = H(A) + H(B) - H(A, B)` in bits, from the joint histogram of
/// rounded-and-clamped intensities. Empty bins contribute nothing.
pub fn mutual_information(reference: &RasterImage, test: &RasterImage) -> Result<f64> {
    check_pair(reference, test)?;
    let mut joint = vec![0u32; 256 * 256];
    for (a, b) in reference.samples().iter().zip(test.samples()) {
        let ia = encode_u8(*a) as usize;
        let ib = encode_u8(*b) as usize;
        joint[ia * 256 + ib] += 1;
    }
    let n = reference.samples().len() as f64;

    let mut marg_a = [0u32; 256];
    let mut marg_b = [0u32; 256];
    for ia in 0..256 {
        for ib in 0..256 {
            let c = joint[ia * 256 + ib];
            marg_a[ia] += c;
            marg_b[ib] += c;
        }
    }

    let h = |counts: &mut dyn Iterator<Item = u32>| -> f64 {
        counts
            .filter(|&c| c > 0)
            .map(|c| {
                let p = c as f64 / n;
                -p * p.log2()
            })
            .sum()
    };
    let h_a = h(&mut marg_a.iter().copied());
    let h_b = h(&mut marg_b.iter().copied());
    let h_ab = h(&mut joint.iter().copied());
    Ok(h_a + h_b - h_ab)
}

/// Shannon entropy in bits of the 256-bin histogram of rounded
/// intensities.
pub fn marginal_entropy(img: &RasterImage) -> f64 {
    let mut hist = [0u32; 256];
    for &s in img.samples() {
        hist[encode_u8(s) as usize] += 1;
    }
    let n = img.samples().len() as f64;
    hist.iter()
        .filter(|&&c| c > 0)
        .map(|&c| {
            let p = c as f64 / n;
            -p * p.log2()
        })
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binary_image_with_itself_is_one_bit() {
        // Half zeros, half 255s: the joint histogram has two bins of
        // probability one half each, so H(A) = H(B) = H(A,B) = 1 bit and
        // MI = 1.
        let img =
            RasterImage::from_fn(8, 8, |r, _| if r < 4 { 0.0 } else { 255.0 }).unwrap();
        let mi = mutual_information(&img, &img).unwrap();
        assert!((mi - 1.0).abs() < 1e-12, "{mi}");
    }

    #[test]
    fn constant_image_carries_no_information() {
        let a = RasterImage::constant(8, 8, 42.0).unwrap();
        let b = RasterImage::from_fn(8, 8, |r, c| ((r * 31 + c * 7) % 256) as f64).unwrap();
        assert_eq!(mutual_information(&a, &b).unwrap(), 0.0);
        assert_eq!(mutual_information(&b, &a).unwrap(), 0.0);
    }

    #[test]
    fn symmetric_in_arguments() {
        let a = RasterImage::from_fn(12, 9, |r, c| ((r * 37 + c * 3) % 251) as f64).unwrap();
        let b = RasterImage::from_fn(12, 9, |r, c| ((r * 5 + c * 41) % 239) as f64).unwrap();
        let ab = mutual_information(&a, &b).unwrap();
        let ba = mutual_information(&b, &a).unwrap();
        assert!((ab - ba).abs() <= 1e-12);
    }

    #[test]
    fn self_information_equals_marginal_entropy() {
        let a = RasterImage::from_fn(16, 10, |r, c| ((r * r + c * 13) % 256) as f64).unwrap();
        let mi = mutual_information(&a, &a).unwrap();
        let h = marginal_entropy(&a);
        assert!((mi - h).abs() <= 1e-12, "{mi} vs {h}");
    }

    #[test]
    fn rounding_happens_only_in_the_histogram() {
        // 0.4 and 0.6 land in bins 0 and 1; the in-memory samples are
        // untouched by construction.
        let a = RasterImage::new(2, 2, 1, vec![0.4, 0.6, 0.4, 0.6]).unwrap();
        let b = RasterImage::new(2, 2, 1, vec![0.0, 1.0, 0.0, 1.0]).unwrap();
        let mi = mutual_information(&a, &b).unwrap();
        assert!((mi - 1.0).abs() < 1e-12);
    }
}
