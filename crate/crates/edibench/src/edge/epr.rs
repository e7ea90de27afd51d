//! Edge-preserving ratios between a standard and an interpolated edge map.

use crate::error::{Error, Result};

use super::EdgeMap;

fn check_dims(a: &EdgeMap, b: &EdgeMap) -> Result<()> {
    if a.width() != b.width() || a.height() != b.height() {
        return Err(Error::DimensionMismatch {
            a_width: a.width(),
            a_height: a.height(),
            b_width: b.width(),
            b_height: b.height(),
        });
    }
    Ok(())
}

/// Accuracy ratio `|EMs intersect EMi| / |EMs|`.
/// Fails when the reference map has no edges.
pub fn epr_accuracy(standard: &EdgeMap, interpolated: &EdgeMap) -> Result<f64> {
    check_dims(standard, interpolated)?;
    let reference = standard.count();
    if reference == 0 {
        return Err(Error::EmptyReferenceEdges);
    }
    let intersection = standard
        .mask()
        .iter()
        .zip(interpolated.mask())
        .filter(|(a, b)| **a && **b)
        .count();
    Ok(intersection as f64 / reference as f64)
}

/// Robustness ratio `|EMs intersect EMi| / |EMs union EMi|`.
/// Two empty maps agree vacuously and score 1.
pub fn epr_robustness(standard: &EdgeMap, interpolated: &EdgeMap) -> Result<f64> {
    check_dims(standard, interpolated)?;
    let mut intersection = 0usize;
    let mut union = 0usize;
    for (a, b) in standard.mask().iter().zip(interpolated.mask()) {
        if *a && *b {
            intersection += 1;
        }
        if *a || *b {
            union += 1;
        }
    }
    if union == 0 {
        return Ok(1.0);
    }
    Ok(intersection as f64 / union as f64)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn map_from(coords: &[(usize, usize)]) -> EdgeMap {
        let mut mask = vec![false; 64];
        for &(r, c) in coords {
            mask[r * 8 + c] = true;
        }
        EdgeMap::new(8, 8, mask).unwrap()
    }

    #[test]
    fn identical_maps_score_one() {
        let m = map_from(&[(1, 1), (2, 2), (3, 3), (4, 4)]);
        assert_eq!(epr_accuracy(&m, &m).unwrap(), 1.0);
        assert_eq!(epr_robustness(&m, &m).unwrap(), 1.0);
    }

    #[test]
    fn empty_interpolated_map() {
        let ems = map_from(&[(1, 1), (2, 2)]);
        let emi = map_from(&[]);
        assert_eq!(epr_accuracy(&ems, &emi).unwrap(), 0.0);
        assert_eq!(epr_robustness(&ems, &emi).unwrap(), 0.0);
    }

    #[test]
    fn empty_reference_behavior() {
        let empty = map_from(&[]);
        let emi = map_from(&[(5, 5)]);
        assert!(matches!(
            epr_accuracy(&empty, &emi),
            Err(Error::EmptyReferenceEdges)
        ));
        // Robustness stays defined: empty intersection over a nonempty
        // union, and 1.0 only for the doubly-empty case.
        assert_eq!(epr_robustness(&empty, &emi).unwrap(), 0.0);
        assert_eq!(epr_robustness(&empty, &empty).unwrap(), 1.0);
    }

    #[test]
    fn hand_counted_overlap() {
        // |EMs| = 10, overlap 6, plus 4 extras in EMi:
        // EPRa = 6/10, EPRr = 6/(10 + 4) = 6/14.
        let ems: Vec<(usize, usize)> = (0..10).map(|k| (k / 8, k % 8)).collect();
        let mut emi: Vec<(usize, usize)> = ems[..6].to_vec();
        emi.extend([(5, 5), (6, 6), (7, 7), (4, 4)]);
        let ems = map_from(&ems);
        let emi = map_from(&emi);
        let epra = epr_accuracy(&ems, &emi).unwrap();
        let eprr = epr_robustness(&ems, &emi).unwrap();
        assert!((epra - 0.6).abs() < 1e-15);
        assert!((eprr - 6.0 / 14.0).abs() < 1e-15);
    }

    #[test]
    fn robustness_is_symmetric_accuracy_is_not() {
        let a = map_from(&[(0, 0), (1, 1), (2, 2)]);
        let b = map_from(&[(1, 1), (2, 2), (3, 3), (4, 4)]);
        let rab = epr_robustness(&a, &b).unwrap();
        let rba = epr_robustness(&b, &a).unwrap();
        assert_eq!(rab, rba);
        let aab = epr_accuracy(&a, &b).unwrap();
        let aba = epr_accuracy(&b, &a).unwrap();
        assert!((aab - 2.0 / 3.0).abs() < 1e-15);
        assert!((aba - 0.5).abs() < 1e-15);
        assert_ne!(aab, aba);
    }

    #[test]
    fn robustness_never_exceeds_accuracy() {
        let ems = map_from(&[(0, 0), (1, 1), (2, 2), (3, 3)]);
        let emi = map_from(&[(0, 0), (3, 3), (5, 5)]);
        let epra = epr_accuracy(&ems, &emi).unwrap();
        let eprr = epr_robustness(&ems, &emi).unwrap();
        assert!(eprr <= epra);
    }

    #[test]
    fn dimension_mismatch() {
        let a = map_from(&[(0, 0)]);
        let b = EdgeMap::new(4, 4, vec![false; 16]).unwrap();
        assert!(epr_accuracy(&a, &b).is_err());
        assert!(epr_robustness(&a, &b).is_err());
    }
}
