//! Dense 4x4 solves for the covariance-based interpolator.

pub type Mat4 = [[f64; 4]; 4];
pub type Vec4 = [f64; 4];

/// Solves `A x = b` by Gaussian elimination with partial pivoting.
/// Returns `None` when a pivot collapses to (near) zero.
pub fn solve4(a: &Mat4, b: &Vec4) -> Option<Vec4> {
    let mut m = *a;
    let mut rhs = *b;
    for col in 0..4 {
        let mut pivot = col;
        for row in col + 1..4 {
            if m[row][col].abs() > m[pivot][col].abs() {
                pivot = row;
            }
        }
        if m[pivot][col].abs() < 1e-300 {
            return None;
        }
        m.swap(col, pivot);
        rhs.swap(col, pivot);
        for row in col + 1..4 {
            let f = m[row][col] / m[col][col];
            for k in col..4 {
                m[row][k] -= f * m[col][k];
            }
            rhs[row] -= f * rhs[col];
        }
    }
    let mut x = [0.0; 4];
    for row in (0..4).rev() {
        let mut acc = rhs[row];
        for k in row + 1..4 {
            acc -= m[row][k] * x[k];
        }
        x[row] = acc / m[row][row];
    }
    x.iter().all(|v| v.is_finite()).then_some(x)
}

/// Inverts `A` by Gauss-Jordan elimination with partial pivoting.
pub fn invert4(a: &Mat4) -> Option<Mat4> {
    let mut m = *a;
    let mut inv: Mat4 = [[0.0; 4]; 4];
    for (i, row) in inv.iter_mut().enumerate() {
        row[i] = 1.0;
    }
    for col in 0..4 {
        let mut pivot = col;
        for row in col + 1..4 {
            if m[row][col].abs() > m[pivot][col].abs() {
                pivot = row;
            }
        }
        if m[pivot][col].abs() < 1e-300 {
            return None;
        }
        m.swap(col, pivot);
        inv.swap(col, pivot);
        let d = m[col][col];
        for k in 0..4 {
            m[col][k] /= d;
            inv[col][k] /= d;
        }
        for row in 0..4 {
            if row == col {
                continue;
            }
            let f = m[row][col];
            if f == 0.0 {
                continue;
            }
            for k in 0..4 {
                m[row][k] -= f * m[col][k];
                inv[row][k] -= f * inv[col][k];
            }
        }
    }
    inv.iter()
        .flatten()
        .all(|v| v.is_finite())
        .then_some(inv)
}

fn norm1(a: &Mat4) -> f64 {
    (0..4)
        .map(|c| (0..4).map(|r| a[r][c].abs()).sum::<f64>())
        .fold(0.0, f64::max)
}

/// 1-norm condition number estimate `||A||_1 * ||A^-1||_1`.
/// Singular matrices report infinity.
pub fn cond1(a: &Mat4) -> f64 {
    match invert4(a) {
        Some(inv) => norm1(a) * norm1(&inv),
        None => f64::INFINITY,
    }
}

/// `A x - b`.
pub fn residual4(a: &Mat4, x: &Vec4, b: &Vec4) -> Vec4 {
    let mut r = [0.0; 4];
    for i in 0..4 {
        r[i] = a[i].iter().zip(x).map(|(m, v)| m * v).sum::<f64>() - b[i];
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn solves_identity() {
        let mut a: Mat4 = [[0.0; 4]; 4];
        for (i, row) in a.iter_mut().enumerate() {
            row[i] = 1.0;
        }
        let b = [1.0, 2.0, 3.0, 4.0];
        assert_eq!(solve4(&a, &b).unwrap(), b);
    }

    #[test]
    fn solve_matches_known_system() {
        let a: Mat4 = [
            [4.0, 1.0, 0.0, 2.0],
            [1.0, 5.0, 1.0, 0.0],
            [0.0, 1.0, 6.0, 1.5],
            [2.0, 0.0, 1.5, 8.0],
        ];
        let x_true = [1.0, -2.0, 0.5, 3.0];
        let mut b = [0.0; 4];
        for i in 0..4 {
            b[i] = a[i].iter().zip(&x_true).map(|(m, v)| m * v).sum();
        }
        let x = solve4(&a, &b).unwrap();
        for (got, want) in x.iter().zip(&x_true) {
            assert!((got - want).abs() < 1e-12);
        }
        let r = residual4(&a, &x, &b);
        assert!(r.iter().all(|v| v.abs() < 1e-10));
    }

    #[test]
    fn singular_matrix_is_rejected() {
        let a: Mat4 = [
            [1.0, 2.0, 3.0, 4.0],
            [2.0, 4.0, 6.0, 8.0],
            [0.0, 1.0, 0.0, 1.0],
            [1.0, 0.0, 1.0, 0.0],
        ];
        assert!(solve4(&a, &[1.0, 2.0, 3.0, 4.0]).is_none());
        assert!(cond1(&a).is_infinite());
    }

    #[test]
    fn condition_of_identity_is_one() {
        let mut a: Mat4 = [[0.0; 4]; 4];
        for (i, row) in a.iter_mut().enumerate() {
            row[i] = 1.0;
        }
        assert!((cond1(&a) - 1.0).abs() < 1e-12);
    }
}
