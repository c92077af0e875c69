//! Dense linear solves: exact over the rationals, and a float fallback.

use num_rational::BigRational;
use num_traits::{One, Zero};

pub type Matrix = Vec<Vec<BigRational>>;

/// Solves `A x = b` exactly by Gauss–Jordan elimination. `None` if singular.
pub fn solve_exact(a: &Matrix, b: &[BigRational]) -> Option<Vec<BigRational>> {
    let n = a.len();
    let mut m: Vec<Vec<BigRational>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    eliminate(&mut m, n)?;
    Some(m.into_iter().map(|mut r| r.pop().unwrap()).collect())
}

/// Exact inverse. `None` if singular.
pub fn invert_exact(a: &Matrix) -> Option<Matrix> {
    let n = a.len();
    let mut m: Vec<Vec<BigRational>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }));
            r
        })
        .collect();
    eliminate(&mut m, n)?;
    Some(m.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Reduces the left `n` columns of `m` to the identity.
fn eliminate(m: &mut [Vec<BigRational>], n: usize) -> Option<()> {
    for col in 0..n {
        let pivot = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, pivot);
        let inv = m[col][col].recip();
        if !inv.is_one() {
            for x in m[col].iter_mut().skip(col) {
                *x *= &inv;
            }
        }
        let pivot_row = m[col].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r == col || row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row).skip(col) {
                if !p.is_zero() {
                    *x -= &factor * p;
                }
            }
        }
    }
    Some(())
}

/// Solves `A x = b` in floating point with partial pivoting. `None` if a pivot
/// falls below `1e-14`.
pub fn solve_f64(a: &[Vec<f64>], b: &[f64]) -> Option<Vec<f64>> {
    let n = a.len();
    let mut m: Vec<Vec<f64>> = a
        .iter()
        .zip(b)
        .map(|(row, &rhs)| {
            let mut r = row.clone();
            r.push(rhs);
            r
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).max_by(|&x, &y| m[x][col].abs().total_cmp(&m[y][col].abs()))?;
        if m[pivot][col].abs() < 1e-14 {
            return None;
        }
        m.swap(col, pivot);
        for r in col + 1..n {
            let factor = m[r][col] / m[col][col];
            if factor != 0.0 {
                for c in col..=n {
                    m[r][c] -= factor * m[col][c];
                }
            }
        }
    }
    let mut x = vec![0.0; n];
    for r in (0..n).rev() {
        let s: f64 = (r + 1..n).map(|c| m[r][c] * x[c]).sum();
        x[r] = (m[r][n] - s) / m[r][r];
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn q(p: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(p), BigInt::from(d))
    }

    fn mat(rows: &[&[i64]]) -> Matrix {
        rows.iter().map(|r| r.iter().map(|&x| q(x, 1)).collect()).collect()
    }

    #[test]
    fn solves_small_system() {
        let a = mat(&[&[2, 1], &[1, 3]]);
        let x = solve_exact(&a, &[q(3, 1), q(5, 1)]).unwrap();
        assert_eq!(x, vec![q(4, 5), q(7, 5)]);
    }

    #[test]
    fn needs_row_swap() {
        let a = mat(&[&[0, 1], &[1, 0]]);
        assert_eq!(solve_exact(&a, &[q(2, 1), q(3, 1)]).unwrap(), vec![q(3, 1), q(2, 1)]);
    }

    #[test]
    fn singular() {
        let a = mat(&[&[1, 2], &[2, 4]]);
        assert!(solve_exact(&a, &[q(1, 1), q(1, 1)]).is_none());
        assert!(invert_exact(&a).is_none());
        assert!(solve_f64(&[vec![1.0, 2.0], vec![2.0, 4.0]], &[1.0, 1.0]).is_none());
    }

    #[test]
    fn inverse_times_matrix_is_identity() {
        let a = mat(&[&[2, -1, 0], &[-1, 2, -1], &[0, -1, 2]]);
        let inv = invert_exact(&a).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                let s: BigRational = (0..3).map(|k| &a[i][k] * &inv[k][j]).sum();
                assert_eq!(s, if i == j { q(1, 1) } else { q(0, 1) });
            }
        }
        assert_eq!(inv[0][0], q(3, 4));
    }

    #[test]
    fn float_solve_matches_exact() {
        let x = solve_f64(&[vec![2.0, 1.0], vec![1.0, 3.0]], &[3.0, 5.0]).unwrap();
        assert!((x[0] - 0.8).abs() < 1e-12 && (x[1] - 1.4).abs() < 1e-12);
    }
}
