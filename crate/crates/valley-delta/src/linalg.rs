//! Fraction-free linear solving over q,t-polynomials.
//!
//! Forward elimination is single-step Bareiss: every intermediate entry is
//! a minor of the original matrix and the division by the previous pivot
//! is exact, so nothing turns rational before back-substitution.

use crate::qt::{QtPoly, QtRational};

#[derive(Debug, thiserror::Error)]
#[error("singular linear system")]
pub struct Singular;

/// Solve `A x = b` for each column `b` of `rhs`, exactly over Q(q,t).
/// `matrix` is row-major and square; `rhs` holds one column per solve.
pub fn solve_fraction_free(
    matrix: &[Vec<QtPoly>],
    rhs: &[Vec<QtPoly>],
) -> Result<Vec<Vec<QtRational>>, Singular> {
    let n = matrix.len();
    assert!(matrix.iter().all(|row| row.len() == n));
    assert!(rhs.iter().all(|col| col.len() == n));
    let m = rhs.len();

    // Augmented working copy: n rows of n + m entries.
    let mut a: Vec<Vec<QtPoly>> = (0..n)
        .map(|i| {
            let mut row = matrix[i].clone();
            row.extend(rhs.iter().map(|col| col[i].clone()));
            row
        })
        .collect();

    let mut prev_pivot = QtPoly::one();
    for k in 0..n {
        let pivot_row = (k..n).find(|&r| !a[r][k].is_zero()).ok_or(Singular)?;
        a.swap(k, pivot_row);
        let pivot = a[k][k].clone();
        for i in k + 1..n {
            for j in k + 1..n + m {
                let num = &(&pivot * &a[i][j]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = num
                    .div_exact(&prev_pivot)
                    .expect("Bareiss division is exact");
            }
            a[i][k] = QtPoly::zero();
        }
        prev_pivot = pivot;
    }

    // Back-substitution over the fraction field.
    let mut out = vec![vec![QtRational::zero(); n]; m];
    for (c, col) in out.iter_mut().enumerate() {
        for i in (0..n).rev() {
            let mut acc: QtRational = a[i][n + c].clone().into();
            for j in i + 1..n {
                acc = &acc - &(&QtRational::from(a[i][j].clone()) * &col[j]);
            }
            col[i] = acc
                .checked_div(&a[i][i].clone().into())
                .expect("pivot is nonzero");
        }
    }
    Ok(out)
}
