//! Complex tridiagonal solve by Gaussian elimination with partial pivoting.
//!
//! Row swaps fill in a second super-diagonal, as in LAPACK's `gtsv`. The
//! scattering systems here are not diagonally dominant, so the pivot-free
//! Thomas recursion is not safe.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Solve `A x = rhs` where `A` has sub-diagonal `lower` (length n−1),
/// diagonal `diag` (n) and super-diagonal `upper` (n−1). The inputs are
/// consumed as scratch space; the solution is returned.
pub fn solve(
    mut lower: Vec<Complex64>,
    mut diag: Vec<Complex64>,
    mut upper: Vec<Complex64>,
    mut rhs: Vec<Complex64>,
) -> Result<Vec<Complex64>> {
    let n = diag.len();
    assert!(n >= 1 && lower.len() + 1 == n && upper.len() + 1 == n && rhs.len() == n);
    let zero = Complex64::new(0.0, 0.0);
    // second super-diagonal created by pivoting
    let mut upper2 = vec![zero; n.saturating_sub(2)];

    let scale = diag
        .iter()
        .chain(&lower)
        .chain(&upper)
        .map(|v| v.norm())
        .fold(0.0, f64::max)
        .max(f64::MIN_POSITIVE);
    let tiny = scale * f64::EPSILON * 1e-3;

    for i in 0..n.saturating_sub(1) {
        if lower[i].norm() > diag[i].norm() {
            // swap rows i and i+1
            std::mem::swap(&mut diag[i], &mut lower[i]);
            let d_next = diag[i + 1];
            let u_i = upper[i];
            upper[i] = d_next;
            diag[i + 1] = u_i;
            if i + 2 < n {
                upper2[i] = upper[i + 1];
                upper[i + 1] = zero;
            }
            rhs.swap(i, i + 1);
            // row i now reads: diag[i], upper[i], upper2[i]
            // row i+1 reads: lower[i] (to eliminate), diag[i+1], upper[i+1]
        }
        if diag[i].norm() <= tiny {
            return Err(Error::Singular {
                row: i,
                pivot: diag[i].norm(),
            });
        }
        let m = lower[i] / diag[i];
        diag[i + 1] -= m * upper[i];
        if i + 2 < n {
            upper[i + 1] -= m * upper2[i];
        }
        let r = rhs[i];
        rhs[i + 1] -= m * r;
        lower[i] = zero;
    }
    if diag[n - 1].norm() <= tiny {
        return Err(Error::Singular {
            row: n - 1,
            pivot: diag[n - 1].norm(),
        });
    }

    let mut x = rhs;
    x[n - 1] /= diag[n - 1];
    if n >= 2 {
        let v = x[n - 1];
        x[n - 2] = (x[n - 2] - upper[n - 2] * v) / diag[n - 2];
    }
    for i in (0..n.saturating_sub(2)).rev() {
        let v = x[i] - upper[i] * x[i + 1] - upper2[i] * x[i + 2];
        x[i] = v / diag[i];
    }
    Ok(x)
}
