//! Small shared numerics: a dense linear solve and a golden-section search.

use crate::scalar::Real;

/// Solves `a * x = b` by Gaussian elimination with partial pivoting.
///
/// `a` is row-major, `n x n` with `n = b.len()`. Returns `None` when the
/// system is singular to working precision. The systems here are tiny
/// (normal equations of a <=9-term basis, 4x4 Newton steps), so no fancier
/// factorization is warranted.
pub(crate) fn solve_linear<R: Real>(mut a: Vec<Vec<R>>, mut b: Vec<R>) -> Option<Vec<R>> {
    let n = b.len();
    debug_assert!(a.len() == n && a.iter().all(|row| row.len() == n));

    for col in 0..n {
        let pivot_row =
            (col..n).max_by(|&i, &j| a[i][col].abs().partial_cmp(&a[j][col].abs()).unwrap())?;
        if a[pivot_row][col].abs() <= R::epsilon() * R::of(16.0) {
            return None;
        }
        a.swap(col, pivot_row);
        b.swap(col, pivot_row);

        let (pivot_rows, rest) = a.split_at_mut(col + 1);
        let pivot = &pivot_rows[col];
        for (offset, row) in rest.iter_mut().enumerate() {
            let factor = row[col] / pivot[col];
            for (rk, pk) in row[col..].iter_mut().zip(&pivot[col..]) {
                *rk = *rk - factor * *pk;
            }
            b[col + 1 + offset] = b[col + 1 + offset] - factor * b[col];
        }
    }

    let mut x = vec![R::zero(); n];
    for row in (0..n).rev() {
        let mut sum = b[row];
        for col in (row + 1)..n {
            sum = sum - a[row][col] * x[col];
        }
        x[row] = sum / a[row][row];
    }
    Some(x)
}

/// Minimizes a unimodal function on `[lo, hi]` by golden-section search,
/// shrinking the bracket to width `tol`. Returns the bracket midpoint and
/// the function value there.
pub(crate) fn golden_section_min<R: Real>(
    mut f: impl FnMut(R) -> R,
    lo: R,
    hi: R,
    tol: R,
) -> (R, R) {
    let ratio = R::of((5.0_f64.sqrt() - 1.0) / 2.0);
    let mut a = lo;
    let mut b = hi;
    let mut c = b - ratio * (b - a);
    let mut d = a + ratio * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);

    while b - a > tol {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - ratio * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + ratio * (b - a);
            fd = f(d);
        }
    }

    let mid = (a + b) / R::of(2.0);
    let fmid = f(mid);
    (mid, fmid)
}
