use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};

/// Flips `v` so that its first entry of largest magnitude is positive.
/// Returns whether the vector was negated.
pub fn canonicalize_sign(v: &mut [f64]) -> bool {
    let mut pivot = 0;
    for (i, x) in v.iter().enumerate() {
        if x.abs() > v[pivot].abs() {
            pivot = i;
        }
    }
    if v.get(pivot).is_some_and(|&x| x < 0.0) {
        v.iter_mut().for_each(|x| *x = -*x);
        true
    } else {
        false
    }
}

/// SVD `m = U S Vᵀ`, returning `U` and the singular values in decreasing
/// order. `U` is square when `full` is set, `rows × min(rows, cols)` otherwise.
pub(crate) fn left_singular(m: &DMatrix<f64>, full: bool) -> Result<(DMatrix<f64>, Vec<f64>)> {
    let (rows, cols) = m.shape();
    let a = faer::Mat::<f64>::from_fn(rows, cols, |i, j| m[(i, j)]);
    let svd = if full { a.svd() } else { a.thin_svd() }
        .map_err(|e| Error::degenerate(format!("singular value decomposition failed: {e:?}")))?;
    let u = svd.U();
    let s = svd.S();
    Ok((
        DMatrix::from_fn(rows, u.ncols(), |i, j| u[(i, j)]),
        (0..s.dim()).map(|i| s[i]).collect(),
    ))
}

/// Indices of `values` sorted in decreasing order; ties keep index order.
pub(crate) fn descending_order(values: &DVector<f64>) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..values.len()).collect();
    idx.sort_by(|&a, &b| values[b].total_cmp(&values[a]));
    idx
}
