use crate::error::{domain, numeric, Result};
use crate::scalar::Real;

/// Least-squares solution of `A c ≈ y` by Householder QR.
///
/// `columns` holds the design matrix column by column, each of length
/// `y.len()`.
pub(crate) fn least_squares<T: Real>(mut columns: Vec<Vec<T>>, mut y: Vec<T>) -> Result<Vec<T>> {
    let rows = y.len();
    let p = columns.len();
    if p == 0 || rows < p || columns.iter().any(|c| c.len() != rows) {
        return Err(domain(format!(
            "least squares needs rows >= columns ({rows} < {p})"
        )));
    }
    let col_scale = columns
        .iter()
        .map(|c| c.iter().fold(T::zero(), |m, x| m.max(x.abs())))
        .fold(T::zero(), |m, x| m.max(x));

    for j in 0..p {
        let norm = columns[j][j..].iter().map(|x| *x * *x).sum::<T>().sqrt();
        if norm <= T::epsilon() * col_scale * T::from_usize_lossy(rows) {
            return Err(numeric(format!("design matrix is rank deficient at column {j}")));
        }
        let alpha = if columns[j][j] > T::zero() { -norm } else { norm };
        let mut v: Vec<T> = columns[j][j..].to_vec();
        v[0] = v[0] - alpha;
        let vnorm2: T = v.iter().map(|x| *x * *x).sum();
        let reflect = |target: &mut [T]| {
            let dot: T = v.iter().zip(target.iter()).map(|(a, b)| *a * *b).sum();
            let s = T::lit(2.0) * dot / vnorm2;
            for (t, vi) in target.iter_mut().zip(&v) {
                *t = *t - s * *vi;
            }
        };
        for col in columns.iter_mut().skip(j) {
            reflect(&mut col[j..]);
        }
        reflect(&mut y[j..]);
    }

    let mut coeffs = vec![T::zero(); p];
    for i in (0..p).rev() {
        let mut acc = y[i];
        for (k, c) in coeffs.iter().enumerate().skip(i + 1) {
            acc = acc - columns[k][i] * *c;
        }
        coeffs[i] = acc / columns[i][i];
    }
    Ok(coeffs)
}
