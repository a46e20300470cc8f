use num_complex::Complex;

use crate::error::{domain, numeric, Result};
use crate::rmt::matrix::HermitianMatrix;
use crate::scalar::Real;

const MAX_QL_SWEEPS: usize = 60;

/// Ascending eigenvalues of a self-adjoint matrix.
///
/// Householder reflections reduce the matrix to Hermitian tridiagonal form;
/// the off-diagonal phases are dropped (a diagonal unitary similarity) and the
/// resulting real symmetric tridiagonal is diagonalized by implicit QL with
/// Wilkinson-type shifts.
pub fn eigenvalues_hermitian<T: Real>(matrix: &HermitianMatrix<T>) -> Result<Vec<T>> {
    let n = matrix.dim();
    if n == 0 {
        return Ok(Vec::new());
    }
    let scale = matrix.max_abs_entry();
    if !scale.is_finite() {
        return Err(domain("matrix has non-finite entries"));
    }
    let tol = T::lit(1e-10).max(T::lit(16.0) * T::epsilon()) * scale.max(T::min_positive_value());
    let defect = matrix.self_adjoint_defect();
    if defect > tol {
        return Err(domain(format!("matrix is not self-adjoint (defect {defect})")));
    }
    let (diag, offdiag) = tridiagonalize(matrix);
    let mut eigenvalues = tridiagonal_ql(diag, offdiag)?;
    eigenvalues.sort_by(|a, b| a.partial_cmp(b).expect("finite eigenvalues"));
    Ok(eigenvalues)
}

/// Returns the real diagonal and the moduli of the subdiagonal
/// (`offdiag[i]` couples `i` and `i + 1`; the last slot is zero).
fn tridiagonalize<T: Real>(matrix: &HermitianMatrix<T>) -> (Vec<T>, Vec<T>) {
    let n = matrix.dim();
    let zero = Complex::new(T::zero(), T::zero());
    let mut a: Vec<Complex<T>> = matrix.entries().to_vec();
    let mut offdiag = vec![T::zero(); n];
    let mut v = vec![zero; n];
    let mut w = vec![zero; n];

    for k in 0..n.saturating_sub(2) {
        let lo = k + 1;
        let norm = (lo..n).map(|i| a[i * n + k].norm_sqr()).sum::<T>().sqrt();
        if norm == T::zero() {
            continue;
        }
        let x0 = a[lo * n + k];
        let x0_abs = x0.norm();
        let phase = if x0_abs > T::zero() {
            x0 / x0_abs
        } else {
            Complex::new(T::one(), T::zero())
        };
        // v = x − alpha e1 with alpha = −phase·‖x‖, so v0 = phase (|x0| + ‖x‖)
        for i in lo..n {
            v[i] = a[i * n + k];
        }
        v[lo] = phase * (x0_abs + norm);
        let tau = (norm * (norm + x0_abs)).recip();

        // w = tau A v on the trailing block
        for i in lo..n {
            let row = &a[i * n + lo..i * n + n];
            let mut acc = zero;
            for (aij, vj) in row.iter().zip(&v[lo..n]) {
                acc = acc + aij * vj;
            }
            w[i] = acc * tau;
        }
        let vw: Complex<T> = (lo..n).map(|i| v[i].conj() * w[i]).fold(zero, |s, z| s + z);
        let half_k = T::lit(0.5) * tau * vw.re;
        for i in lo..n {
            w[i] = w[i] - v[i] * half_k;
        }
        // A ← A − v w† − w v†
        for i in lo..n {
            let (vi, wi) = (v[i], w[i]);
            for j in lo..n {
                let idx = i * n + j;
                a[idx] = a[idx] - vi * w[j].conj() - wi * v[j].conj();
            }
        }
        offdiag[k] = norm;
    }
    if n >= 2 {
        offdiag[n - 2] = a[(n - 1) * n + (n - 2)].norm();
    }
    let diag = (0..n).map(|i| a[i * n + i].re).collect();
    (diag, offdiag)
}

fn tridiagonal_ql<T: Real>(mut d: Vec<T>, mut e: Vec<T>) -> Result<Vec<T>> {
    let n = d.len();
    let two = T::lit(2.0);
    for l in 0..n {
        let mut sweeps = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= T::epsilon() * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            sweeps += 1;
            if sweeps > MAX_QL_SWEEPS {
                return Err(numeric("implicit QL iteration did not converge"));
            }
            let mut g = (d[l + 1] - d[l]) / (two * e[l]);
            let mut r = g.hypot(T::one());
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (T::one(), T::one(), T::zero());
            let mut underflow = false;
            for i in (l..m).rev() {
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == T::zero() {
                    d[i + 1] = d[i + 1] - p;
                    e[m] = T::zero();
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + two * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
            }
            if underflow {
                continue;
            }
            d[l] = d[l] - p;
            e[l] = g;
            e[m] = T::zero();
        }
    }
    if d.iter().any(|x| !x.is_finite()) {
        return Err(numeric("eigenvalue iteration produced non-finite values"));
    }
    Ok(d)
}
